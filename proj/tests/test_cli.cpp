// End-to-end checks for the kqi command-line tool.  argv[1] names the binary;
// every case shells out and inspects exit status, stdout, and stderr.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

int g_failures = 0;

#define EXPECT(cond)                                                       \
  do {                                                                     \
    if (!(cond)) {                                                         \
      std::fprintf(stderr, "[FAIL] %s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++g_failures;                                                        \
    }                                                                      \
  } while (0)

std::string g_bin;
std::filesystem::path g_dir;

std::string path(const std::string& name) { return (g_dir / name).string(); }

void write(const std::string& name, const std::string& content) {
  std::ofstream out(path(name));
  out << content;
}

std::string slurp(const std::string& full_path) {
  std::ifstream in(full_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

// Runs "<binary> <args>" through the shell, capturing both streams.
RunResult run(const std::string& args, const std::string& env = "") {
  std::string out_file = path("stdout.txt");
  std::string err_file = path("stderr.txt");
  std::string cmd = env + (env.empty() ? "" : " ") + g_bin + " " + args + " > " + out_file +
                    " 2> " + err_file;
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.status = (rc == -1) ? -1 : WEXITSTATUS(rc);
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

double json_number(const std::string& text, const std::string& key) {
  auto pos = text.find("\"" + key + "\":");
  if (pos == std::string::npos) return -1e300;
  return std::strtod(text.c_str() + pos + key.size() + 3, nullptr);
}

void test_help_and_usage() {
  EXPECT(run("--help").status == 0);
  EXPECT(contains(run("--help").out, "Usage"));
  EXPECT(run("--version").status == 0);
  EXPECT(run("").status == 2);  // a subcommand is required
  EXPECT(run("kqi --help").status == 0);
}

void test_kqi_golden_chain() {
  auto r = run("kqi " + path("chain.tsv"));
  EXPECT(r.status == 0);
  EXPECT(contains(r.out, "id,kqi,volume,in_strength,out_strength\n"));
  EXPECT(count_lines(r.out) == 4);
  EXPECT(contains(r.out, "A,0.3899750004807708"));
  EXPECT(contains(r.out, "B,0.3333333333333333"));
  EXPECT(contains(r.out, "C,0,"));
  EXPECT(!contains(r.out, "__ROOT__"));

  auto j = run("kqi " + path("chain.tsv") + " --format json");
  EXPECT(j.status == 0);
  EXPECT(contains(j.out, "\"total\""));

  auto f = run("kqi " + path("chain.tsv") + " --out " + path("kqi_out.csv"));
  EXPECT(f.status == 0);
  EXPECT(contains(slurp(path("kqi_out.csv")), "A,0.3899750004807708"));
}

void test_error_exits() {
  auto cyc = run("kqi " + path("cycle.tsv"));
  EXPECT(cyc.status == 1);
  EXPECT(contains(cyc.err, "cycle"));

  EXPECT(run("kqi " + path("missing.tsv")).status == 2);

  auto bad = run("kqi " + path("bad.tsv"));
  EXPECT(bad.status == 1);
  EXPECT(contains(bad.err, "malformed_line"));
  EXPECT(contains(bad.err, ":2:"));
}

void test_rank() {
  auto r = run("rank " + path("chain.tsv") + " " + path("nodes.tsv") + " --by author");
  EXPECT(r.status == 0);
  EXPECT(contains(r.out, "key,kqi_sum,paper_count\n"));
  EXPECT(count_lines(r.out) == 3);
  EXPECT(contains(r.out, "\nY,"));  // Y holds A and B, outranking X

  auto top = run("rank " + path("chain.tsv") + " " + path("nodes.tsv") + " --by author --top 1");
  EXPECT(top.status == 0);
  EXPECT(count_lines(top.out) == 2);

  auto first =
      run("rank " + path("chain.tsv") + " " + path("nodes.tsv") + " --by author --first-author");
  EXPECT(first.status == 0);
  EXPECT(first.out.find("\nX,") < first.out.find("\nY,"));

  auto none = run("rank " + path("chain.tsv") + " " + path("years.tsv") + " --by country");
  EXPECT(none.status == 1);
  EXPECT(contains(none.err, "no country metadata"));
}

void test_vein() {
  auto full = run("vein " + path("chain.tsv") + " --select-top 1.0");
  EXPECT(full.status == 0);
  EXPECT(contains(full.out, "digraph"));
  EXPECT(contains(full.out, "\"A\" -> \"B\""));
  EXPECT(contains(full.out, "\"B\" -> \"C\""));

  write("sel.txt", "A\nC\n");
  auto sel = run("vein " + path("chain.tsv") + " --select-file " + path("sel.txt") + " --csv " +
                 path("vein.csv"));
  EXPECT(sel.status == 0);
  EXPECT(contains(sel.out, "\"A\" -> \"C\""));
  EXPECT(!contains(sel.out, "\"A\" -> \"B\""));
  EXPECT(slurp(path("vein.csv")) == "ancestor,descendant\nA,C\n");

  write("empty_sel.txt", "# nothing selected\n");
  auto empty = run("vein " + path("chain.tsv") + " --select-file " + path("empty_sel.txt"));
  EXPECT(empty.status == 1);
  EXPECT(contains(empty.err, "empty_selection"));

  EXPECT(run("vein " + path("chain.tsv")).status == 2);  // no selector
}

void test_growth_and_boom() {
  auto r = run("growth " + path("chain5.tsv") + " " + path("years5.tsv") +
               " --from 2000 --to 2004");
  EXPECT(r.status == 0);
  EXPECT(contains(r.out, "year,total_kqi,n,m\n"));
  EXPECT(contains(r.out, "2000,0,1,0\n"));
  EXPECT(count_lines(r.out) == 6);

  auto b = run("growth " + path("chain5.tsv") + " " + path("years5.tsv") +
               " --from 2000 --to 2004 --out " + path("series.csv") + " --boom --boom-out " +
               path("boom.json"));
  EXPECT(b.status == 0);
  auto boom = slurp(path("boom.json"));
  EXPECT(contains(boom, "\"boomed\""));
  EXPECT(json_number(boom, "rss_critical") == 9.0);
  EXPECT(contains(boom, "\"slope\""));
  EXPECT(count_lines(slurp(path("series.csv"))) == 6);

  EXPECT(run("growth " + path("chain5.tsv") + " " + path("years5.tsv") +
             " --from 2004 --to 2000")
             .status == 1);
}

void test_simulate() {
  std::string args = "simulate --m 3 --schedule standard --nodes 200 --steps 8 --seed 5";
  EXPECT(run(args + " --out-edges " + path("sim1.tsv") + " --out-nodes " + path("simn1.tsv"))
             .status == 0);
  EXPECT(run(args + " --out-edges " + path("sim2.tsv")).status == 0);
  auto e1 = slurp(path("sim1.tsv"));
  EXPECT(e1 == slurp(path("sim2.tsv")));
  EXPECT(count_lines(e1) > 500);
  EXPECT(contains(slurp(path("simn1.tsv")), "\t8"));  // final-step arrivals

  write("arrivals.txt", "1\n2\n3\n");
  auto custom = run("simulate --m 2 --arrivals " + path("arrivals.txt") + " --out-edges " +
                    path("sim_custom.tsv") + " --series " + path("sim_series.csv"));
  EXPECT(custom.status == 0);
  auto series = slurp(path("sim_series.csv"));
  EXPECT(contains(series, "year,total_kqi,approx_kqi,n,m\n"));
  EXPECT(count_lines(series) == 4);  // header + one row per step
  EXPECT(contains(series, "\n3,"));  // six nodes by the final step
}

void test_percolate() {
  EXPECT(run("simulate --m 50 --schedule constant --nodes 40 --steps 40 --out-edges " +
             path("dense.tsv"))
             .status == 0);
  auto r = run("percolate " + path("dense.tsv") + " --a 1 --seed-fraction 0.05");
  EXPECT(r.status == 0);
  EXPECT(json_number(r.out, "active_fraction") == 1.0);
  EXPECT(json_number(r.out, "rounds") == 1.0);
  EXPECT(json_number(r.out, "nodes") == 40.0);

  EXPECT(run("percolate " + path("dense.tsv") + " --a 0 --seed-fraction 0.05").status == 2);
}

void test_compare() {
  auto r = run("compare " + path("chain.tsv"));
  EXPECT(r.status == 0);
  double rho = json_number(r.out, "spearman");
  EXPECT(rho >= -1.0 && rho <= 1.0);
  EXPECT(json_number(r.out, "nodes") == 3.0);

  EXPECT(run("compare " + path("chain.tsv") + " --direction sideways").status == 2);
}

void test_config_and_env() {
  auto plain = run("kqi " + path("chain.tsv"));

  write("threads.toml", "[kqi]\nthreads=2\n");
  auto cfg = run("--config " + path("threads.toml") + " kqi " + path("chain.tsv"));
  EXPECT(cfg.status == 0);
  EXPECT(cfg.out == plain.out);

  write("bad.toml", "[kqi]\nbanana=1\n");
  EXPECT(run("--config " + path("bad.toml") + " kqi " + path("chain.tsv")).status == 2);

  auto env = run("kqi " + path("chain.tsv"), "KQI_THREADS=3");
  EXPECT(env.status == 0);
  EXPECT(env.out == plain.out);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <path-to-kqi-binary>\n");
    return 2;
  }
  g_bin = argv[1];
  g_dir = std::filesystem::temp_directory_path() / "kqi_cli_tests";
  std::filesystem::remove_all(g_dir);
  std::filesystem::create_directories(g_dir);

  write("chain.tsv", "B\tA\nC\tB\n");
  write("cycle.tsv", "B\tA\nA\tB\n");
  write("bad.tsv", "B\tA\nonly-one-field\n");
  write("nodes.tsv", "A\t2000\tauthor=X;Y\nB\t2001\tauthor=Y\nC\t2002\n");
  write("years.tsv", "A\t2000\nB\t2001\nC\t2002\n");
  write("chain5.tsv", "B\tA\nC\tB\nD\tC\nE\tD\n");
  write("years5.tsv", "A\t2000\nB\t2001\nC\t2002\nD\t2003\nE\t2004\n");

  test_help_and_usage();
  test_kqi_golden_chain();
  test_error_exits();
  test_rank();
  test_vein();
  test_growth_and_boom();
  test_simulate();
  test_percolate();
  test_compare();
  test_config_and_env();

  if (g_failures == 0) {
    std::printf("cli_tests: all checks passed\n");
    return 0;
  }
  std::fprintf(stderr, "cli_tests: %d check(s) failed\n", g_failures);
  return 1;
}
