// kqi: citation-network analytics CLI.
// Thin front end over the libkqi C API; all numerics live in the library.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kqi.h"

namespace {

struct ApiError {
  kqi_status status;
  std::string message;
};

void check(kqi_status s) {
  if (s != KQI_OK) throw ApiError{s, kqi_last_error()};
}

struct GraphDel {
  void operator()(kqi_graph* g) const { kqi_graph_free(g); }
};
struct ResultDel {
  void operator()(kqi_result* r) const { kqi_result_free(r); }
};
struct AggDel {
  void operator()(kqi_agg* a) const { kqi_agg_free(a); }
};
struct VeinDel {
  void operator()(kqi_vein* v) const { kqi_vein_free(v); }
};
struct SeriesDel {
  void operator()(kqi_series* s) const { kqi_series_free(s); }
};

using GraphPtr = std::unique_ptr<kqi_graph, GraphDel>;
using ResultPtr = std::unique_ptr<kqi_result, ResultDel>;
using AggPtr = std::unique_ptr<kqi_agg, AggDel>;
using VeinPtr = std::unique_ptr<kqi_vein, VeinDel>;
using SeriesPtr = std::unique_ptr<kqi_series, SeriesDel>;

const char* out_path(const std::string& p) {
  return (p.empty() || p == "-") ? "-" : p.c_str();
}

// Shared per-command state filled by CLI11.
struct Options {
  std::string edges, nodes;
  std::string out = "-";
  std::string format = "csv";
  double decay = -1.0;  // < 0 means "no decay requested"
  long long ref_year = 0;
  bool has_ref_year = false;
  long long year = 0;
  bool has_year = false;
  int threads = 1;

  std::string by;
  bool first_author = false;
  long long top = 0;

  double select_top = 0.0;
  std::string select_file;
  int max_depth = 10;
  bool complete_level = false;
  std::string dot_out, csv_out;

  long long from_year = 0, to_year = 0;
  bool boom = false;
  std::string scale = "minmax100";
  bool increments = false;
  double rss_critical = 9.0;
  std::string boom_out = "-";

  int m = 3;
  std::string schedule = "standard";
  long long target_nodes = 1000;
  int steps = 10;
  std::string arrivals_file;
  std::uint64_t seed = 42;
  std::string out_edges, out_nodes, series_out;

  int a = 1;
  double seed_fraction = 0.01;

  std::string direction = "citing-to-cited";
  double damping = 0.85;
  double tol = 1e-10;
  int max_iter = 10000;
};

GraphPtr load_graph(const Options& o, bool augment) {
  kqi_graph* raw = nullptr;
  check(kqi_graph_load(o.edges.c_str(), o.nodes.empty() ? nullptr : o.nodes.c_str(), &raw));
  GraphPtr g(raw);
  if (o.has_year) {
    kqi_graph* snap = nullptr;
    check(kqi_graph_snapshot(g.get(), o.year, &snap));
    g.reset(snap);
  }
  if (augment) {
    kqi_graph* aug = nullptr;
    check(kqi_graph_augment(g.get(), &aug));
    g.reset(aug);
  }
  if (o.decay >= 0.0) {
    kqi_graph* dec = nullptr;
    const long long* ref = o.has_ref_year ? &o.ref_year : nullptr;
    check(kqi_graph_decay(g.get(), o.decay, ref, &dec));
    g.reset(dec);
  }
  return g;
}

ResultPtr compute(const kqi_graph* g, int threads) {
  kqi_result* raw = nullptr;
  check(kqi_compute(g, threads, &raw));
  return ResultPtr(raw);
}

std::vector<std::string> read_id_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ApiError{KQI_E_IO, "cannot read selection file: " + path};
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    ids.push_back(line);
  }
  return ids;
}

std::vector<long long> read_arrivals(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ApiError{KQI_E_IO, "cannot read arrivals file: " + path};
  std::vector<long long> counts;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    try {
      counts.push_back(std::stoll(line));
    } catch (const std::exception&) {
      throw ApiError{KQI_E_MALFORMED_LINE, "arrivals file: not an integer: " + line};
    }
  }
  return counts;
}

void write_text(const std::string& path, const std::string& text) {
  std::string p = out_path(path);
  if (p == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(p);
  if (!out) throw ApiError{KQI_E_IO, "cannot write: " + path};
  out << text;
}

int run_kqi(const Options& o) {
  auto g = load_graph(o, true);
  auto r = compute(g.get(), o.threads);
  check(kqi_result_export(r.get(), out_path(o.out), o.format.c_str()));
  return 0;
}

int run_rank(const Options& o) {
  auto g = load_graph(o, true);
  auto r = compute(g.get(), o.threads);
  kqi_agg* raw = nullptr;
  check(kqi_aggregate(r.get(), o.by.c_str(), o.first_author ? 1 : 0, &raw));
  AggPtr agg(raw);
  if (kqi_agg_size(agg.get()) == 0)
    throw ApiError{KQI_E_UNKNOWN_GROUP_KIND,
                   "no " + o.by + " metadata present; provide a node file with " + o.by + "= keys"};
  check(kqi_agg_export_csv(agg.get(), out_path(o.out), o.top < 0 ? 0 : (size_t)o.top));
  return 0;
}

int run_vein(const Options& o, bool used_top, bool used_file) {
  auto g = load_graph(o, true);
  auto r = compute(g.get(), o.threads);
  kqi_vein* raw = nullptr;
  if (used_file) {
    auto ids = read_id_list(o.select_file);
    std::vector<const char*> ptrs;
    ptrs.reserve(ids.size() + 1);
    for (const auto& id : ids) ptrs.push_back(id.c_str());
    static const char* none = "";
    const char* const* list = ptrs.empty() ? &none : ptrs.data();
    check(kqi_vein_extract(r.get(), -1.0, list, ids.size(), o.max_depth,
                           o.complete_level ? 1 : 0, &raw));
  } else {
    (void)used_top;
    check(kqi_vein_extract(r.get(), o.select_top, nullptr, 0, o.max_depth,
                           o.complete_level ? 1 : 0, &raw));
  }
  VeinPtr vein(raw);
  if (!o.csv_out.empty()) check(kqi_vein_export(vein.get(), out_path(o.csv_out), "csv"));
  check(kqi_vein_export(vein.get(), out_path(o.dot_out), "dot"));
  return 0;
}

int run_growth(const Options& o) {
  auto g = load_graph(o, false);
  kqi_series* raw = nullptr;
  const double* lambda = o.decay >= 0.0 ? &o.decay : nullptr;
  check(kqi_growth_series(g.get(), o.from_year, o.to_year, lambda, o.threads, &raw));
  SeriesPtr series(raw);
  check(kqi_series_export_csv(series.get(), out_path(o.out)));
  if (o.boom) {
    kqi_boom b{};
    check(kqi_detect_boom(series.get(), o.rss_critical, o.scale.c_str(), o.increments ? 1 : 0,
                          &b));
    nlohmann::json j{{"slope", b.slope},
                     {"intercept", b.intercept},
                     {"rss", b.rss},
                     {"r2", b.r2},
                     {"boomed", b.boomed != 0},
                     {"rss_critical", b.rss_critical},
                     {"scale", o.scale},
                     {"increments", o.increments}};
    if (std::isfinite(b.a)) j["a"] = b.a;
    if (b.has_threshold_year) j["threshold_year"] = b.threshold_year;
    write_text(o.boom_out, j.dump(2) + "\n");
  }
  return 0;
}

int run_simulate(const Options& o) {
  std::vector<long long> arrivals;
  int steps = o.steps;
  const long long* arr = nullptr;
  std::string schedule = o.schedule;
  if (!o.arrivals_file.empty()) {
    arrivals = read_arrivals(o.arrivals_file);
    steps = (int)arrivals.size();
    arr = arrivals.data();
    schedule = "custom";
  }
  kqi_graph* raw = nullptr;
  check(kqi_ba_generate(o.m, schedule.c_str(), o.target_nodes, steps, arr, o.seed, &raw));
  GraphPtr g(raw);
  check(kqi_graph_save(g.get(), out_path(o.out_edges),
                       o.out_nodes.empty() ? nullptr : o.out_nodes.c_str()));
  if (!o.series_out.empty()) {
    kqi_series* sraw = nullptr;
    check(kqi_ba_series(o.m, schedule.c_str(), o.target_nodes, steps, arr, o.seed, &sraw));
    SeriesPtr series(sraw);
    check(kqi_series_export_csv(series.get(), out_path(o.series_out)));
  }
  return 0;
}

int run_percolate(const Options& o) {
  auto g = load_graph(o, false);
  double active = 0.0;
  int rounds = 0;
  check(kqi_percolate(g.get(), o.a, o.seed_fraction, o.seed, &active, &rounds));
  nlohmann::json j{{"a", o.a},
                   {"seed_fraction", o.seed_fraction},
                   {"seed", o.seed},
                   {"nodes", kqi_graph_node_count(g.get())},
                   {"active_fraction", active},
                   {"rounds", rounds}};
  write_text(o.out, j.dump(2) + "\n");
  return 0;
}

int run_compare(const Options& o) {
  auto g = load_graph(o, false);
  size_t n = kqi_graph_node_count(g.get());
  std::vector<double> pr(n);
  check(kqi_pagerank(g.get(), o.damping, o.tol, o.max_iter, o.direction.c_str(), pr.data(),
                     pr.size()));
  kqi_graph* araw = nullptr;
  check(kqi_graph_augment(g.get(), &araw));
  GraphPtr aug(araw);
  auto r = compute(aug.get(), o.threads);
  std::vector<double> kq(n);
  for (size_t i = 0; i < n; ++i)
    check(kqi_result_row(r.get(), i, nullptr, &kq[i], nullptr, nullptr, nullptr));
  double rho = 0.0;
  check(kqi_spearman(kq.data(), pr.data(), n, &rho));
  nlohmann::json j{{"nodes", n},
                   {"direction", o.direction},
                   {"damping", o.damping},
                   {"spearman", rho},
                   {"total_kqi", kqi_result_total(r.get())}};
  write_text(o.out, j.dump(2) + "\n");
  return 0;
}

void add_decay_opts(CLI::App* cmd, Options& o) {
  cmd->add_option("--decay", o.decay, "Exponential age-decay rate lambda (requires node years)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--ref-year", o.ref_year,
                  "Reference year for decay (default: newest node year)");
  cmd->add_option("--year", o.year, "Restrict to nodes published in or before YEAR");
}

void add_threads_opt(CLI::App* cmd, Options& o) {
  cmd->add_option("--threads", o.threads, "Worker threads (results are thread-count independent)")
      ->envname("KQI_THREADS")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"kqi: knowledge-quantification toolkit for citation networks"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read defaults from a TOML-style config file");
  app.allow_config_extras(false);
  app.set_version_flag("--version", []() { return std::string(kqi_version()); });

  auto* c_kqi = app.add_subcommand("kqi", "Compute per-node KQI scores");
  c_kqi->add_option("edges", o.edges, "Edge file (citing<TAB>cited per line)")
      ->required()
      ->check(CLI::ExistingFile);
  c_kqi->add_option("nodes", o.nodes, "Node metadata file (id<TAB>year<TAB>kind=keys)")
      ->check(CLI::ExistingFile);
  add_decay_opts(c_kqi, o);
  c_kqi->add_option("--out", o.out, "Output path ('-' = stdout)");
  c_kqi->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  add_threads_opt(c_kqi, o);

  auto* c_rank = app.add_subcommand("rank", "Aggregate KQI by group (author, country, ...)");
  c_rank->add_option("edges", o.edges, "Edge file")->required()->check(CLI::ExistingFile);
  c_rank->add_option("nodes", o.nodes, "Node metadata file")
      ->required()
      ->check(CLI::ExistingFile);
  c_rank->add_option("--by", o.by, "Group kind to rank")
      ->required()
      ->check(CLI::IsMember({"author", "affiliation", "country", "discipline"}));
  c_rank->add_flag("--first-author", o.first_author, "Credit only the first listed key");
  c_rank->add_option("--top", o.top, "Emit at most N rows (0 = all)")
      ->check(CLI::NonNegativeNumber);
  add_decay_opts(c_rank, o);
  c_rank->add_option("--out", o.out, "Output path ('-' = stdout)");
  add_threads_opt(c_rank, o);

  auto* c_vein = app.add_subcommand("vein", "Extract the knowledge vein of selected nodes");
  c_vein->add_option("edges", o.edges, "Edge file")->required()->check(CLI::ExistingFile);
  c_vein->add_option("nodes", o.nodes, "Node metadata file")->check(CLI::ExistingFile);
  auto* sel_top = c_vein->add_option("--select-top", o.select_top,
                                     "Select the top fraction of nodes by KQI, in (0,1]");
  auto* sel_file =
      c_vein->add_option("--select-file", o.select_file, "File listing node ids to select")
          ->check(CLI::ExistingFile);
  sel_top->excludes(sel_file);
  c_vein->add_option("--max-depth", o.max_depth, "Ancestor search depth cap")
      ->check(CLI::PositiveNumber);
  c_vein->add_flag("--complete-level", o.complete_level,
                   "Keep deepening past the first productive level");
  c_vein->add_option("--dot", o.dot_out, "Write DOT here ('-' = stdout; default stdout)");
  c_vein->add_option("--csv", o.csv_out, "Also write the edge list as CSV here");
  add_threads_opt(c_vein, o);

  auto* c_growth = app.add_subcommand("growth", "Year-by-year total-KQI series and boom test");
  c_growth->add_option("edges", o.edges, "Edge file")->required()->check(CLI::ExistingFile);
  c_growth->add_option("nodes", o.nodes, "Node metadata file (years required)")
      ->required()
      ->check(CLI::ExistingFile);
  c_growth->add_option("--from", o.from_year, "First year of the series")->required();
  c_growth->add_option("--to", o.to_year, "Last year of the series")->required();
  c_growth->add_option("--decay", o.decay, "Per-snapshot decay rate lambda")
      ->check(CLI::NonNegativeNumber);
  c_growth->add_option("--out", o.out, "Series CSV path ('-' = stdout)");
  c_growth->add_flag("--boom", o.boom, "Append a linearity/boom report");
  c_growth->add_option("--scale", o.scale, "Scaling before the linear fit")
      ->check(CLI::IsMember({"minmax100", "none"}));
  c_growth->add_flag("--increments", o.increments, "Fit year-over-year increments instead");
  c_growth->add_option("--rss-critical", o.rss_critical, "RSS threshold for declaring a boom");
  c_growth->add_option("--boom-out", o.boom_out, "Boom report JSON path ('-' = stdout)");
  add_threads_opt(c_growth, o);

  auto* c_sim = app.add_subcommand("simulate", "Generate a preferential-attachment network");
  c_sim->add_option("--m", o.m, "Edges per arriving node")->check(CLI::PositiveNumber);
  c_sim->add_option("--schedule", o.schedule, "Arrival schedule")
      ->check(CLI::IsMember({"standard", "accelerated", "decelerated", "constant", "custom"}));
  c_sim->add_option("--nodes", o.target_nodes, "Target node count")->check(CLI::PositiveNumber);
  c_sim->add_option("--steps", o.steps, "Number of time steps")->check(CLI::PositiveNumber);
  c_sim->add_option("--arrivals", o.arrivals_file,
                    "File of per-step arrival counts (implies --schedule custom)")
      ->check(CLI::ExistingFile);
  c_sim->add_option("--seed", o.seed, "RNG seed (default 42; fixed for reproducibility)");
  c_sim->add_option("--out-edges", o.out_edges, "Edge file to write")->required();
  c_sim->add_option("--out-nodes", o.out_nodes, "Node file to write (years = arrival step)");
  c_sim->add_option("--series", o.series_out,
                    "Per-step series CSV (exact and continuum KQI totals)");

  auto* c_perc = app.add_subcommand("percolate", "Bootstrap percolation on the undirected graph");
  c_perc->add_option("edges", o.edges, "Edge file")->required()->check(CLI::ExistingFile);
  c_perc->add_option("nodes", o.nodes, "Node metadata file")->check(CLI::ExistingFile);
  c_perc->add_option("--a", o.a, "Activation threshold: activate on at least a active neighbors")
      ->check(CLI::PositiveNumber);
  c_perc->add_option("--seed-fraction", o.seed_fraction, "Fraction of nodes initially active")
      ->check(CLI::Range(0.0, 1.0));
  c_perc->add_option("--seed", o.seed, "RNG seed (default 42; fixed for reproducibility)");
  c_perc->add_option("--out", o.out, "Report JSON path ('-' = stdout)");

  auto* c_cmp = app.add_subcommand("compare", "Correlate KQI with PageRank");
  c_cmp->add_option("edges", o.edges, "Edge file")->required()->check(CLI::ExistingFile);
  c_cmp->add_option("nodes", o.nodes, "Node metadata file")->check(CLI::ExistingFile);
  c_cmp->add_option("--direction", o.direction, "PageRank walk direction")
      ->check(CLI::IsMember({"citing-to-cited", "cited-to-citing"}));
  c_cmp->add_option("--damping", o.damping, "PageRank damping factor")
      ->check(CLI::Range(0.0, 1.0));
  c_cmp->add_option("--tol", o.tol, "PageRank convergence tolerance");
  c_cmp->add_option("--max-iter", o.max_iter, "PageRank iteration cap")
      ->check(CLI::PositiveNumber);
  c_cmp->add_option("--out", o.out, "Report JSON path ('-' = stdout)");
  add_threads_opt(c_cmp, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* active = c_kqi->parsed() ? (CLI::App*)c_kqi : c_rank->parsed() ? (CLI::App*)c_rank : nullptr;
    if (active) {
      o.has_ref_year = active->count("--ref-year") > 0;
      o.has_year = active->count("--year") > 0;
    }
    if (c_kqi->parsed()) return run_kqi(o);
    if (c_rank->parsed()) return run_rank(o);
    if (c_vein->parsed()) {
      if (sel_top->count() == 0 && sel_file->count() == 0) {
        std::cerr << "error: vein requires --select-top or --select-file\n";
        return 2;
      }
      return run_vein(o, sel_top->count() > 0, sel_file->count() > 0);
    }
    if (c_growth->parsed()) return run_growth(o);
    if (c_sim->parsed()) return run_simulate(o);
    if (c_perc->parsed()) return run_percolate(o);
    if (c_cmp->parsed()) return run_compare(o);
  } catch (const ApiError& e) {
    std::cerr << "error: " << kqi_status_name(e.status) << ": " << e.message << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
