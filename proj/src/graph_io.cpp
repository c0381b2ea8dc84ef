#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "kqi/format.hpp"
#include "kqi/graph.hpp"

namespace kqi {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = line.find(sep, start);
    if (p == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, p - start));
    start = p + 1;
  }
}

[[noreturn]] void bad_line(const std::string& path, std::size_t lineno, const std::string& what) {
  fail(Errc::malformed_line, path + ":" + std::to_string(lineno) + ": " + what);
}

bool parse_ll(std::string_view s, long long& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

void check_id(const std::string& path, std::size_t lineno, std::string_view id) {
  if (id.empty()) bad_line(path, lineno, "empty node id");
  if (id == super_root_id) bad_line(path, lineno, "id '" + std::string(super_root_id) + "' is reserved");
}

// Strips one trailing carriage return so CRLF dumps load cleanly.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

CitationGraph CitationGraph::load(const std::string& edge_path,
                                  const std::optional<std::string>& node_path) {
  Builder b;
  if (node_path) {
    std::ifstream in(*node_path);
    if (!in) fail(Errc::io, "cannot open node file: " + *node_path);
    std::string line;
    std::size_t lineno = 0;
    while (next_line(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      auto cols = split(line, '\t');
      if (cols.size() < 2) bad_line(*node_path, lineno, "expected id<TAB>year");
      check_id(*node_path, lineno, cols[0]);
      std::optional<long long> year;
      if (cols[1] != "-") {
        long long y;
        if (!parse_ll(cols[1], y))
          bad_line(*node_path, lineno, "year must be an integer or '-'");
        year = y;
      }
      try {
        b.node(std::string(cols[0]), year);
      } catch (const Error&) {
        bad_line(*node_path, lineno, "duplicate node entry for '" + std::string(cols[0]) + "'");
      }
      for (std::size_t c = 2; c < cols.size(); ++c) {
        auto eq = cols[c].find('=');
        if (eq == std::string_view::npos)
          bad_line(*node_path, lineno, "group column must look like kind=key[;key...]");
        auto kind = parse_group_kind(cols[c].substr(0, eq));
        if (!kind)
          bad_line(*node_path, lineno,
                   "unknown group kind '" + std::string(cols[c].substr(0, eq)) + "'");
        for (auto key : split(cols[c].substr(eq + 1), ';')) {
          if (key.empty()) bad_line(*node_path, lineno, "empty group key");
          b.group(cols[0], *kind, std::string(key));
        }
      }
    }
  }
  {
    std::ifstream in(edge_path);
    if (!in) fail(Errc::io, "cannot open edge file: " + edge_path);
    std::string line;
    std::size_t lineno = 0;
    while (next_line(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      auto cols = split(line, '\t');
      if (cols.size() != 2 && cols.size() != 3)
        bad_line(edge_path, lineno, "expected citing<TAB>cited[<TAB>weight]");
      check_id(edge_path, lineno, cols[0]);
      check_id(edge_path, lineno, cols[1]);
      double w = 1.0;
      if (cols.size() == 3) {
        if (!parse_double(cols[2], w) || !(w >= 0.0))
          bad_line(edge_path, lineno, "weight must be a finite nonnegative real");
      }
      // File rows are citing -> cited; storage flips to knowledge direction.
      b.edge(std::string(cols[1]), std::string(cols[0]), w);
    }
  }
  return std::move(b).build();
}

void CitationGraph::save_edges(std::ostream& out) const {
  bool weighted = false;
  for (uint32_t v = 0; v < node_count() && !weighted; ++v) {
    if (is_super_root(v)) continue;
    for (const Edge& e : in_edges(v))
      if (!is_super_root(e.node) && e.weight != 1.0) {
        weighted = true;
        break;
      }
  }
  // Rows ordered by (citing, cited); in_edges(v) lists the papers v cites.
  for (uint32_t v = 0; v < node_count(); ++v) {
    if (is_super_root(v)) continue;
    for (const Edge& e : in_edges(v)) {
      if (is_super_root(e.node)) continue;
      out << ids_[v] << '\t' << ids_[e.node];
      if (weighted) out << '\t' << format_double(e.weight);
      out << '\n';
    }
  }
}

void CitationGraph::save_nodes(std::ostream& out) const {
  for (uint32_t v = 0; v < node_count(); ++v) {
    if (is_super_root(v)) continue;
    out << ids_[v] << '\t';
    if (has_year_[v])
      out << years_[v];
    else
      out << '-';
    for (int k = 0; k < group_kind_count; ++k) {
      auto keys = groups_of(v, static_cast<GroupKind>(k));
      if (keys.empty()) continue;
      out << '\t' << group_kind_name(static_cast<GroupKind>(k)) << '=';
      for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i) out << ';';
        out << keys[i];
      }
    }
    out << '\n';
  }
}

void CitationGraph::save(const std::string& edge_path,
                         const std::optional<std::string>& node_path) const {
  {
    std::ofstream out(edge_path);
    if (!out) fail(Errc::io, "cannot write edge file: " + edge_path);
    save_edges(out);
    if (!out) fail(Errc::io, "write failed: " + edge_path);
  }
  if (node_path) {
    std::ofstream out(*node_path);
    if (!out) fail(Errc::io, "cannot write node file: " + *node_path);
    save_nodes(out);
    if (!out) fail(Errc::io, "write failed: " + *node_path);
  }
}

}  // namespace kqi
