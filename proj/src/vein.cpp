#include "kqi/vein.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include "kqi/format.hpp"

namespace kqi {

namespace {

std::vector<uint32_t> resolve_selection(const CitationGraph& g, const KqiTable& kt,
                                        const VeinConfig& cfg) {
  if (cfg.top_fraction && !cfg.ids.empty())
    fail(Errc::invalid_argument, "vein selection: give a fraction or an id list, not both");
  std::vector<uint32_t> sel;
  if (cfg.top_fraction) {
    double f = *cfg.top_fraction;
    if (!(f > 0.0 && f <= 1.0))
      fail(Errc::invalid_argument, "vein top fraction must lie in (0, 1]");
    std::vector<uint32_t> order;
    for (uint32_t v = 0; v < g.node_count(); ++v)
      if (!g.is_super_root(v)) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
      if (kt.kqi[a] != kt.kqi[b]) return kt.kqi[a] > kt.kqi[b];
      return a < b;
    });
    std::size_t k = static_cast<std::size_t>(
        std::ceil(f * static_cast<double>(order.size())));
    k = std::min(std::max<std::size_t>(k, order.empty() ? 0 : 1), order.size());
    sel.assign(order.begin(), order.begin() + k);
  } else {
    for (const auto& id : cfg.ids) {
      uint32_t v = g.index_of(id);
      if (g.is_super_root(v))
        fail(Errc::invalid_argument, "the super root cannot be selected for a vein");
      sel.push_back(v);
    }
    std::sort(sel.begin(), sel.end());
    sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
  }
  if (sel.empty()) fail(Errc::empty_selection, "vein selection is empty");
  std::sort(sel.begin(), sel.end());
  return sel;
}

}  // namespace

VeinGraph extract_vein(const CitationGraph& g, const KqiTable& kt, const VeinConfig& cfg) {
  if (!g.augmented()) fail(Errc::not_augmented, "extract_vein needs an augmented graph");
  if (kt.node_count != g.node_count() || kt.total_weight != g.total_weight())
    fail(Errc::mismatched_table, "kqi table was computed from a different graph");
  if (cfg.max_depth < 1) fail(Errc::invalid_argument, "vein max_depth must be >= 1");

  std::vector<uint32_t> sel = resolve_selection(g, kt, cfg);
  std::vector<uint8_t> selected(g.node_count(), 0);
  for (uint32_t v : sel) selected[v] = 1;

  std::set<std::pair<uint32_t, uint32_t>> edges;
  std::vector<uint32_t> visited_at(g.node_count(), UINT32_MAX);  // epoch stamps
  uint32_t epoch = 0;
  std::vector<std::pair<uint32_t, int>> open;

  for (uint32_t node : sel) {
    bool has_in_edge = false;
    for (int cap = 1; cap <= cfg.max_depth; ++cap) {
      if (has_in_edge && !cfg.complete_level) break;
      // One full sweep: FIFO from the direct predecessors, expanding
      // non-selected interiors while depth < cap.
      ++epoch;
      open.clear();
      for (const Edge& e : g.in_edges(node)) {
        visited_at[e.node] = epoch;
        open.emplace_back(e.node, 1);
      }
      for (std::size_t head = 0; head < open.size(); ++head) {
        auto [v, depth] = open[head];
        if (selected[v]) {
          edges.emplace(v, node);
          has_in_edge = true;
          continue;  // selected ancestors are not expanded
        }
        if (depth < cap) {
          for (const Edge& e : g.in_edges(v)) {
            if (visited_at[e.node] != epoch) {
              visited_at[e.node] = epoch;
              open.emplace_back(e.node, depth + 1);
            }
          }
        }
      }
    }
  }

  VeinGraph out;
  out.nodes.reserve(sel.size());
  for (uint32_t v : sel) out.nodes.push_back(g.id_of(v));
  for (const auto& [a, d] : edges) out.edges.emplace_back(g.id_of(a), g.id_of(d));
  std::sort(out.edges.begin(), out.edges.end());
  if (kt.total > 0.0) {
    double covered = 0.0;
    for (uint32_t v : sel) covered += kt.kqi[v];
    out.covered_kqi_share = covered / kt.total;
  }
  return out;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void export_vein_dot(const VeinGraph& v, std::ostream& out,
                     const std::map<std::string, std::string>* labels) {
  out << "digraph vein {\n";
  if (!v.nodes.empty()) {
    out << "  rankdir=TB;\n";
    for (const auto& id : v.nodes) {
      out << "  " << dot_quote(id);
      if (labels) {
        auto it = labels->find(id);
        if (it != labels->end()) out << " [label=" << dot_quote(it->second) << "]";
      }
      out << ";\n";
    }
    for (const auto& [a, d] : v.edges)
      out << "  " << dot_quote(a) << " -> " << dot_quote(d) << ";\n";
  }
  out << "}\n";
}

void export_vein_csv(const VeinGraph& v, std::ostream& out) {
  out << "ancestor,descendant\n";
  for (const auto& [a, d] : v.edges) out << csv_field(a) << ',' << csv_field(d) << '\n';
}

}  // namespace kqi
