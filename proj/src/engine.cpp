#include "kqi/engine.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

#include "kqi/format.hpp"

#include "json.hpp"

namespace kqi {

VolumeTable compute_volumes(const CitationGraph& g) {
  if (!g.augmented()) fail(Errc::not_augmented, "compute_volumes needs an augmented graph");
  const std::size_t n = g.node_count();
  VolumeTable vt;
  vt.volume.assign(n, 0.0);
  vt.total_weight = g.total_weight();
  vt.node_count = n;
  const auto& topo = g.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    uint32_t v = *it;
    double vol = g.out_strength(v);
    for (const Edge& e : g.out_edges(v)) {
      double sin = g.in_strength(e.node);
      if (sin <= 0.0)
        fail(Errc::zero_in_strength, "node " + g.id_of(e.node) + " has zero in-strength");
      vol += vt.volume[e.node] * (e.weight / sin);
    }
    vt.volume[v] = vol;
  }
  return vt;
}

namespace {

void check_table(const CitationGraph& g, double table_w, std::size_t table_n,
                 const char* what) {
  if (table_n != g.node_count() || table_w != g.total_weight())
    fail(Errc::mismatched_table, std::string(what) + " was computed from a different graph");
}

double kqi_of(const CitationGraph& g, const VolumeTable& vt, double w_total, uint32_t v) {
  auto parents = g.in_edges(v);
  if (parents.empty()) return 0.0;
  double sin = g.in_strength(v);
  if (sin <= 0.0) fail(Errc::zero_in_strength, "node " + g.id_of(v) + " has zero in-strength");
  double sum = 0.0;
  for (const Edge& e : parents) {
    double x = vt.volume[v] * (e.weight / sin);
    if (x <= 0.0) continue;  // empty share carries no entropy
    double ratio = x / vt.volume[e.node];
    if (ratio > 1.0) ratio = 1.0;  // x <= parent volume up to rounding
    sum += -(x / w_total) * std::log2(ratio);
  }
  return sum;
}

}  // namespace

KqiTable kqi_all(const CitationGraph& g, const VolumeTable& vt, int threads) {
  if (!g.augmented()) fail(Errc::not_augmented, "kqi_all needs an augmented graph");
  check_table(g, vt.total_weight, vt.node_count, "volume table");
  const std::size_t n = g.node_count();
  KqiTable kt;
  kt.kqi.assign(n, 0.0);
  kt.total_weight = g.total_weight();
  kt.node_count = n;
  const double w = g.total_weight();
  if (w > 0.0) {
    auto run = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t v = lo; v < hi; ++v) {
        if (g.is_super_root(static_cast<uint32_t>(v))) continue;
        kt.kqi[v] = kqi_of(g, vt, w, static_cast<uint32_t>(v));
      }
    };
    if (threads <= 1 || n < 2048) {
      run(0, n);
    } else {
      std::size_t parts = std::min<std::size_t>(threads, 64);
      std::vector<std::thread> pool;
      std::size_t chunk = (n + parts - 1) / parts;
      for (std::size_t p = 0; p < parts; ++p) {
        std::size_t lo = p * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(run, lo, hi);
      }
      for (auto& t : pool) t.join();
    }
  }
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) total += kt.kqi[v];
  kt.total = total;
  return kt;
}

namespace {

// Brute-force volume: walk every directed path out of v, adding each node's
// out-strength scaled by the product of child shares along the way.  No
// memoization on purpose; this is the slow second route.
double path_volume(const CitationGraph& g, uint32_t v, std::size_t& budget) {
  if (budget == 0) fail(Errc::fragment_explosion, "fragment enumeration budget exhausted");
  --budget;
  double total = g.out_strength(v);
  for (const Edge& e : g.out_edges(v)) {
    double sin = g.in_strength(e.node);
    if (sin <= 0.0)
      fail(Errc::zero_in_strength, "node " + g.id_of(e.node) + " has zero in-strength");
    total += (e.weight / sin) * path_volume(g, e.node, budget);
  }
  return total;
}

struct FragmentWalk {
  const CitationGraph& g;
  uint32_t target;
  double w_total;
  std::size_t budget;
  std::vector<uint8_t> can_reach;  // ancestors of target
  double kqi = 0.0;

  // Extends a root fragment along every edge toward the target.  `share` is
  // the product of w/s_in over the path so far, `parent_vol` the enclosing
  // fragment's volume.
  void extend(uint32_t v, double share, double parent_vol) {
    if (budget == 0) fail(Errc::fragment_explosion, "fragment enumeration budget exhausted");
    --budget;
    std::size_t b = budget;
    double vol_v = path_volume(g, v, b);
    budget = b;
    double frag = vol_v * share;
    if (v == target) {
      if (frag > 0.0) {
        double ratio = std::min(frag / parent_vol, 1.0);
        kqi += -(frag / w_total) * std::log2(ratio);
      }
      return;
    }
    for (const Edge& e : g.out_edges(v)) {
      if (!can_reach[e.node]) continue;
      extend(e.node, share * (e.weight / g.in_strength(e.node)), frag);
    }
  }
};

}  // namespace

double fragment_oracle_kqi(const CitationGraph& g, uint32_t node, std::size_t budget) {
  if (!g.augmented()) fail(Errc::not_augmented, "fragment oracle needs an augmented graph");
  if (g.is_super_root(node)) return 0.0;
  if (g.total_weight() <= 0.0) return 0.0;

  // Mark ancestors of the target so the walk only follows useful edges.
  std::vector<uint8_t> anc(g.node_count(), 0);
  std::vector<uint32_t> stack{node};
  anc[node] = 1;
  while (!stack.empty()) {
    uint32_t v = stack.back();
    stack.pop_back();
    for (const Edge& e : g.in_edges(v)) {
      if (!anc[e.node]) {
        anc[e.node] = 1;
        stack.push_back(e.node);
      }
    }
  }

  uint32_t root = g.super_root();
  FragmentWalk walk{g, node, g.total_weight(), budget, std::move(anc), 0.0};
  std::size_t b = walk.budget;
  double root_vol = path_volume(g, root, b);
  walk.budget = b;
  for (const Edge& e : g.out_edges(root)) {
    if (!walk.can_reach[e.node]) continue;
    walk.extend(e.node, e.weight / g.in_strength(e.node), root_vol);
  }
  return walk.kqi;
}

GroupAggregate aggregate_kqi(const CitationGraph& g, const KqiTable& kt, GroupKind kind,
                             bool first_author_only) {
  check_table(g, kt.total_weight, kt.node_count, "kqi table");
  GroupAggregate agg;
  agg.kind = kind;
  std::unordered_map<std::string, std::size_t> pos;
  for (uint32_t v = 0; v < g.node_count(); ++v) {
    if (g.is_super_root(v)) continue;
    auto keys = g.groups_of(v, kind);
    if (keys.empty()) {
      ++agg.skipped;
      continue;
    }
    std::size_t take = first_author_only ? 1 : keys.size();
    for (std::size_t i = 0; i < take; ++i) {
      auto [it, fresh] = pos.try_emplace(keys[i], agg.scores.size());
      if (fresh) {
        agg.scores.push_back(GroupScore{keys[i], kt.kqi[v], 1});
      } else {
        agg.scores[it->second].kqi_sum += kt.kqi[v];
        agg.scores[it->second].paper_count += 1;
      }
    }
  }
  std::sort(agg.scores.begin(), agg.scores.end(), [](const GroupScore& a, const GroupScore& b) {
    if (a.kqi_sum != b.kqi_sum) return a.kqi_sum > b.kqi_sum;
    return a.key < b.key;
  });
  return agg;
}

void export_kqi_csv(const CitationGraph& g, const VolumeTable& vt, const KqiTable& kt,
                    std::ostream& out) {
  check_table(g, vt.total_weight, vt.node_count, "volume table");
  check_table(g, kt.total_weight, kt.node_count, "kqi table");
  out << "id,kqi,volume,in_strength,out_strength\n";
  for (uint32_t v = 0; v < g.node_count(); ++v) {
    if (g.is_super_root(v)) continue;
    out << csv_field(g.id_of(v)) << ',' << format_double(kt.kqi[v]) << ','
        << format_double(vt.volume[v]) << ',' << format_double(g.in_strength(v)) << ','
        << format_double(g.out_strength(v)) << '\n';
  }
}

void export_kqi_json(const CitationGraph& g, const VolumeTable& vt, const KqiTable& kt,
                     std::ostream& out) {
  check_table(g, vt.total_weight, vt.node_count, "volume table");
  check_table(g, kt.total_weight, kt.node_count, "kqi table");
  nlohmann::json nodes = nlohmann::json::array();
  for (uint32_t v = 0; v < g.node_count(); ++v) {
    if (g.is_super_root(v)) continue;
    nodes.push_back({{"id", g.id_of(v)},
                     {"kqi", kt.kqi[v]},
                     {"volume", vt.volume[v]},
                     {"in_strength", g.in_strength(v)},
                     {"out_strength", g.out_strength(v)}});
  }
  nlohmann::json doc{{"total", kt.total}, {"total_weight", kt.total_weight}, {"nodes", nodes}};
  out << doc.dump(2) << '\n';
}

void export_aggregate_csv(const GroupAggregate& agg, std::ostream& out, std::size_t top_n) {
  out << "key,kqi_sum,paper_count\n";
  std::size_t limit = top_n == 0 ? agg.scores.size() : std::min(top_n, agg.scores.size());
  for (std::size_t i = 0; i < limit; ++i) {
    out << csv_field(agg.scores[i].key) << ',' << format_double(agg.scores[i].kqi_sum) << ','
        << agg.scores[i].paper_count << '\n';
  }
}

}  // namespace kqi
