#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kqi/graph.hpp"

namespace kqi {

// Knowledge-tree volumes keyed by node index.  total_weight/node_count
// fingerprint the graph the table was computed from.
struct VolumeTable {
  std::vector<double> volume;
  double total_weight = 0.0;
  std::size_t node_count = 0;
};

struct KqiTable {
  std::vector<double> kqi;  // super-root slot stays 0
  double total = 0.0;
  double total_weight = 0.0;
  std::size_t node_count = 0;
};

// Single backward pass over reverse topological order:
//   volume(v) = s_out(v) + sum over children u of volume(u) * w_vu / s_in(u).
VolumeTable compute_volumes(const CitationGraph& g);

// Per-node query: kqi(v) = sum over parents u of -(x/W) * log2(x / volume(u))
// with x = volume(v) * w_uv / s_in(v), and 0 * log2(0/x) taken as 0.
KqiTable kqi_all(const CitationGraph& g, const VolumeTable& vt, int threads = 1);

// Test oracle: decomposes the knowledge tree into root-path fragments and sums
// the per-fragment entropy terms directly.  Exponential; guarded by budget.
double fragment_oracle_kqi(const CitationGraph& g, uint32_t node,
                           std::size_t budget = 1'000'000);

struct GroupScore {
  std::string key;
  double kqi_sum = 0.0;
  std::size_t paper_count = 0;
};

struct GroupAggregate {
  GroupKind kind = GroupKind::author;
  std::vector<GroupScore> scores;   // sorted by kqi_sum desc, key asc
  std::size_t skipped = 0;          // papers without a key of this kind
};

GroupAggregate aggregate_kqi(const CitationGraph& g, const KqiTable& kt, GroupKind kind,
                             bool first_author_only = false);

void export_kqi_csv(const CitationGraph& g, const VolumeTable& vt, const KqiTable& kt,
                    std::ostream& out);
void export_kqi_json(const CitationGraph& g, const VolumeTable& vt, const KqiTable& kt,
                     std::ostream& out);
void export_aggregate_csv(const GroupAggregate& agg, std::ostream& out, std::size_t top_n = 0);

}  // namespace kqi
