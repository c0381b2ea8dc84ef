#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kqi/engine.hpp"
#include "kqi/graph.hpp"

namespace kqi {

struct VeinConfig {
  // Exactly one of top_fraction / ids selects the nodes.
  std::optional<double> top_fraction;  // (0, 1]: ceil(f * n) best nodes by KQI
  std::vector<std::string> ids;
  int max_depth = 10;
  // Keep searching past the first productive depth, connecting every selected
  // ancestor within max_depth interior-free hops.
  bool complete_level = false;
};

struct VeinGraph {
  std::vector<std::string> nodes;                            // ascending id
  std::vector<std::pair<std::string, std::string>> edges;    // (ancestor, descendant)
  double covered_kqi_share = 0.0;
};

// For each selected node, breadth-first search over predecessors with a
// growing depth cap; every selected ancestor reached through non-selected
// interiors gets an edge, and the node's search stops once it has an in-edge
// (or the cap passes max_depth).
VeinGraph extract_vein(const CitationGraph& g, const KqiTable& kt, const VeinConfig& cfg);

void export_vein_dot(const VeinGraph& v, std::ostream& out,
                     const std::map<std::string, std::string>* labels = nullptr);
void export_vein_csv(const VeinGraph& v, std::ostream& out);

}  // namespace kqi
