#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kqi/error.hpp"

namespace kqi {

// Reserved id of the synthetic super root added by augment(); input files may
// not use it.
inline constexpr std::string_view super_root_id = "__ROOT__";

enum class GroupKind { author = 0, affiliation = 1, country = 2, discipline = 3 };
inline constexpr int group_kind_count = 4;
const char* group_kind_name(GroupKind k);
std::optional<GroupKind> parse_group_kind(std::string_view s);

struct Edge {
  uint32_t node;
  double weight;
};

struct DecaySpec {
  double lambda = 0.0;
  // Defaults to the newest node year; must not precede it.
  std::optional<long long> reference_year;
};

// Citation DAG stored in knowledge direction: an internal edge u -> v means v
// cites u, so volume flows from cited papers toward the papers built on them.
// Instances are immutable; augment/decay/snapshot return new graphs. Node
// indices are assigned in ascending id order, so index order == id order.
class CitationGraph {
 public:
  CitationGraph() = default;

  std::size_t node_count() const { return ids_.size(); }
  std::size_t real_node_count() const { return ids_.size() - (super_root_ ? 1u : 0u); }
  std::size_t edge_count() const { return out_edges_.size(); }

  // W: sum of all edge weights, super-root edges included.
  double total_weight() const { return total_weight_; }
  // Sensitivity variant with the synthetic edges left out.
  double total_weight_without_root() const;

  bool augmented() const { return super_root_.has_value(); }
  uint32_t super_root() const;
  bool is_super_root(uint32_t v) const { return super_root_ && *super_root_ == v; }

  std::optional<uint32_t> find(std::string_view id) const;
  uint32_t index_of(std::string_view id) const;  // throws unknown_node
  const std::string& id_of(uint32_t v) const { return ids_[v]; }
  std::optional<long long> year_of(uint32_t v) const;

  // out_edges(v): papers citing v.  in_edges(v): papers v cites.  Both sorted
  // by neighbor index.
  std::span<const Edge> out_edges(uint32_t v) const;
  std::span<const Edge> in_edges(uint32_t v) const;
  std::size_t out_degree(uint32_t v) const { return out_off_[v + 1] - out_off_[v]; }
  std::size_t in_degree(uint32_t v) const { return in_off_[v + 1] - in_off_[v]; }
  double out_strength(uint32_t v) const { return out_strength_[v]; }
  double in_strength(uint32_t v) const { return in_strength_[v]; }
  // In-strength with super-root edges ignored: the real reference mass.
  double in_strength_without_root(uint32_t v) const;

  std::span<const std::string> groups_of(uint32_t v, GroupKind k) const;
  bool any_groups(GroupKind k) const;

  // Every edge u -> v places u before v.
  const std::vector<uint32_t>& topological_order() const { return topo_; }

  CitationGraph augment() const;
  CitationGraph decay(const DecaySpec& spec) const;
  CitationGraph snapshot(long long year) const;

  static CitationGraph load(const std::string& edge_path,
                            const std::optional<std::string>& node_path = std::nullopt);
  void save(const std::string& edge_path,
            const std::optional<std::string>& node_path = std::nullopt) const;
  void save_edges(std::ostream& out) const;
  void save_nodes(std::ostream& out) const;

  class Builder {
   public:
    // Declares a node; a second declaration of the same id is an error.
    Builder& node(std::string id, std::optional<long long> year = std::nullopt);
    Builder& group(std::string_view id, GroupKind k, std::string key);
    // citing cites cited; stored as cited -> citing.
    Builder& edge(std::string cited, std::string citing, double weight = 1.0);
    CitationGraph build() &&;

   private:
    friend class CitationGraph;
    struct NodeDecl {
      std::string id;
      std::optional<long long> year;
      std::array<std::vector<std::string>, group_kind_count> groups;
      bool declared = false;
    };
    std::unordered_map<std::string, std::size_t> decl_index_;
    std::vector<NodeDecl> decls_;
    std::vector<std::tuple<std::string, std::string, double>> edges_;
    NodeDecl& decl_for(std::string_view id);
  };

  struct IndexedNode {
    std::string id;
    std::optional<long long> year;
  };
  struct IndexedEdge {
    uint32_t src;  // cited
    uint32_t dst;  // citing
    double weight;
  };
  // Fast path for generators: nodes must already be sorted by id with no
  // duplicates; edges refer to positions in `nodes`.
  static CitationGraph assemble(std::vector<IndexedNode> nodes, std::vector<IndexedEdge> edges,
                                std::optional<uint32_t> super_root = std::nullopt);

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string_view, uint32_t> index_;
  std::vector<long long> years_;
  std::vector<uint8_t> has_year_;
  std::vector<std::size_t> out_off_, in_off_;
  std::vector<Edge> out_edges_, in_edges_;
  std::vector<double> out_strength_, in_strength_, root_in_weight_;
  std::vector<uint32_t> topo_;
  std::array<std::unordered_map<uint32_t, std::vector<std::string>>, group_kind_count> groups_;
  std::optional<uint32_t> super_root_;
  double total_weight_ = 0.0;

  void index_ids();
  void build_adjacency(std::vector<IndexedEdge>& edges);
  void compute_topology();
  [[noreturn]] void report_cycle(const std::vector<uint32_t>& in_deg_left) const;
};

}  // namespace kqi
