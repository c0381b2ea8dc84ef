#include "kqi/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kqi {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ok: return "ok";
    case Errc::io: return "io";
    case Errc::malformed_line: return "malformed_line";
    case Errc::duplicate_edge: return "duplicate_edge";
    case Errc::cycle: return "cycle";
    case Errc::already_augmented: return "already_augmented";
    case Errc::not_augmented: return "not_augmented";
    case Errc::missing_year: return "missing_year";
    case Errc::zero_in_strength: return "zero_in_strength";
    case Errc::mismatched_table: return "mismatched_table";
    case Errc::unknown_group_kind: return "unknown_group_kind";
    case Errc::unknown_node: return "unknown_node";
    case Errc::degenerate_input: return "degenerate_input";
    case Errc::too_few_points: return "too_few_points";
    case Errc::all_zero: return "all_zero";
    case Errc::nonconvergence: return "nonconvergence";
    case Errc::key_mismatch: return "key_mismatch";
    case Errc::empty_selection: return "empty_selection";
    case Errc::fragment_explosion: return "fragment_explosion";
    case Errc::validity_guard: return "validity_guard";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

const char* group_kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::author: return "author";
    case GroupKind::affiliation: return "affiliation";
    case GroupKind::country: return "country";
    case GroupKind::discipline: return "discipline";
  }
  return "unknown";
}

std::optional<GroupKind> parse_group_kind(std::string_view s) {
  if (s == "author") return GroupKind::author;
  if (s == "affiliation") return GroupKind::affiliation;
  if (s == "country") return GroupKind::country;
  if (s == "discipline") return GroupKind::discipline;
  return std::nullopt;
}

double CitationGraph::total_weight_without_root() const {
  if (!super_root_) return total_weight_;
  return total_weight_ - out_strength_[*super_root_];
}

uint32_t CitationGraph::super_root() const {
  if (!super_root_) fail(Errc::not_augmented, "graph has no super root");
  return *super_root_;
}

std::optional<uint32_t> CitationGraph::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

uint32_t CitationGraph::index_of(std::string_view id) const {
  auto v = find(id);
  if (!v) fail(Errc::unknown_node, "unknown node id: " + std::string(id));
  return *v;
}

std::optional<long long> CitationGraph::year_of(uint32_t v) const {
  if (!has_year_[v]) return std::nullopt;
  return years_[v];
}

std::span<const Edge> CitationGraph::out_edges(uint32_t v) const {
  return {out_edges_.data() + out_off_[v], out_off_[v + 1] - out_off_[v]};
}

std::span<const Edge> CitationGraph::in_edges(uint32_t v) const {
  return {in_edges_.data() + in_off_[v], in_off_[v + 1] - in_off_[v]};
}

double CitationGraph::in_strength_without_root(uint32_t v) const {
  return in_strength_[v] - root_in_weight_[v];
}

std::span<const std::string> CitationGraph::groups_of(uint32_t v, GroupKind k) const {
  const auto& m = groups_[static_cast<int>(k)];
  auto it = m.find(v);
  if (it == m.end()) return {};
  return {it->second.data(), it->second.size()};
}

bool CitationGraph::any_groups(GroupKind k) const {
  return !groups_[static_cast<int>(k)].empty();
}

void CitationGraph::index_ids() {
  index_.clear();
  index_.reserve(ids_.size());
  for (uint32_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], i);
}

void CitationGraph::build_adjacency(std::vector<IndexedEdge>& edges) {
  const std::size_t n = ids_.size();
  const std::size_t m = edges.size();
  out_off_.assign(n + 1, 0);
  in_off_.assign(n + 1, 0);
  for (const auto& e : edges) {
    if (e.src == e.dst)
      fail(Errc::cycle, "self-loop on node " + ids_[e.src]);
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
      fail(Errc::invalid_argument, "edge weight must be a finite nonnegative real");
    ++out_off_[e.src + 1];
    ++in_off_[e.dst + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_off_[i + 1] += out_off_[i];
    in_off_[i + 1] += in_off_[i];
  }
  out_edges_.resize(m);
  in_edges_.resize(m);
  std::vector<std::size_t> ocur(out_off_.begin(), out_off_.end() - 1);
  std::vector<std::size_t> icur(in_off_.begin(), in_off_.end() - 1);
  for (const auto& e : edges) {
    out_edges_[ocur[e.src]++] = {e.dst, e.weight};
    in_edges_[icur[e.dst]++] = {e.src, e.weight};
  }
  auto by_node = [](const Edge& a, const Edge& b) { return a.node < b.node; };
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(out_edges_.begin() + out_off_[v], out_edges_.begin() + out_off_[v + 1], by_node);
    std::sort(in_edges_.begin() + in_off_[v], in_edges_.begin() + in_off_[v + 1], by_node);
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = out_off_[v] + 1; i < out_off_[v + 1]; ++i) {
      if (out_edges_[i].node == out_edges_[i - 1].node)
        fail(Errc::duplicate_edge, "duplicate edge (" + ids_[out_edges_[i].node] + " cites " +
                                       ids_[v] + ")");
    }
  }
  out_strength_.assign(n, 0.0);
  in_strength_.assign(n, 0.0);
  root_in_weight_.assign(n, 0.0);
  total_weight_ = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    double s = 0.0;
    for (std::size_t i = out_off_[v]; i < out_off_[v + 1]; ++i) s += out_edges_[i].weight;
    out_strength_[v] = s;
    total_weight_ += s;
  }
  for (std::size_t v = 0; v < n; ++v) {
    double s = 0.0;
    for (std::size_t i = in_off_[v]; i < in_off_[v + 1]; ++i) s += in_edges_[i].weight;
    in_strength_[v] = s;
  }
  if (super_root_) {
    for (const Edge& e : out_edges(*super_root_)) root_in_weight_[e.node] = e.weight;
  }
}

void CitationGraph::compute_topology() {
  const std::size_t n = ids_.size();
  std::vector<uint32_t> indeg(n);
  for (uint32_t v = 0; v < n; ++v) indeg[v] = static_cast<uint32_t>(in_degree(v));
  topo_.clear();
  topo_.reserve(n);
  for (uint32_t v = 0; v < n; ++v)
    if (indeg[v] == 0) topo_.push_back(v);
  for (std::size_t head = 0; head < topo_.size(); ++head) {
    uint32_t v = topo_[head];
    for (const Edge& e : out_edges(v)) {
      if (--indeg[e.node] == 0) topo_.push_back(e.node);
    }
  }
  if (topo_.size() != n) report_cycle(indeg);
}

void CitationGraph::report_cycle(const std::vector<uint32_t>& in_deg_left) const {
  // Every node with leftover in-degree sits on or downstream of a cycle; walk
  // backwards through such nodes until one repeats.
  const std::size_t n = ids_.size();
  std::vector<int> seen(n, -1);
  uint32_t v = 0;
  while (v < n && in_deg_left[v] == 0) ++v;
  std::vector<uint32_t> trail;
  while (seen[v] < 0) {
    seen[v] = static_cast<int>(trail.size());
    trail.push_back(v);
    for (const Edge& e : in_edges(v)) {
      if (in_deg_left[e.node] > 0) {
        v = e.node;
        break;
      }
    }
  }
  std::vector<std::string> cycle;
  for (std::size_t i = seen[v]; i < trail.size(); ++i) cycle.push_back(ids_[trail[i]]);
  std::sort(cycle.begin(), cycle.end());
  std::string msg = "citation graph contains a cycle:";
  for (const auto& id : cycle) msg += " " + id;
  fail(Errc::cycle, msg);
}

CitationGraph CitationGraph::assemble(std::vector<IndexedNode> nodes,
                                      std::vector<IndexedEdge> edges,
                                      std::optional<uint32_t> super_root) {
  CitationGraph g;
  g.ids_.reserve(nodes.size());
  g.years_.resize(nodes.size(), 0);
  g.has_year_.resize(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0 && !(nodes[i - 1].id < nodes[i].id))
      fail(Errc::internal, "assemble: node ids not strictly ascending");
    g.ids_.push_back(std::move(nodes[i].id));
    if (nodes[i].year) {
      g.years_[i] = *nodes[i].year;
      g.has_year_[i] = 1;
    }
  }
  for (const auto& e : edges) {
    if (e.src >= g.ids_.size() || e.dst >= g.ids_.size())
      fail(Errc::internal, "assemble: edge endpoint out of range");
  }
  g.super_root_ = super_root;
  g.index_ids();
  g.build_adjacency(edges);
  g.compute_topology();
  return g;
}

CitationGraph::Builder::NodeDecl& CitationGraph::Builder::decl_for(std::string_view id) {
  auto it = decl_index_.find(std::string(id));
  if (it != decl_index_.end()) return decls_[it->second];
  decl_index_.emplace(std::string(id), decls_.size());
  decls_.push_back(NodeDecl{std::string(id), std::nullopt, {}, false});
  return decls_.back();
}

CitationGraph::Builder& CitationGraph::Builder::node(std::string id,
                                                     std::optional<long long> year) {
  if (id.empty()) fail(Errc::invalid_argument, "empty node id");
  if (id == super_root_id)
    fail(Errc::invalid_argument, "node id collides with the reserved super-root id");
  NodeDecl& d = decl_for(id);
  if (d.declared) fail(Errc::invalid_argument, "duplicate node declaration: " + id);
  d.declared = true;
  d.year = year;
  return *this;
}

CitationGraph::Builder& CitationGraph::Builder::group(std::string_view id, GroupKind k,
                                                      std::string key) {
  if (key.empty()) fail(Errc::invalid_argument, "empty group key");
  decl_for(id).groups[static_cast<int>(k)].push_back(std::move(key));
  return *this;
}

CitationGraph::Builder& CitationGraph::Builder::edge(std::string cited, std::string citing,
                                                     double weight) {
  if (cited.empty() || citing.empty()) fail(Errc::invalid_argument, "empty node id in edge");
  if (cited == super_root_id || citing == super_root_id)
    fail(Errc::invalid_argument, "edge uses the reserved super-root id");
  decl_for(cited);
  decl_for(citing);
  edges_.emplace_back(std::move(cited), std::move(citing), weight);
  return *this;
}

CitationGraph CitationGraph::Builder::build() && {
  std::vector<IndexedNode> nodes;
  nodes.reserve(decls_.size());
  std::vector<std::size_t> order(decls_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [this](std::size_t a, std::size_t b) { return decls_[a].id < decls_[b].id; });
  std::unordered_map<std::string_view, uint32_t> pos;
  pos.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    nodes.push_back(IndexedNode{decls_[order[i]].id, decls_[order[i]].year});
    pos.emplace(nodes.back().id, static_cast<uint32_t>(i));
  }
  std::vector<IndexedEdge> edges;
  edges.reserve(edges_.size());
  for (const auto& [cited, citing, w] : edges_)
    edges.push_back(IndexedEdge{pos.at(cited), pos.at(citing), w});
  CitationGraph g = assemble(std::move(nodes), std::move(edges));
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto& src = decls_[order[i]].groups;
    for (int k = 0; k < group_kind_count; ++k) {
      if (!src[k].empty()) g.groups_[k].emplace(static_cast<uint32_t>(i), std::move(src[k]));
    }
  }
  return g;
}

CitationGraph CitationGraph::augment() const {
  if (super_root_) fail(Errc::already_augmented, "graph already has a super root");
  const std::size_t n = ids_.size();
  const std::string root(super_root_id);
  uint32_t pos = static_cast<uint32_t>(
      std::lower_bound(ids_.begin(), ids_.end(), root) - ids_.begin());
  auto remap = [pos](uint32_t v) { return v + (v >= pos ? 1u : 0u); };

  std::vector<IndexedNode> nodes;
  nodes.reserve(n + 1);
  for (uint32_t v = 0; v < n; ++v) {
    if (v == pos) nodes.push_back(IndexedNode{root, std::nullopt});
    nodes.push_back(IndexedNode{ids_[v], year_of(v)});
  }
  if (pos == n) nodes.push_back(IndexedNode{root, std::nullopt});

  std::vector<IndexedEdge> edges;
  edges.reserve(out_edges_.size() + n);
  for (uint32_t v = 0; v < n; ++v)
    if (in_degree(v) == 0) edges.push_back(IndexedEdge{pos, remap(v), 1.0});
  for (uint32_t v = 0; v < n; ++v)
    for (const Edge& e : out_edges(v)) edges.push_back(IndexedEdge{remap(v), remap(e.node), e.weight});

  CitationGraph g = assemble(std::move(nodes), std::move(edges), pos);
  for (int k = 0; k < group_kind_count; ++k)
    for (const auto& [v, keys] : groups_[k]) g.groups_[k].emplace(remap(v), keys);
  return g;
}

CitationGraph CitationGraph::decay(const DecaySpec& spec) const {
  if (!(spec.lambda >= 0.0) || !std::isfinite(spec.lambda))
    fail(Errc::invalid_argument, "decay lambda must be a finite nonnegative real");
  long long max_year = std::numeric_limits<long long>::min();
  for (uint32_t v = 0; v < ids_.size(); ++v) {
    if (is_super_root(v)) continue;
    auto y = year_of(v);
    if (!y) fail(Errc::missing_year, "node " + ids_[v] + " has no year; decay needs one");
    max_year = std::max(max_year, *y);
  }
  long long ref = spec.reference_year.value_or(max_year);
  if (real_node_count() > 0 && ref < max_year)
    fail(Errc::invalid_argument, "decay reference year precedes the newest node year");

  std::vector<IndexedNode> nodes;
  nodes.reserve(ids_.size());
  for (uint32_t v = 0; v < ids_.size(); ++v) nodes.push_back(IndexedNode{ids_[v], year_of(v)});
  std::vector<IndexedEdge> edges;
  edges.reserve(out_edges_.size());
  for (uint32_t v = 0; v < ids_.size(); ++v) {
    bool from_root = is_super_root(v);
    for (const Edge& e : out_edges(v)) {
      // t0 is the citing paper's year: recent citations keep weight.  Super
      // root edges stay at 1.0, and lambda == 0 means exact unit weights.
      double w = 1.0;
      if (!from_root && spec.lambda != 0.0)
        w = std::exp(-spec.lambda * static_cast<double>(ref - years_[e.node]));
      edges.push_back(IndexedEdge{v, e.node, w});
    }
  }
  CitationGraph g = assemble(std::move(nodes), std::move(edges), super_root_);
  for (int k = 0; k < group_kind_count; ++k) g.groups_[k] = groups_[k];
  return g;
}

CitationGraph CitationGraph::snapshot(long long year) const {
  if (super_root_) fail(Errc::invalid_argument, "snapshot expects a raw (unaugmented) graph");
  const std::size_t n = ids_.size();
  std::vector<uint32_t> newidx(n, UINT32_MAX);
  std::vector<IndexedNode> nodes;
  for (uint32_t v = 0; v < n; ++v) {
    auto y = year_of(v);
    if (!y) fail(Errc::missing_year, "node " + ids_[v] + " has no year; snapshot needs one");
    if (*y <= year) {
      newidx[v] = static_cast<uint32_t>(nodes.size());
      nodes.push_back(IndexedNode{ids_[v], y});
    }
  }
  std::vector<IndexedEdge> edges;
  for (uint32_t v = 0; v < n; ++v) {
    if (newidx[v] == UINT32_MAX) continue;
    for (const Edge& e : out_edges(v))
      if (newidx[e.node] != UINT32_MAX)
        edges.push_back(IndexedEdge{newidx[v], newidx[e.node], e.weight});
  }
  CitationGraph g = assemble(std::move(nodes), std::move(edges));
  for (int k = 0; k < group_kind_count; ++k)
    for (const auto& [v, keys] : groups_[k])
      if (newidx[v] != UINT32_MAX) g.groups_[k].emplace(newidx[v], keys);
  return g;
}

}  // namespace kqi
