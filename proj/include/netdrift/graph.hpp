#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netdrift/errors.hpp"

namespace netdrift {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

// One recorded interaction between two labeled endpoints.
struct TemporalEdge {
  std::string u;
  std::string v;
  double weight = 1.0;
  double time = 0.0;
};

// Aggregation of repeated interactions of the same unordered pair into one
// simple edge.
enum class Aggregation {
  kSumWeights,
  kCountInteractions,
  kKeepMaxWeight,
};

struct HalfEdge {
  NodeId to = kNoNode;
  double weight = 0.0;
  double time = 0.0;
  std::int32_t edge_id = -1;  // index into the canonical edge list
};

// Canonical undirected edge, u < v by internal id.
struct Edge {
  NodeId u = kNoNode;
  NodeId v = kNoNode;
  double weight = 0.0;
  double time = 0.0;
};

inline std::uint64_t pair_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// Simple undirected weighted graph with a latest-interaction timestamp per
// edge. Nodes carry external string labels mapped to dense internal ids.
// Immutable after construction; all "mutation" builds a new graph.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // labels[i] is node i's external token; edges are canonical (u < v).
  WeightedGraph(std::vector<std::string> labels, std::vector<Edge> edges)
      : labels_(std::move(labels)), edges_(std::move(edges)) {
    index_.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i)
      index_.emplace(labels_[i], static_cast<NodeId>(i));
    if (index_.size() != labels_.size())
      throw DataError("duplicate node label in graph construction");
    adjacency_.assign(labels_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Edge& ed = edges_[e];
      if (ed.u == ed.v) throw DataError("self-loop in graph construction");
      if (ed.u < 0 || ed.v < 0 || ed.u >= node_count() || ed.v >= node_count())
        throw DataError("edge endpoint out of range");
      if (!(ed.weight >= 0.0)) throw DataError("negative edge weight");
      if (!std::isfinite(ed.time)) throw DataError("non-finite edge timestamp");
      auto id = static_cast<std::int32_t>(e);
      adjacency_[ed.u].push_back({ed.v, ed.weight, ed.time, id});
      adjacency_[ed.v].push_back({ed.u, ed.weight, ed.time, id});
    }
    strength_.assign(labels_.size(), 0.0);
    for (NodeId x = 0; x < node_count(); ++x) {
      auto& nb = adjacency_[x];
      std::sort(nb.begin(), nb.end(),
                [](const HalfEdge& a, const HalfEdge& b) { return a.to < b.to; });
      for (std::size_t i = 1; i < nb.size(); ++i)
        if (nb[i].to == nb[i - 1].to)
          throw DataError("multi-edge in graph construction");
      double s = 0.0;
      for (const HalfEdge& h : nb) s += h.weight;
      strength_[x] = s;
    }
  }

  NodeId node_count() const { return static_cast<NodeId>(labels_.size()); }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const HalfEdge> neighbors(NodeId x) const {
    check_node(x);
    return adjacency_[static_cast<std::size_t>(x)];
  }

  int degree(NodeId x) const {
    check_node(x);
    return static_cast<int>(adjacency_[static_cast<std::size_t>(x)].size());
  }

  // Node strength s(x) = sum of incident edge weights, cached at build time.
  double strength(NodeId x) const {
    check_node(x);
    return strength_[static_cast<std::size_t>(x)];
  }

  const std::string& label(NodeId x) const {
    check_node(x);
    return labels_[static_cast<std::size_t>(x)];
  }

  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<NodeId> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const HalfEdge* find_half_edge(NodeId x, NodeId y) const {
    check_node(x);
    check_node(y);
    const auto& nb = adjacency_[static_cast<std::size_t>(x)];
    auto it = std::lower_bound(
        nb.begin(), nb.end(), y,
        [](const HalfEdge& h, NodeId v) { return h.to < v; });
    if (it == nb.end() || it->to != y) return nullptr;
    return &*it;
  }

  bool has_edge(NodeId x, NodeId y) const { return find_half_edge(x, y) != nullptr; }

  // w(x, y); 0 when the pair is not an edge.
  double weight(NodeId x, NodeId y) const {
    const HalfEdge* h = find_half_edge(x, y);
    return h ? h->weight : 0.0;
  }

  const std::vector<Edge>& edges() const { return edges_; }

  // Same topology and timestamps, new per-edge weights (indexed by edge id).
  WeightedGraph with_edge_weights(const std::vector<double>& weights) const {
    if (weights.size() != edges_.size())
      throw DataError("weight vector size does not match edge count");
    std::vector<Edge> next = edges_;
    for (std::size_t e = 0; e < next.size(); ++e) {
      if (!(weights[e] >= 0.0)) throw DataError("negative edge weight");
      next[e].weight = weights[e];
    }
    return WeightedGraph(labels_, std::move(next));
  }

  bool contains(NodeId x) const { return x >= 0 && x < node_count(); }

  void check_node(NodeId x) const {
    if (!contains(x)) throw DataError("unknown node id " + std::to_string(x));
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::vector<HalfEdge>> adjacency_;
  std::vector<double> strength_;
  std::vector<Edge> edges_;
};

// Aggregates interactions into a simple graph. One edge per unordered pair;
// the edge timestamp is the latest constituent interaction time.
inline WeightedGraph build_graph(std::span<const TemporalEdge> interactions,
                                 Aggregation aggregation = Aggregation::kSumWeights) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  auto intern = [&](const std::string& tok) {
    auto [it, inserted] = ids.emplace(tok, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(tok);
    return it->second;
  };

  struct Accum {
    double weight;
    double time;
  };
  std::unordered_map<std::uint64_t, Accum> acc;
  std::vector<std::uint64_t> order;  // first-appearance order of simple edges
  for (const TemporalEdge& te : interactions) {
    if (te.u == te.v) throw DataError("self-loop interaction " + te.u + "-" + te.v);
    if (!(te.weight >= 0.0)) throw DataError("negative interaction weight");
    if (!std::isfinite(te.time)) throw DataError("non-finite interaction timestamp");
    NodeId a = intern(te.u);
    NodeId b = intern(te.v);
    std::uint64_t key = pair_key(a, b);
    auto [it, inserted] = acc.emplace(key, Accum{0.0, te.time});
    if (inserted) order.push_back(key);
    Accum& slot = it->second;
    switch (aggregation) {
      case Aggregation::kSumWeights: slot.weight += te.weight; break;
      case Aggregation::kCountInteractions: slot.weight += 1.0; break;
      case Aggregation::kKeepMaxWeight:
        slot.weight = inserted ? te.weight : std::max(slot.weight, te.weight);
        break;
    }
    slot.time = std::max(slot.time, te.time);
  }

  std::vector<Edge> edges;
  edges.reserve(order.size());
  for (std::uint64_t key : order) {
    const Accum& slot = acc.at(key);
    auto u = static_cast<NodeId>(key >> 32);
    auto v = static_cast<NodeId>(key & 0xffffffffULL);
    edges.push_back({u, v, slot.weight, slot.time});
  }
  return WeightedGraph(std::move(labels), std::move(edges));
}

// Induced subgraph on a node subset (given as sorted internal ids of g).
// Internal ids are re-densified; labels are preserved.
inline WeightedGraph induced_subgraph(const WeightedGraph& g,
                                      const std::vector<NodeId>& nodes) {
  std::vector<NodeId> remap(static_cast<std::size_t>(g.node_count()), kNoNode);
  std::vector<std::string> labels;
  labels.reserve(nodes.size());
  for (NodeId x : nodes) {
    g.check_node(x);
    remap[static_cast<std::size_t>(x)] = static_cast<NodeId>(labels.size());
    labels.push_back(g.label(x));
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    NodeId u = remap[static_cast<std::size_t>(e.u)];
    NodeId v = remap[static_cast<std::size_t>(e.v)];
    if (u == kNoNode || v == kNoNode) continue;
    if (u > v) std::swap(u, v);
    edges.push_back({u, v, e.weight, e.time});
  }
  return WeightedGraph(std::move(labels), std::move(edges));
}

// Connected components as sorted id lists, ordered by their minimum node id.
inline std::vector<std::vector<NodeId>> connected_components(const WeightedGraph& g) {
  std::vector<std::vector<NodeId>> components;
  std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < g.node_count(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<NodeId> comp;
    stack.push_back(start);
    seen[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (const HalfEdge& h : g.neighbors(x)) {
        if (!seen[static_cast<std::size_t>(h.to)]) {
          seen[static_cast<std::size_t>(h.to)] = 1;
          stack.push_back(h.to);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

// Largest connected component; size ties broken by smallest minimum node id.
inline WeightedGraph giant_component(const WeightedGraph& g) {
  if (g.node_count() == 0) return g;
  auto components = connected_components(g);
  const std::vector<NodeId>* best = &components.front();
  for (const auto& comp : components)
    if (comp.size() > best->size()) best = &comp;
  return induced_subgraph(g, *best);
}

// All edges of g with both endpoints in {j} ∪ Γ(j).
inline std::vector<Edge> ego_edge_set(const WeightedGraph& g, NodeId j) {
  g.check_node(j);
  auto nb = g.neighbors(j);
  std::vector<Edge> out;
  out.reserve(nb.size());
  for (const HalfEdge& h : nb) {
    NodeId u = std::min(j, h.to);
    NodeId v = std::max(j, h.to);
    out.push_back({u, v, h.weight, h.time});
  }
  // Edges among the neighbors themselves.
  for (const HalfEdge& a : nb) {
    for (const HalfEdge& b : g.neighbors(a.to)) {
      if (b.to <= a.to || b.to == j) continue;
      if (g.has_edge(j, b.to))
        out.push_back({a.to, b.to, b.weight, b.time});
    }
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  return out;
}

}  // namespace netdrift
