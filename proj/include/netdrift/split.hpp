#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "netdrift/distances.hpp"
#include "netdrift/errors.hpp"
#include "netdrift/graph.hpp"
#include "netdrift/rng.hpp"

namespace netdrift {

struct NodePair {
  NodeId x = kNoNode;  // min endpoint
  NodeId y = kNoNode;  // max endpoint
};

inline bool operator==(const NodePair& a, const NodePair& b) {
  return a.x == b.x && a.y == b.y;
}
inline bool operator<(const NodePair& a, const NodePair& b) {
  return std::pair(a.x, a.y) < std::pair(b.x, b.y);
}

// Train graph, probe pair set, and candidate universe size. Probe pairs are
// in the train graph's id space; the train graph is connected.
struct SplitResult {
  WeightedGraph train;
  std::vector<NodePair> probe;  // sorted, deduplicated
  std::size_t universe_size = 0;
};

namespace detail {

inline std::size_t unordered_pair_count(std::size_t n) {
  return n * (n - 1) / 2;
}

// Maps held-out interactions into the train graph's id space, dropping pairs
// whose endpoints left the graph and pairs that are already train edges.
inline std::vector<NodePair> probe_pairs_from(
    const WeightedGraph& train, std::span<const TemporalEdge> held_out) {
  std::vector<NodePair> probe;
  for (const TemporalEdge& e : held_out) {
    auto u = train.find(e.u);
    auto v = train.find(e.v);
    if (!u || !v) continue;  // endpoint absent from the training network
    if (train.has_edge(*u, *v)) continue;
    probe.push_back({std::min(*u, *v), std::max(*u, *v)});
  }
  std::sort(probe.begin(), probe.end());
  probe.erase(std::unique(probe.begin(), probe.end()), probe.end());
  return probe;
}

inline std::size_t train_interaction_count(std::size_t total, double train_fraction) {
  if (!(train_fraction > 0.0) || !(train_fraction < 1.0))
    throw DataError("train fraction must be in (0, 1)");
  auto count = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(total)));
  return std::clamp<std::size_t>(count, 1, total - 1);
}

}  // namespace detail

// Orders interactions by timestamp (ties keep input order), aggregates the
// earliest train_fraction into the training graph, and turns the rest into
// probe pairs. The training graph is reduced to its giant component and the
// probe is filtered accordingly.
inline SplitResult temporal_split(std::span<const TemporalEdge> interactions,
                                  double train_fraction,
                                  Aggregation aggregation = Aggregation::kSumWeights) {
  if (interactions.size() < 2)
    throw DataError("temporal split needs at least two interactions");
  bool varied = false;
  for (const TemporalEdge& e : interactions)
    if (e.time != interactions.front().time) {
      varied = true;
      break;
    }
  if (!varied)
    throw DataError(
        "all interaction timestamps are identical; use a random split");

  std::vector<std::size_t> order(interactions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return interactions[a].time < interactions[b].time;
  });

  std::size_t train_count =
      detail::train_interaction_count(interactions.size(), train_fraction);
  std::vector<TemporalEdge> train_part;
  std::vector<TemporalEdge> probe_part;
  train_part.reserve(train_count);
  probe_part.reserve(interactions.size() - train_count);
  for (std::size_t i = 0; i < order.size(); ++i)
    (i < train_count ? train_part : probe_part).push_back(interactions[order[i]]);

  SplitResult split;
  split.train = giant_component(build_graph(train_part, aggregation));
  split.probe = detail::probe_pairs_from(split.train, probe_part);
  split.universe_size = detail::unordered_pair_count(
      static_cast<std::size_t>(split.train.node_count()));
  return split;
}

inline constexpr int kSplitRetryBudget = 200;

// Seeded uniform partition of the simple edges; resampled until the training
// edges form a connected graph spanning every node of the input (so a tree
// input always fails: each of its edges is a bridge).
inline SplitResult random_split(std::span<const TemporalEdge> interactions,
                                double train_fraction, std::uint64_t seed,
                                Aggregation aggregation = Aggregation::kSumWeights) {
  WeightedGraph full = build_graph(interactions, aggregation);
  const auto& edges = full.edges();
  if (edges.size() < 2) throw DataError("random split needs at least two edges");
  std::size_t train_count =
      detail::train_interaction_count(edges.size(), train_fraction);

  Rng rng(seed);
  std::vector<std::size_t> perm(edges.size());
  for (int attempt = 0; attempt < kSplitRetryBudget; ++attempt) {
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[rng.below(i)]);

    std::vector<TemporalEdge> train_part;
    train_part.reserve(train_count);
    for (std::size_t i = 0; i < train_count; ++i) {
      const Edge& e = edges[perm[i]];
      train_part.push_back({full.label(e.u), full.label(e.v), e.weight, e.time});
    }
    WeightedGraph train = build_graph(train_part, Aggregation::kKeepMaxWeight);
    if (train.node_count() != full.node_count() || !is_connected(train)) continue;

    SplitResult split;
    split.train = std::move(train);
    std::vector<TemporalEdge> probe_part;
    for (std::size_t i = train_count; i < perm.size(); ++i) {
      const Edge& e = edges[perm[i]];
      probe_part.push_back({full.label(e.u), full.label(e.v), e.weight, e.time});
    }
    split.probe = detail::probe_pairs_from(split.train, probe_part);
    split.universe_size = detail::unordered_pair_count(
        static_cast<std::size_t>(split.train.node_count()));
    return split;
  }
  throw BudgetError("random split could not produce a connected training "
                    "graph within " +
                    std::to_string(kSplitRetryBudget) + " resamples");
}

inline constexpr int kDeleteUniformRetries = 20;

// Removes round(ratio * M) edges, keeping the graph connected and the node
// set intact. First tries uniform subsets; if none stays connected within the
// retry budget, protects a seeded random spanning tree and deletes uniformly
// among the remaining edges. Deleted edges are discarded (they join neither
// the probe set nor the training edges).
inline WeightedGraph delete_links(const WeightedGraph& train, double ratio,
                                  std::uint64_t seed) {
  if (!(ratio >= 0.0) || ratio >= 1.0)
    throw DataError("deletion ratio must be in [0, 1)");
  const auto& edges = train.edges();
  auto quota = static_cast<std::size_t>(
      std::llround(ratio * static_cast<double>(edges.size())));
  if (quota == 0) return train;

  auto n = static_cast<std::size_t>(train.node_count());
  auto keep_graph = [&](const std::vector<char>& removed) {
    std::vector<Edge> kept;
    kept.reserve(edges.size() - quota);
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (!removed[e]) kept.push_back(edges[e]);
    return WeightedGraph(train.labels(), std::move(kept));
  };

  Rng rng(seed);
  std::vector<std::size_t> perm(edges.size());
  std::vector<char> removed(edges.size(), 0);
  for (int attempt = 0; attempt < kDeleteUniformRetries; ++attempt) {
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[rng.below(i)]);
    std::fill(removed.begin(), removed.end(), 0);
    for (std::size_t i = 0; i < quota; ++i) removed[perm[i]] = 1;
    WeightedGraph candidate = keep_graph(removed);
    if (static_cast<std::size_t>(candidate.node_count()) == n &&
        is_connected(candidate))
      return candidate;
  }

  // Spanning-tree fallback: tree edges of a seeded random edge order are
  // protected, so connectivity is guaranteed whenever the quota is feasible.
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[rng.below(i)]);
  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find_root = [&](NodeId x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  std::vector<std::size_t> deletable;
  for (std::size_t idx : perm) {
    NodeId ru = find_root(edges[idx].u);
    NodeId rv = find_root(edges[idx].v);
    if (ru == rv)
      deletable.push_back(idx);
    else
      parent[static_cast<std::size_t>(ru)] = rv;
  }
  if (quota > deletable.size())
    throw BudgetError("cannot delete " + std::to_string(quota) +
                      " links and keep the graph connected (only " +
                      std::to_string(deletable.size()) +
                      " non-tree links exist)");
  std::fill(removed.begin(), removed.end(), 0);
  for (std::size_t i = 0; i < quota; ++i) removed[deletable[i]] = 1;
  return keep_graph(removed);
}

}  // namespace netdrift
