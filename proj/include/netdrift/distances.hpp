#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "netdrift/errors.hpp"
#include "netdrift/graph.hpp"
#include "netdrift/parallel.hpp"

namespace netdrift {

inline constexpr int kUnreachable = -1;

// BFS hop distances from source; kUnreachable for nodes in other components.
// max_depth < 0 means unbounded.
inline void bfs_hops(const WeightedGraph& g, NodeId source, std::vector<int>& dist,
                     int max_depth = -1) {
  g.check_node(source);
  dist.assign(static_cast<std::size_t>(g.node_count()), kUnreachable);
  std::vector<NodeId> frontier{source};
  std::vector<NodeId> next;
  dist[static_cast<std::size_t>(source)] = 0;
  int depth = 0;
  while (!frontier.empty() && (max_depth < 0 || depth < max_depth)) {
    ++depth;
    next.clear();
    for (NodeId x : frontier) {
      for (const HalfEdge& h : g.neighbors(x)) {
        auto idx = static_cast<std::size_t>(h.to);
        if (dist[idx] == kUnreachable) {
          dist[idx] = depth;
          next.push_back(h.to);
        }
      }
    }
    frontier.swap(next);
  }
}

// Unweighted shortest hop count; nullopt when y is unreachable from x.
inline std::optional<int> hop_distance(const WeightedGraph& g, NodeId x, NodeId y) {
  g.check_node(x);
  g.check_node(y);
  if (x == y) return 0;
  std::vector<int> dist;
  bfs_hops(g, x, dist);
  int d = dist[static_cast<std::size_t>(y)];
  if (d == kUnreachable) return std::nullopt;
  return d;
}

inline bool is_connected(const WeightedGraph& g) {
  if (g.node_count() <= 1) return true;
  std::vector<int> dist;
  bfs_hops(g, 0, dist);
  for (int d : dist)
    if (d == kUnreachable) return false;
  return true;
}

namespace detail {

// Mean hop distance over reachable unordered pairs. Returns 0 when no such
// pair exists. Used for the structure-dependent path-range cap, which must be
// defined for any graph.
inline double mean_distance_reachable(const WeightedGraph& g, int workers = 1) {
  NodeId n = g.node_count();
  if (n < 2) return 0.0;
  std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n), 0);
  parallel_chunks(static_cast<std::size_t>(n), workers,
                  [&](int, std::size_t b, std::size_t e) {
    std::vector<int> dist;
    for (std::size_t x = b; x < e; ++x) {
      bfs_hops(g, static_cast<NodeId>(x), dist);
      double sum = 0.0;
      std::uint64_t cnt = 0;
      for (std::size_t y = 0; y < dist.size(); ++y) {
        if (y == x || dist[y] == kUnreachable) continue;
        sum += dist[y];
        ++cnt;
      }
      sums[x] = sum;
      counts[x] = cnt;
    }
  });
  double total = 0.0;
  std::uint64_t pairs = 0;
  for (std::size_t x = 0; x < sums.size(); ++x) {
    total += sums[x];
    pairs += counts[x];
  }
  if (pairs == 0) return 0.0;
  return total / static_cast<double>(pairs);  // both directions cancel
}

}  // namespace detail

// Average hop distance over all unordered node pairs of a connected graph.
inline double mean_shortest_distance(const WeightedGraph& g, int workers = 1) {
  if (g.node_count() < 2)
    throw DataError("mean shortest distance needs at least two nodes");
  if (!is_connected(g))
    throw DataError(
        "graph is disconnected; take the giant component before computing "
        "mean shortest distance");
  return detail::mean_distance_reachable(g, workers);
}

}  // namespace netdrift
