#pragma once

#include <cstdint>
#include <vector>

#include "netdrift/distances.hpp"
#include "netdrift/errors.hpp"
#include "netdrift/graph.hpp"

namespace netdrift {

inline constexpr int kMinWalkLength = 2;
inline constexpr int kMaxWalkLength = 5;

namespace detail {

// Rows of W^1 .. W^max_length from one source: walk_rows.row(l)[y] is the
// total weight (product of edge weights, summed over walks) of length-l walks
// from the source to y. Sparse neighbor expansion; W is never materialized.
class WalkRows {
 public:
  void compute(const WeightedGraph& g, NodeId source, int max_length) {
    auto n = static_cast<std::size_t>(g.node_count());
    auto levels = static_cast<std::size_t>(max_length) + 1;
    if (rows_.size() < levels) rows_.resize(levels);
    for (std::size_t l = 0; l < levels; ++l) rows_[l].assign(n, 0.0);
    computed_ = max_length;
    rows_[0][static_cast<std::size_t>(source)] = 1.0;
    for (int l = 1; l <= max_length; ++l) {
      const std::vector<double>& prev = rows_[static_cast<std::size_t>(l - 1)];
      std::vector<double>& cur = rows_[static_cast<std::size_t>(l)];
      for (std::size_t u = 0; u < n; ++u) {
        double value = prev[u];
        if (value == 0.0) continue;
        for (const HalfEdge& h : g.neighbors(static_cast<NodeId>(u)))
          cur[static_cast<std::size_t>(h.to)] += value * h.weight;
      }
    }
  }

  const std::vector<double>& row(int length) const {
    return rows_[static_cast<std::size_t>(length)];
  }

  int max_length() const { return computed_; }

 private:
  std::vector<std::vector<double>> rows_;
  int computed_ = -1;
};

// Single-source BFS with shortest-path bookkeeping:
//   dist[y]   hop distance (kUnreachable if none),
//   sigma[y]  number of shortest paths source -> y,
//   interior_strength[y]  sum over those paths of the strengths of their
//                         interior nodes (every occurrence counted).
// The interior-strength recurrence extends each shortest path to a
// predecessor p by the edge p->y, adding p itself as a new interior node
// unless p is the source.
struct ShortestPathDp {
  std::vector<int> dist;
  std::vector<double> sigma;
  std::vector<double> interior_strength;

  void compute(const WeightedGraph& g, NodeId source, int max_depth) {
    auto n = static_cast<std::size_t>(g.node_count());
    dist.assign(n, kUnreachable);
    sigma.assign(n, 0.0);
    interior_strength.assign(n, 0.0);
    dist[static_cast<std::size_t>(source)] = 0;
    sigma[static_cast<std::size_t>(source)] = 1.0;
    std::vector<NodeId> frontier{source};
    std::vector<NodeId> next;
    int depth = 0;
    while (!frontier.empty() && depth < max_depth) {
      ++depth;
      next.clear();
      for (NodeId p : frontier) {
        auto pi = static_cast<std::size_t>(p);
        double hop_interior =
            p == source ? 0.0 : sigma[pi] * g.strength(p);
        for (const HalfEdge& h : g.neighbors(p)) {
          auto yi = static_cast<std::size_t>(h.to);
          if (dist[yi] == kUnreachable) {
            dist[yi] = depth;
            next.push_back(h.to);
          }
          if (dist[yi] == depth) {
            sigma[yi] += sigma[pi];
            interior_strength[yi] += interior_strength[pi] + hop_interior;
          }
        }
      }
      frontier.swap(next);
    }
  }

  // Mean strength of the interior-node multiset over all shortest paths to y.
  // 1.0 when the multiset is empty (adjacent pair), 0.0 when unreachable.
  double mean_interior_strength(NodeId y) const {
    auto yi = static_cast<std::size_t>(y);
    int s = dist[yi];
    if (s == kUnreachable || s == 0) return 0.0;
    if (s == 1) return 1.0;
    return interior_strength[yi] / (sigma[yi] * static_cast<double>(s - 1));
  }
};

}  // namespace detail

// (W^length)[x][y]: total weight of walks of the given length between x and y.
// Always expanded from the smaller endpoint, so the symmetry
// walk_weight(x, y, L) == walk_weight(y, x, L) holds bit for bit.
inline double walk_weight(const WeightedGraph& g, NodeId x, NodeId y, int length) {
  g.check_node(x);
  g.check_node(y);
  if (x == y) throw DataError("walk_weight endpoints must differ");
  if (length < kMinWalkLength || length > kMaxWalkLength)
    throw DataError("walk length " + std::to_string(length) +
                    " outside supported range [" + std::to_string(kMinWalkLength) +
                    ", " + std::to_string(kMaxWalkLength) + "]");
  detail::WalkRows rows;
  rows.compute(g, std::min(x, y), length);
  return rows.row(length)[static_cast<std::size_t>(std::max(x, y))];
}

}  // namespace netdrift
