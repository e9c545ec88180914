#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netdrift/errors.hpp"
#include "netdrift/graph.hpp"
#include "netdrift/rng.hpp"

namespace netdrift {

// Preferential-attachment interaction stream for self-contained experiments.
//
// Growth rule: nodes are labeled "0".."nodes-1"; node 1 starts connected to
// node 0; each later node i attaches to min(edges_per_node, i) distinct
// existing nodes drawn preferentially by degree. With internal_fraction > 0,
// re-interactions between existing node pairs (both endpoints preferential)
// are interleaved at that rate, so late timestamps also touch old pairs and
// a temporal split keeps a non-empty probe set. Timestamps are the insertion
// index; all weights are 1. Total interactions for internal_fraction = 0:
// 1 + sum_i min(edges_per_node, i).
inline std::vector<TemporalEdge> generate_synthetic(int nodes, int edges_per_node,
                                                    std::uint64_t seed,
                                                    double internal_fraction = 0.0) {
  if (nodes < 3) throw DataError("synthetic graph needs at least 3 nodes");
  if (edges_per_node < 1) throw DataError("edges_per_node must be >= 1");
  if (!(internal_fraction >= 0.0) || internal_fraction >= 1.0)
    throw DataError("internal_fraction must be in [0, 1)");

  Rng rng(seed);
  std::vector<TemporalEdge> out;
  std::vector<NodeId> endpoint_pool;  // one entry per half-edge; degree-proportional
  double next_time = 0.0;
  auto emit = [&](NodeId a, NodeId b) {
    out.push_back({std::to_string(a), std::to_string(b), 1.0, next_time});
    next_time += 1.0;
    endpoint_pool.push_back(a);
    endpoint_pool.push_back(b);
  };

  emit(0, 1);
  // Rate accumulator: internal interactions per attachment edge.
  double internal_budget = 0.0;
  double per_edge_rate = internal_fraction / (1.0 - internal_fraction);
  std::vector<char> taken(static_cast<std::size_t>(nodes), 0);
  std::vector<NodeId> picked;
  for (NodeId i = 2; i < nodes; ++i) {
    int quota = std::min<int>(edges_per_node, i);
    picked.clear();
    for (int q = 0; q < quota; ++q) {
      NodeId target;
      do {
        target = endpoint_pool[rng.below(endpoint_pool.size())];
      } while (taken[static_cast<std::size_t>(target)]);
      taken[static_cast<std::size_t>(target)] = 1;
      picked.push_back(target);
    }
    for (NodeId target : picked) {
      taken[static_cast<std::size_t>(target)] = 0;
      emit(i, target);
    }
    internal_budget += quota * per_edge_rate;
    while (internal_budget >= 1.0) {
      internal_budget -= 1.0;
      NodeId a = endpoint_pool[rng.below(endpoint_pool.size())];
      NodeId b;
      do {
        b = endpoint_pool[rng.below(endpoint_pool.size())];
      } while (b == a);
      emit(a, b);
    }
  }
  return out;
}

}  // namespace netdrift
