#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "netdrift/graph.hpp"
#include "netdrift/rng.hpp"

namespace support {

struct E {
  int u;
  int v;
  double w = 1.0;
  double t = 0.0;
};

inline netdrift::WeightedGraph make_graph(const std::vector<E>& edges) {
  std::vector<netdrift::TemporalEdge> tes;
  tes.reserve(edges.size());
  for (const E& e : edges)
    tes.push_back({std::to_string(e.u), std::to_string(e.v), e.w, e.t});
  return netdrift::build_graph(tes, netdrift::Aggregation::kSumWeights);
}

inline netdrift::NodeId id_of(const netdrift::WeightedGraph& g, int label) {
  return *g.find(std::to_string(label));
}

// Random connected graph: a random spanning tree plus extra random edges.
// Weights in [0.5, 3), timestamps in [0, 100).
inline netdrift::WeightedGraph random_connected_graph(netdrift::Rng& rng, int nodes,
                                                      double extra_edge_prob,
                                                      bool unit_weights = false) {
  std::vector<support::E> edges;
  for (int i = 1; i < nodes; ++i) {
    int parent = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
    edges.push_back({parent, i, unit_weights ? 1.0 : rng.range(0.5, 3.0),
                     rng.range(0.0, 100.0)});
  }
  for (int i = 0; i < nodes; ++i)
    for (int j = i + 1; j < nodes; ++j) {
      bool in_tree = false;
      for (const E& e : edges)
        if ((e.u == i && e.v == j) || (e.u == j && e.v == i)) in_tree = true;
      if (in_tree) continue;
      if (rng.unit() < extra_edge_prob)
        edges.push_back({i, j, unit_weights ? 1.0 : rng.range(0.5, 3.0),
                         rng.range(0.0, 100.0)});
    }
  return make_graph(edges);
}

// Random graph with no connectivity guarantee; may have isolated components.
inline netdrift::WeightedGraph random_graph(netdrift::Rng& rng, int nodes,
                                            double edge_prob,
                                            bool unit_weights = false) {
  std::vector<support::E> edges;
  for (int i = 0; i < nodes; ++i)
    for (int j = i + 1; j < nodes; ++j)
      if (rng.unit() < edge_prob)
        edges.push_back({i, j, unit_weights ? 1.0 : rng.range(0.5, 3.0),
                         rng.range(0.0, 100.0)});
  if (edges.empty()) edges.push_back({0, 1, 1.0, 0.0});
  return make_graph(edges);
}

inline double rel_diff(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

}  // namespace support
