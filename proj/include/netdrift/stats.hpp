#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "netdrift/distances.hpp"
#include "netdrift/graph.hpp"

namespace netdrift {

// Structure summary of a (giant-component) graph.
struct NetworkStats {
  std::int64_t nodes = 0;
  std::int64_t links = 0;
  double mean_degree = 0.0;
  double mean_distance = 0.0;
  double clustering = 0.0;           // mean local clustering coefficient
  double weighted_clustering = 0.0;  // Barrat per-node coefficient, averaged
  double assortativity = 0.0;        // Pearson degree-degree correlation over edges
  double heterogeneity = 0.0;        // <k^2> / <k>^2
};

namespace detail {

// Per-node triangle count and Barrat weighted clustering numerator.
inline void local_clustering(const WeightedGraph& g, NodeId x, double& plain,
                             double& weighted) {
  int k = g.degree(x);
  plain = 0.0;
  weighted = 0.0;
  if (k < 2) return;
  auto nb = g.neighbors(x);
  double closed_weight = 0.0;  // sum over ordered closed pairs of (w_xj + w_xh)/2
  std::int64_t closed = 0;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      if (!g.has_edge(nb[i].to, nb[j].to)) continue;
      ++closed;
      closed_weight += nb[i].weight + nb[j].weight;  // ordered pairs: 2 * (wi+wj)/2
    }
  }
  double wedges = 0.5 * k * (k - 1);
  plain = static_cast<double>(closed) / wedges;
  double s = g.strength(x);
  if (s > 0.0) weighted = closed_weight / (s * (k - 1));
}

}  // namespace detail

// N, M, <k>, <d>, C, C_w, r, H for a connected graph.
inline NetworkStats network_stats(const WeightedGraph& g, int workers = 1) {
  NetworkStats st;
  st.nodes = g.node_count();
  st.links = static_cast<std::int64_t>(g.edge_count());
  if (st.nodes == 0) return st;
  st.mean_degree = 2.0 * static_cast<double>(st.links) / static_cast<double>(st.nodes);
  if (st.nodes >= 2) st.mean_distance = mean_shortest_distance(g, workers);

  double c_sum = 0.0;
  double cw_sum = 0.0;
  double k_sum = 0.0;
  double k2_sum = 0.0;
  for (NodeId x = 0; x < g.node_count(); ++x) {
    double c = 0.0, cw = 0.0;
    detail::local_clustering(g, x, c, cw);
    c_sum += c;
    cw_sum += cw;
    double k = g.degree(x);
    k_sum += k;
    k2_sum += k * k;
  }
  double n = static_cast<double>(st.nodes);
  st.clustering = c_sum / n;
  st.weighted_clustering = cw_sum / n;
  double mean_k = k_sum / n;
  st.heterogeneity = mean_k > 0.0 ? (k2_sum / n) / (mean_k * mean_k) : 0.0;

  // Newman's r: Pearson correlation of endpoint degrees over edges, both
  // orientations. 0 when the degree variance vanishes (regular graphs).
  double sum_prod = 0.0, sum_half = 0.0, sum_sq = 0.0;
  for (const Edge& e : g.edges()) {
    double ju = g.degree(e.u);
    double jv = g.degree(e.v);
    sum_prod += ju * jv;
    sum_half += 0.5 * (ju + jv);
    sum_sq += 0.5 * (ju * ju + jv * jv);
  }
  double m = static_cast<double>(st.links);
  if (m > 0) {
    double mean_half = sum_half / m;
    double num = sum_prod / m - mean_half * mean_half;
    double den = sum_sq / m - mean_half * mean_half;
    st.assortativity = den > 1e-15 ? num / den : 0.0;
  }
  return st;
}

}  // namespace netdrift
