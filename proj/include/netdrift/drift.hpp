#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "netdrift/errors.hpp"
#include "netdrift/graph.hpp"
#include "netdrift/parallel.hpp"

namespace netdrift {

enum class Symmetrization {
  kAverage,   // new w = w + (delta(a->b) + delta(b->a)) / 2
  kOneSided,  // diagnostic: new w = w + delta(min_id -> max_id)
};

enum class TemporalMode {
  kUseTimestamps,
  kUniform,  // recency factor disabled; every neighbor gets PI = 0.5
};

struct DriftConfig {
  int iterations = 3;
  Symmetrization symmetrization = Symmetrization::kAverage;
  TemporalMode temporal = TemporalMode::kUseTimestamps;
};

inline constexpr int kMaxDriftIterations = 50;

// Per-neighbor influence quantities for one center node.
struct InfluenceField {
  NodeId center = kNoNode;
  std::vector<NodeId> neighbors;       // ascending id order
  std::vector<double> attractiveness;  // AI, fused inside connected components
  std::vector<double> temporal;        // PI in (0, 1)
  std::vector<double> combined;        // A in [0, 1] after double normalization
};

// Total edge weight of the ego network of j ({j} plus its neighbors).
inline double attractiveness(const WeightedGraph& g, NodeId j) {
  double total = 0.0;
  for (const Edge& e : ego_edge_set(g, j)) total += e.weight;
  return total;
}

// Connected components of the subgraph induced on Gamma(a), center excluded.
// Components are sorted internally and ordered by smallest member.
inline std::vector<std::vector<NodeId>> neighbor_components(const WeightedGraph& g,
                                                            NodeId a) {
  g.check_node(a);
  auto nb = g.neighbors(a);
  std::vector<NodeId> members;
  members.reserve(nb.size());
  for (const HalfEdge& h : nb) members.push_back(h.to);

  std::unordered_set<NodeId> in_nbhd(members.begin(), members.end());
  std::vector<std::vector<NodeId>> components;
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> stack;
  for (NodeId start : members) {
    if (seen.count(start)) continue;
    std::vector<NodeId> comp;
    stack.push_back(start);
    seen.insert(start);
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (const HalfEdge& h : g.neighbors(x)) {
        if (h.to == a || !in_nbhd.count(h.to) || seen.count(h.to)) continue;
        seen.insert(h.to);
        stack.push_back(h.to);
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

// Attractiveness of the members of a connected-neighbor set, fused through
// the virtual node: AI(i) = |NC| * AI(f) * AI'(i) / sum AI'(j), where AI(f)
// totals the deduplicated union of the members' ego edge sets. Results are
// (neighbor, value) pairs in ascending id order.
inline std::vector<std::pair<NodeId, double>> fused_attractiveness(
    const WeightedGraph& g, NodeId a, const std::vector<NodeId>& component) {
  g.check_node(a);
  std::unordered_set<std::int32_t> edge_ids;
  double fused_total = 0.0;
  std::vector<double> independent;
  independent.reserve(component.size());
  for (NodeId m : component) {
    double own = 0.0;
    for (const HalfEdge& h : g.neighbors(m)) {
      own += h.weight;
      if (edge_ids.insert(h.edge_id).second) fused_total += h.weight;
    }
    for (const HalfEdge& x : g.neighbors(m)) {
      for (const HalfEdge& y : g.neighbors(x.to)) {
        if (y.to <= x.to || y.to == m) continue;
        if (!g.has_edge(m, y.to)) continue;
        own += y.weight;
        if (edge_ids.insert(y.edge_id).second) fused_total += y.weight;
      }
    }
    independent.push_back(own);
  }
  double independent_sum = 0.0;
  for (double v : independent) independent_sum += v;

  std::vector<std::pair<NodeId, double>> out;
  out.reserve(component.size());
  double count = static_cast<double>(component.size());
  for (std::size_t i = 0; i < component.size(); ++i) {
    double share = independent_sum > 0.0 ? independent[i] / independent_sum
                                         : 1.0 / count;
    out.emplace_back(component[i], count * fused_total * share);
  }
  return out;
}

namespace detail {

inline double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace detail

// Recency importance of each incident edge of a: logistic((t - mean t) /
// (2 dt)) with dt = (max t - min t) / |N(a)|. Collapses to 0.5 for all
// neighbors when the timestamps carry no spread or the mode is uniform.
// Results in ascending neighbor id order.
inline std::vector<std::pair<NodeId, double>> temporal_importance(
    const WeightedGraph& g, NodeId a,
    TemporalMode mode = TemporalMode::kUseTimestamps) {
  g.check_node(a);
  auto nb = g.neighbors(a);
  if (nb.empty()) throw DataError("temporal importance needs at least one neighbor");
  std::vector<std::pair<NodeId, double>> out;
  out.reserve(nb.size());
  double t_min = nb.front().time, t_max = nb.front().time, t_sum = 0.0;
  for (const HalfEdge& h : nb) {
    t_min = std::min(t_min, h.time);
    t_max = std::max(t_max, h.time);
    t_sum += h.time;
  }
  if (mode == TemporalMode::kUniform || t_max == t_min) {
    for (const HalfEdge& h : nb) out.emplace_back(h.to, 0.5);
    return out;
  }
  double mean = t_sum / static_cast<double>(nb.size());
  double dt = (t_max - t_min) / static_cast<double>(nb.size());
  for (const HalfEdge& h : nb)
    out.emplace_back(h.to, detail::logistic((h.time - mean) / (2.0 * dt)));
  return out;
}

// Spatial-temporal influence of each neighbor of a: attractiveness (fused
// within connected-neighbor sets) and recency, each normalized by its
// maximum over the neighborhood.
inline InfluenceField combined_influence(
    const WeightedGraph& g, NodeId a,
    TemporalMode mode = TemporalMode::kUseTimestamps) {
  g.check_node(a);
  auto nb = g.neighbors(a);
  if (nb.empty()) throw DataError("combined influence needs at least one neighbor");

  InfluenceField field;
  field.center = a;
  field.neighbors.reserve(nb.size());
  for (const HalfEdge& h : nb) field.neighbors.push_back(h.to);

  std::vector<double> ai(nb.size(), 0.0);
  auto slot_of = [&](NodeId id) {
    auto it = std::lower_bound(field.neighbors.begin(), field.neighbors.end(), id);
    return static_cast<std::size_t>(it - field.neighbors.begin());
  };
  for (const auto& component : neighbor_components(g, a)) {
    if (component.size() == 1) {
      ai[slot_of(component.front())] = attractiveness(g, component.front());
    } else {
      for (const auto& [id, value] : fused_attractiveness(g, a, component))
        ai[slot_of(id)] = value;
    }
  }
  field.attractiveness = ai;

  field.temporal.resize(nb.size());
  auto pi = temporal_importance(g, a, mode);
  for (std::size_t i = 0; i < pi.size(); ++i) field.temporal[i] = pi[i].second;

  double ai_max = *std::max_element(ai.begin(), ai.end());
  double pi_max = *std::max_element(field.temporal.begin(), field.temporal.end());
  field.combined.resize(nb.size());
  for (std::size_t i = 0; i < nb.size(); ++i) {
    double spatial = ai_max > 0.0 ? ai[i] / ai_max : 1.0;
    field.combined[i] = spatial * (field.temporal[i] / pi_max);
  }
  return field;
}

// Force-difference weight change toward each neighbor: the current weight
// mass of a is redistributed in proportion to normalized influence.
// (neighbor, delta) pairs in ascending id order.
inline std::vector<std::pair<NodeId, double>> drift_delta(
    const WeightedGraph& g, NodeId a,
    TemporalMode mode = TemporalMode::kUseTimestamps) {
  g.check_node(a);
  auto nb = g.neighbors(a);
  if (nb.empty()) throw DataError("drift delta needs at least one neighbor");
  InfluenceField field = combined_influence(g, a, mode);

  double weight_sum = 0.0;
  for (const HalfEdge& h : nb) weight_sum += h.weight;
  double influence_sum = 0.0;
  for (double v : field.combined) influence_sum += v;

  std::vector<std::pair<NodeId, double>> out;
  out.reserve(nb.size());
  for (std::size_t i = 0; i < nb.size(); ++i) {
    double delta = 0.0;
    if (weight_sum > 0.0 && influence_sum > 0.0)
      delta = weight_sum * (field.combined[i] / influence_sum) - nb[i].weight;
    out.emplace_back(nb[i].to, delta);
  }
  return out;
}

namespace detail {

// Independent ego-network attractiveness of every node in one pass:
// AI0(j) = s(j) + sum of w(u,v) over edges whose endpoints are both
// neighbors of j, found by intersecting the endpoint neighborhoods.
inline std::vector<double> all_attractiveness(const WeightedGraph& g) {
  auto n = static_cast<std::size_t>(g.node_count());
  std::vector<double> ai(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) ai[j] = g.strength(static_cast<NodeId>(j));
  for (const Edge& e : g.edges()) {
    auto nu = g.neighbors(e.u);
    auto nv = g.neighbors(e.v);
    std::size_t i = 0, k = 0;
    while (i < nu.size() && k < nv.size()) {
      if (nu[i].to < nv[k].to) {
        ++i;
      } else if (nu[i].to > nv[k].to) {
        ++k;
      } else {
        ai[static_cast<std::size_t>(nu[i].to)] += e.weight;
        ++i;
        ++k;
      }
    }
  }
  return ai;
}

// Reusable per-worker scratch for drift rounds. Stamp arrays make node and
// edge membership tests O(1) without clearing between centers.
struct DriftScratch {
  std::vector<std::int32_t> node_stamp;
  std::vector<std::int32_t> node_comp;  // component index per stamped neighbor
  std::vector<std::int32_t> edge_stamp;
  std::int32_t tick = 0;
  std::vector<NodeId> queue;
  std::vector<double> ai, pi, combined;

  void prepare(const WeightedGraph& g) {
    node_stamp.assign(static_cast<std::size_t>(g.node_count()), -1);
    node_comp.assign(static_cast<std::size_t>(g.node_count()), -1);
    edge_stamp.assign(g.edge_count(), -1);
    tick = 0;
  }
};

// Per-neighbor deltas for one center, using precomputed independent
// attractiveness. Same quantities as drift_delta, organized for one pass
// over large neighborhoods.
inline void center_deltas(const WeightedGraph& g, NodeId center,
                          const std::vector<double>& ai0, TemporalMode mode,
                          DriftScratch& ws, std::vector<double>& deltas_out) {
  auto nb = g.neighbors(center);
  std::size_t deg = nb.size();
  deltas_out.assign(deg, 0.0);
  if (deg == 0) return;

  // Mark the open neighborhood and find its connected components.
  std::int32_t mark = ws.tick++;
  for (std::size_t i = 0; i < deg; ++i) {
    ws.node_stamp[static_cast<std::size_t>(nb[i].to)] = mark;
    ws.node_comp[static_cast<std::size_t>(nb[i].to)] = -1;
  }
  std::int32_t comp_count = 0;
  std::vector<std::int32_t> comp_size;
  for (std::size_t i = 0; i < deg; ++i) {
    auto root = static_cast<std::size_t>(nb[i].to);
    if (ws.node_comp[root] >= 0) continue;
    std::int32_t comp = comp_count++;
    comp_size.push_back(0);
    ws.node_comp[root] = comp;
    ws.queue.clear();
    ws.queue.push_back(nb[i].to);
    while (!ws.queue.empty()) {
      NodeId x = ws.queue.back();
      ws.queue.pop_back();
      ++comp_size[static_cast<std::size_t>(comp)];
      for (const HalfEdge& h : g.neighbors(x)) {
        auto t = static_cast<std::size_t>(h.to);
        if (h.to == center || ws.node_stamp[t] != mark || ws.node_comp[t] >= 0)
          continue;
        ws.node_comp[t] = comp;
        ws.queue.push_back(h.to);
      }
    }
  }

  // Attractiveness per neighbor: independent for singleton components, fused
  // through the virtual node for multi-node components.
  ws.ai.assign(deg, 0.0);
  std::vector<double> comp_indep_sum(static_cast<std::size_t>(comp_count), 0.0);
  std::vector<double> comp_fused(static_cast<std::size_t>(comp_count), 0.0);
  for (std::size_t i = 0; i < deg; ++i) {
    auto comp = static_cast<std::size_t>(
        ws.node_comp[static_cast<std::size_t>(nb[i].to)]);
    comp_indep_sum[comp] += ai0[static_cast<std::size_t>(nb[i].to)];
  }
  std::vector<std::int32_t> fused_mark(static_cast<std::size_t>(comp_count), -1);
  for (std::size_t c = 0; c < static_cast<std::size_t>(comp_count); ++c)
    if (comp_size[c] > 1) fused_mark[c] = ws.tick++;
  for (std::size_t i = 0; i < deg; ++i) {
    NodeId m = nb[i].to;
    auto comp = static_cast<std::size_t>(ws.node_comp[static_cast<std::size_t>(m)]);
    if (comp_size[comp] <= 1) continue;
    std::int32_t emark = fused_mark[comp];
    // Union of member ego edge sets, deduplicated through edge stamps.
    std::int32_t member_mark = ws.tick++;
    for (const HalfEdge& h : g.neighbors(m)) {
      ws.node_stamp[static_cast<std::size_t>(h.to)] = member_mark;
      auto e = static_cast<std::size_t>(h.edge_id);
      if (ws.edge_stamp[e] != emark) {
        ws.edge_stamp[e] = emark;
        comp_fused[comp] += h.weight;
      }
    }
    for (const HalfEdge& x : g.neighbors(m)) {
      for (const HalfEdge& y : g.neighbors(x.to)) {
        if (y.to <= x.to || y.to == m) continue;
        if (ws.node_stamp[static_cast<std::size_t>(y.to)] != member_mark) continue;
        auto e = static_cast<std::size_t>(y.edge_id);
        if (ws.edge_stamp[e] != emark) {
          ws.edge_stamp[e] = emark;
          comp_fused[comp] += y.weight;
        }
      }
    }
  }
  for (std::size_t i = 0; i < deg; ++i) {
    NodeId m = nb[i].to;
    auto comp = static_cast<std::size_t>(ws.node_comp[static_cast<std::size_t>(m)]);
    if (comp_size[comp] <= 1) {
      ws.ai[i] = ai0[static_cast<std::size_t>(m)];
    } else {
      double members = comp_size[comp];
      double share = comp_indep_sum[comp] > 0.0
                         ? ai0[static_cast<std::size_t>(m)] / comp_indep_sum[comp]
                         : 1.0 / members;
      ws.ai[i] = members * comp_fused[comp] * share;
    }
  }

  // Temporal importance.
  ws.pi.assign(deg, 0.5);
  if (mode == TemporalMode::kUseTimestamps) {
    double t_min = nb.front().time, t_max = nb.front().time, t_sum = 0.0;
    for (const HalfEdge& h : nb) {
      t_min = std::min(t_min, h.time);
      t_max = std::max(t_max, h.time);
      t_sum += h.time;
    }
    if (t_max > t_min) {
      double mean = t_sum / static_cast<double>(deg);
      double dt = (t_max - t_min) / static_cast<double>(deg);
      for (std::size_t i = 0; i < deg; ++i)
        ws.pi[i] = logistic((nb[i].time - mean) / (2.0 * dt));
    }
  }

  // Combined influence and force-difference deltas.
  double ai_max = 0.0, pi_max = 0.0;
  for (std::size_t i = 0; i < deg; ++i) {
    ai_max = std::max(ai_max, ws.ai[i]);
    pi_max = std::max(pi_max, ws.pi[i]);
  }
  ws.combined.assign(deg, 0.0);
  double influence_sum = 0.0;
  for (std::size_t i = 0; i < deg; ++i) {
    double spatial = ai_max > 0.0 ? ws.ai[i] / ai_max : 1.0;
    ws.combined[i] = spatial * (ws.pi[i] / pi_max);
    influence_sum += ws.combined[i];
  }
  double weight_sum = 0.0;
  for (const HalfEdge& h : nb) weight_sum += h.weight;
  if (weight_sum <= 0.0 || influence_sum <= 0.0) return;
  for (std::size_t i = 0; i < deg; ++i)
    deltas_out[i] = weight_sum * (ws.combined[i] / influence_sum) - nb[i].weight;
}

}  // namespace detail

// One synchronous round: all deltas are computed from the input snapshot,
// then applied at once. Edge set and timestamps are unchanged. Bit-identical
// for any worker count.
inline WeightedGraph drift_step(const WeightedGraph& g, const DriftConfig& cfg,
                                int workers = 1) {
  auto edge_total = g.edge_count();
  std::vector<double> low_side(edge_total, 0.0);   // delta from min-id endpoint
  std::vector<double> high_side(edge_total, 0.0);  // delta from max-id endpoint
  const std::vector<double> ai0 = detail::all_attractiveness(g);
  auto n = static_cast<std::size_t>(g.node_count());
  parallel_chunks(n, workers, [&](int, std::size_t begin, std::size_t end) {
    detail::DriftScratch ws;
    ws.prepare(g);
    std::vector<double> deltas;
    for (std::size_t a = begin; a < end; ++a) {
      auto center = static_cast<NodeId>(a);
      auto nb = g.neighbors(center);
      if (nb.empty()) continue;
      detail::center_deltas(g, center, ai0, cfg.temporal, ws, deltas);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        auto e = static_cast<std::size_t>(nb[i].edge_id);
        if (center < nb[i].to)
          low_side[e] = deltas[i];
        else
          high_side[e] = deltas[i];
      }
    }
  });

  const auto& edges = g.edges();
  std::vector<double> weights(edge_total);
  for (std::size_t e = 0; e < edge_total; ++e) {
    double delta = cfg.symmetrization == Symmetrization::kAverage
                       ? 0.5 * (low_side[e] + high_side[e])
                       : low_side[e];
    weights[e] = std::max(0.0, edges[e].weight + delta);
  }
  return g.with_edge_weights(weights);
}

// cfg.iterations synchronous rounds; influence fields are recomputed from the
// updated weights at the start of each round.
inline WeightedGraph drift_iterate(const WeightedGraph& g, const DriftConfig& cfg,
                                   int workers = 1) {
  if (cfg.iterations < 0) throw DataError("drift iterations must be >= 0");
  if (cfg.iterations > kMaxDriftIterations)
    throw DataError("drift iterations capped at " +
                    std::to_string(kMaxDriftIterations));
  WeightedGraph current = g;
  for (int i = 0; i < cfg.iterations; ++i)
    current = drift_step(current, cfg, workers);
  return current;
}

}  // namespace netdrift
