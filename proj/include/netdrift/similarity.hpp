#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netdrift/edge_list.hpp"
#include "netdrift/errors.hpp"
#include "netdrift/graph.hpp"
#include "netdrift/parallel.hpp"
#include "netdrift/walks.hpp"

namespace netdrift {

enum class IndexTag { kWcn, kWaa, kWra, kWlp, kWsd };

inline constexpr double kDefaultEpsilon = 1e-3;

// A similarity index selection: which index, its free parameter, and an
// optional override of the structure-dependent path-range cap.
struct IndexKind {
  IndexTag tag = IndexTag::kWcn;
  double epsilon = kDefaultEpsilon;
  std::optional<int> s_cap_override;
};

inline std::string_view index_name(IndexTag tag) {
  switch (tag) {
    case IndexTag::kWcn: return "wcn";
    case IndexTag::kWaa: return "waa";
    case IndexTag::kWra: return "wra";
    case IndexTag::kWlp: return "wlp";
    case IndexTag::kWsd: return "wsd";
  }
  return "?";
}

inline IndexTag parse_index_name(std::string_view name) {
  if (name == "wcn") return IndexTag::kWcn;
  if (name == "waa") return IndexTag::kWaa;
  if (name == "wra") return IndexTag::kWra;
  if (name == "wlp") return IndexTag::kWlp;
  if (name == "wsd") return IndexTag::kWsd;
  throw DataError("unknown index \"" + std::string(name) +
                  "\"; valid names: wcn, waa, wra, wlp, wsd");
}

struct ScoredPair {
  NodeId x = kNoNode;  // min endpoint
  NodeId y = kNoNode;  // max endpoint
  double score = 0.0;
};

// Total order: descending score, ties by ascending (min id, max id).
inline bool scored_before(const ScoredPair& a, const ScoredPair& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

// Candidate pairs with scores in the deterministic ranked order.
struct ScoredPairList {
  std::vector<ScoredPair> entries;

  void sort_entries() {
    std::sort(entries.begin(), entries.end(), scored_before);
  }

  // CSV rows "x,y,score" with node labels and 12 significant digits.
  void write_csv(std::ostream& out, const WeightedGraph& g) const {
    out << "x,y,score\n";
    for (const ScoredPair& p : entries)
      out << g.label(p.x) << ',' << g.label(p.y) << ','
          << format_double(p.score) << '\n';
  }
};

// Path-range cap for the structure-dependent index: max(ceil(<d>), 2),
// where <d> is the mean hop distance over reachable pairs.
inline int wsd_path_cap(const WeightedGraph& g, int workers = 1) {
  double mean = detail::mean_distance_reachable(g, workers);
  int cap = static_cast<int>(std::ceil(mean));
  return std::max(cap, 2);
}

namespace detail {

inline double cn_denominator(IndexTag tag, double strength) {
  switch (tag) {
    case IndexTag::kWaa: return std::log1p(strength);
    case IndexTag::kWra: return strength;
    default: return 1.0;
  }
}

// Sum over common neighbors z of (w(x,z) + w(z,y)) / denom(z). Terms with a
// zero numerator are skipped, which keeps scores finite when zero-weight
// edges make s(z) = 0.
inline double cn_family_score(const WeightedGraph& g, IndexTag tag, NodeId x,
                              NodeId y) {
  auto nx = g.neighbors(x);
  auto ny = g.neighbors(y);
  double total = 0.0;
  std::size_t i = 0, j = 0;
  while (i < nx.size() && j < ny.size()) {
    if (nx[i].to < ny[j].to) {
      ++i;
    } else if (nx[i].to > ny[j].to) {
      ++j;
    } else {
      double numerator = nx[i].weight + ny[j].weight;
      if (numerator > 0.0)
        total += numerator / cn_denominator(tag, g.strength(nx[i].to));
      ++i;
      ++j;
    }
  }
  return total;
}

}  // namespace detail

// Weighted common neighbors: sum of w(x,z) + w(z,y) over z in CN(x, y).
inline double score_wcn(const WeightedGraph& g, NodeId x, NodeId y) {
  g.check_node(x);
  g.check_node(y);
  if (x == y) throw DataError("similarity endpoints must differ");
  return detail::cn_family_score(g, IndexTag::kWcn, x, y);
}

// Weighted Adamic-Adar: terms damped by ln(1 + s(z)).
inline double score_waa(const WeightedGraph& g, NodeId x, NodeId y) {
  g.check_node(x);
  g.check_node(y);
  if (x == y) throw DataError("similarity endpoints must differ");
  return detail::cn_family_score(g, IndexTag::kWaa, x, y);
}

// Weighted resource allocation: terms damped by s(z).
inline double score_wra(const WeightedGraph& g, NodeId x, NodeId y) {
  g.check_node(x);
  g.check_node(y);
  if (x == y) throw DataError("similarity endpoints must differ");
  return detail::cn_family_score(g, IndexTag::kWra, x, y);
}

// Weighted local path: W^2[x][y] + epsilon * W^3[x][y]. Walk rows expand
// from the smaller endpoint, which makes the score bitwise symmetric.
inline double score_wlp(const WeightedGraph& g, NodeId x, NodeId y,
                        double epsilon = kDefaultEpsilon) {
  g.check_node(x);
  g.check_node(y);
  if (x == y) throw DataError("similarity endpoints must differ");
  detail::WalkRows rows;
  rows.compute(g, std::min(x, y), 3);
  auto yi = static_cast<std::size_t>(std::max(x, y));
  return rows.row(2)[yi] + epsilon * rows.row(3)[yi];
}

namespace detail {

// Structure-dependent score given precomputed shortest-path data and walk
// rows from x. Pairs beyond the cap (or unreachable) score 0.
inline double wsd_from_rows(const ShortestPathDp& dp, const WalkRows& rows,
                            NodeId y, double epsilon, int s_cap) {
  auto yi = static_cast<std::size_t>(y);
  int s = dp.dist[yi];
  if (s == kUnreachable || s < 1 || s > s_cap) return 0.0;
  double denom = dp.mean_interior_strength(y);
  if (denom <= 0.0) return 0.0;  // every shortest path is zero-weight
  return rows.row(s)[yi] / denom + epsilon * rows.row(s + 1)[yi] / denom;
}

}  // namespace detail

// Weighted structure-dependent index: walk weights at the pair's shortest
// distance s and at s+1, both normalized by the mean strength of the
// interior nodes of the shortest paths; 0 beyond the path-range cap.
inline double score_wsd(const WeightedGraph& g, NodeId x, NodeId y, double epsilon,
                        int s_cap) {
  g.check_node(x);
  g.check_node(y);
  if (x == y) throw DataError("similarity endpoints must differ");
  NodeId lo = std::min(x, y);
  NodeId hi = std::max(x, y);
  detail::ShortestPathDp dp;
  dp.compute(g, lo, s_cap);
  int s = dp.dist[static_cast<std::size_t>(hi)];
  if (s == kUnreachable || s > s_cap) return 0.0;
  detail::WalkRows rows;
  rows.compute(g, lo, s + 1);
  return detail::wsd_from_rows(dp, rows, hi, epsilon, s_cap);
}

inline double score_wsd(const WeightedGraph& g, NodeId x, NodeId y,
                        double epsilon = kDefaultEpsilon) {
  return score_wsd(g, x, y, epsilon, wsd_path_cap(g));
}

// Structure-dependent score with the distance and denominator pinned by the
// caller. Exercises the same walk engine as score_wsd with the two
// structure-derived quantities replaced, which is the algebraic setting in
// which the index reduces to the local-path family.
inline double score_wsd_forced(const WeightedGraph& g, NodeId x, NodeId y,
                               double epsilon, int forced_distance,
                               double forced_denominator) {
  g.check_node(x);
  g.check_node(y);
  if (x == y) throw DataError("similarity endpoints must differ");
  if (forced_distance < 1) throw DataError("forced distance must be >= 1");
  if (!(forced_denominator > 0.0)) throw DataError("forced denominator must be > 0");
  detail::WalkRows rows;
  rows.compute(g, std::min(x, y), forced_distance + 1);
  auto yi = static_cast<std::size_t>(std::max(x, y));
  return rows.row(forced_distance)[yi] / forced_denominator +
         epsilon * rows.row(forced_distance + 1)[yi] / forced_denominator;
}

// Batch scorer for one (graph, index) pair. score and fill_row are pure
// reads of the immutable graph; concurrent calls need one Workspace per
// thread. For y > x, fill_row(x)[y] is bit-identical to score(x, y): the
// two paths perform the same operations in the same order, so mixing them
// cannot perturb rankings.
class PairScorer {
 public:
  struct Workspace {
    detail::WalkRows walks;
    detail::ShortestPathDp dp;
  };

  virtual ~PairScorer() = default;

  virtual IndexKind kind() const = 0;

  virtual void fill_row(NodeId x, std::vector<double>& out, Workspace& ws) const = 0;

  virtual double score(NodeId x, NodeId y, Workspace& ws) const = 0;

  double score(NodeId x, NodeId y) const {
    Workspace ws;
    return score(x, y, ws);
  }
};

namespace detail {

class CnFamilyScorer final : public PairScorer {
 public:
  CnFamilyScorer(const WeightedGraph& g, IndexKind kind) : g_(g), kind_(kind) {}

  IndexKind kind() const override { return kind_; }

  void fill_row(NodeId x, std::vector<double>& out, Workspace&) const override {
    out.assign(static_cast<std::size_t>(g_.node_count()), 0.0);
    for (const HalfEdge& xz : g_.neighbors(x)) {
      double denom = cn_denominator(kind_.tag, g_.strength(xz.to));
      for (const HalfEdge& zy : g_.neighbors(xz.to)) {
        if (zy.to == x) continue;
        double numerator = xz.weight + zy.weight;
        if (numerator > 0.0)
          out[static_cast<std::size_t>(zy.to)] += numerator / denom;
      }
    }
  }

  double score(NodeId x, NodeId y, Workspace&) const override {
    return cn_family_score(g_, kind_.tag, x, y);
  }

 private:
  const WeightedGraph& g_;
  IndexKind kind_;
};

class LpScorer final : public PairScorer {
 public:
  LpScorer(const WeightedGraph& g, IndexKind kind) : g_(g), kind_(kind) {}

  IndexKind kind() const override { return kind_; }

  void fill_row(NodeId x, std::vector<double>& out, Workspace& ws) const override {
    ws.walks.compute(g_, x, 3);
    auto n = static_cast<std::size_t>(g_.node_count());
    const auto& two = ws.walks.row(2);
    const auto& three = ws.walks.row(3);
    out.resize(n);
    for (std::size_t y = 0; y < n; ++y)
      out[y] = two[y] + kind_.epsilon * three[y];
    out[static_cast<std::size_t>(x)] = 0.0;
  }

  double score(NodeId x, NodeId y, Workspace& ws) const override {
    ws.walks.compute(g_, std::min(x, y), 3);
    auto yi = static_cast<std::size_t>(std::max(x, y));
    return ws.walks.row(2)[yi] + kind_.epsilon * ws.walks.row(3)[yi];
  }

 private:
  const WeightedGraph& g_;
  IndexKind kind_;
};

class WsdScorer final : public PairScorer {
 public:
  WsdScorer(const WeightedGraph& g, IndexKind kind, int workers)
      : g_(g), kind_(kind) {
    s_cap_ = kind.s_cap_override.value_or(wsd_path_cap(g, workers));
  }

  IndexKind kind() const override { return kind_; }

  int path_cap() const { return s_cap_; }

  void fill_row(NodeId x, std::vector<double>& out, Workspace& ws) const override {
    auto n = static_cast<std::size_t>(g_.node_count());
    ws.dp.compute(g_, x, s_cap_);
    int deepest = 0;
    for (std::size_t y = 0; y < n; ++y)
      deepest = std::max(deepest, ws.dp.dist[y]);
    ws.walks.compute(g_, x, std::min(deepest, s_cap_) + 1);
    out.assign(n, 0.0);
    for (std::size_t y = 0; y < n; ++y) {
      if (y == static_cast<std::size_t>(x)) continue;
      out[y] = wsd_from_rows(ws.dp, ws.walks, static_cast<NodeId>(y),
                             kind_.epsilon, s_cap_);
    }
  }

  double score(NodeId x, NodeId y, Workspace& ws) const override {
    NodeId lo = std::min(x, y);
    NodeId hi = std::max(x, y);
    ws.dp.compute(g_, lo, s_cap_);
    int s = ws.dp.dist[static_cast<std::size_t>(hi)];
    if (s == kUnreachable || s > s_cap_) return 0.0;
    ws.walks.compute(g_, lo, s + 1);
    return wsd_from_rows(ws.dp, ws.walks, hi, kind_.epsilon, s_cap_);
  }

 private:
  const WeightedGraph& g_;
  IndexKind kind_;
  int s_cap_ = 2;
};

}  // namespace detail

// The graph must outlive the scorer. workers only affects the one-time
// path-cap computation for the structure-dependent index.
inline std::unique_ptr<PairScorer> make_scorer(const WeightedGraph& g,
                                               IndexKind kind, int workers = 1) {
  switch (kind.tag) {
    case IndexTag::kWlp:
      return std::make_unique<detail::LpScorer>(g, kind);
    case IndexTag::kWsd:
      return std::make_unique<detail::WsdScorer>(g, kind, workers);
    default:
      return std::make_unique<detail::CnFamilyScorer>(g, kind);
  }
}

// Scores a list of unordered candidate pairs. Deterministic output order
// (score descending, ids ascending) for any worker count.
inline ScoredPairList score_pairs(const WeightedGraph& g, IndexKind kind,
                                  const std::vector<std::pair<NodeId, NodeId>>& pairs,
                                  int workers = 1) {
  ScoredPairList result;
  result.entries.resize(pairs.size());
  for (const auto& [a, b] : pairs) {
    g.check_node(a);
    g.check_node(b);
    if (a == b) throw DataError("candidate pair endpoints must differ");
  }
  {
    std::vector<std::uint64_t> keys;
    keys.reserve(pairs.size());
    for (const auto& [a, b] : pairs) keys.push_back(pair_key(a, b));
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
      throw DataError("duplicate unordered pair in candidate list");
  }
  auto scorer = make_scorer(g, kind, workers);
  parallel_chunks(pairs.size(), workers, [&](int, std::size_t begin, std::size_t end) {
    PairScorer::Workspace ws;
    for (std::size_t i = begin; i < end; ++i) {
      NodeId x = std::min(pairs[i].first, pairs[i].second);
      NodeId y = std::max(pairs[i].first, pairs[i].second);
      result.entries[i] = {x, y, scorer->score(x, y, ws)};
    }
  });
  result.sort_entries();
  return result;
}

}  // namespace netdrift
