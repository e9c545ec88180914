#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "netdrift/errors.hpp"
#include "netdrift/graph.hpp"
#include "netdrift/parallel.hpp"
#include "netdrift/rng.hpp"
#include "netdrift/similarity.hpp"
#include "netdrift/split.hpp"

namespace netdrift {

inline constexpr std::uint64_t kDefaultAucSamples = 100000;
inline constexpr std::uint64_t kExactAucGuard = 10000000;  // probe x nonexistent

namespace detail {

// Bounded collector that keeps the best `cap` entries under the ScoredPair
// total order. The heap top is the worst kept entry.
class TopCandidates {
 public:
  explicit TopCandidates(std::size_t cap) : cap_(cap) {}

  void offer(const ScoredPair& p) {
    if (cap_ == 0) return;
    if (heap_.size() < cap_) {
      heap_.push(p);
    } else if (scored_before(p, heap_.top())) {
      heap_.pop();
      heap_.push(p);
    }
  }

  std::vector<ScoredPair> take_sorted() {
    std::vector<ScoredPair> out;
    out.reserve(heap_.size());
    while (!heap_.empty()) {
      out.push_back(heap_.top());
      heap_.pop();
    }
    std::sort(out.begin(), out.end(), scored_before);
    return out;
  }

 private:
  struct WorstOnTop {
    bool operator()(const ScoredPair& a, const ScoredPair& b) const {
      return scored_before(a, b);
    }
  };
  std::size_t cap_;
  std::priority_queue<ScoredPair, std::vector<ScoredPair>, WorstOnTop> heap_;
};

struct PairHash {
  std::size_t operator()(std::uint64_t k) const {
    std::uint64_t s = k;
    return static_cast<std::size_t>(splitmix64(s));
  }
};

using PairSet = std::unordered_set<std::uint64_t, PairHash>;

inline PairSet make_pair_set(const std::vector<NodePair>& pairs) {
  PairSet set;
  set.reserve(pairs.size() * 2);
  for (const NodePair& p : pairs) set.insert(pair_key(p.x, p.y));
  return set;
}

}  // namespace detail

// One AUC comparison: a probe pair against a sampled nonexistent pair.
struct AucComparison {
  NodePair probe;
  NodePair nonexistent;
};

// Draws n comparisons for the sampled AUC: probe pairs uniformly from EP,
// nonexistent pairs uniformly from U \ (ET ∪ EP) by lazy rejection (the
// universe is never materialized).
inline std::vector<AucComparison> draw_auc_comparisons(
    const WeightedGraph& train, const std::vector<NodePair>& probe,
    std::uint64_t n, std::uint64_t seed) {
  if (probe.empty()) throw DataError("AUC needs a non-empty probe set");
  if (n == 0) throw DataError("AUC needs at least one comparison");
  auto nodes = static_cast<std::uint64_t>(train.node_count());
  if (detail::unordered_pair_count(nodes) <=
      train.edge_count() + probe.size())
    throw DataError("no nonexistent pairs to sample");
  detail::PairSet probe_set = detail::make_pair_set(probe);

  Rng rng(seed);
  std::vector<AucComparison> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    AucComparison cmp;
    cmp.probe = probe[rng.below(probe.size())];
    for (;;) {
      auto a = static_cast<NodeId>(rng.below(nodes));
      auto b = static_cast<NodeId>(rng.below(nodes));
      if (a == b) continue;
      NodePair p{std::min(a, b), std::max(a, b)};
      if (train.has_edge(p.x, p.y)) continue;
      if (probe_set.count(pair_key(p.x, p.y))) continue;
      cmp.nonexistent = p;
      break;
    }
    out.push_back(cmp);
  }
  return out;
}

namespace detail {

// Resolves scores for an arbitrary multiset of pairs, grouping queries by
// their min endpoint so each needed row is computed once. Row computation is
// worthwhile once a source has a few queries; single queries use the point
// path, which produces identical values.
inline std::vector<double> resolve_scores(const WeightedGraph& g,
                                          const PairScorer& scorer,
                                          const std::vector<NodePair>& pairs,
                                          int workers = 1) {
  std::vector<double> scores(pairs.size(), 0.0);
  std::unordered_map<NodeId, std::vector<std::size_t>> by_source;
  by_source.reserve(static_cast<std::size_t>(g.node_count()));
  for (std::size_t i = 0; i < pairs.size(); ++i)
    by_source[pairs[i].x].push_back(i);

  std::vector<NodeId> sources;
  sources.reserve(by_source.size());
  for (const auto& [src, slots] : by_source) sources.push_back(src);
  std::sort(sources.begin(), sources.end());

  parallel_chunks(sources.size(), workers,
                  [&](int, std::size_t begin, std::size_t end) {
    PairScorer::Workspace ws;
    std::vector<double> row;
    for (std::size_t s = begin; s < end; ++s) {
      NodeId src = sources[s];
      const auto& slots = by_source.at(src);
      if (slots.size() >= 4) {
        scorer.fill_row(src, row, ws);
        for (std::size_t slot : slots)
          scores[slot] = row[static_cast<std::size_t>(pairs[slot].y)];
      } else {
        for (std::size_t slot : slots)
          scores[slot] = scorer.score(pairs[slot].x, pairs[slot].y, ws);
      }
    }
  });
  return scores;
}

}  // namespace detail

// Sampled AUC: (n' + 0.5 n'') / n over the given comparisons, scored with
// the supplied scorer.
inline double auc_from_comparisons(const WeightedGraph& train,
                                   const PairScorer& scorer,
                                   const std::vector<AucComparison>& comparisons,
                                   int workers = 1) {
  if (comparisons.empty()) throw DataError("AUC needs at least one comparison");
  std::vector<NodePair> queries;
  queries.reserve(comparisons.size() * 2);
  for (const AucComparison& c : comparisons) {
    queries.push_back(c.probe);
    queries.push_back(c.nonexistent);
  }
  std::vector<double> scores =
      detail::resolve_scores(train, scorer, queries, workers);
  std::uint64_t half_units = 0;  // 2 n' + n''
  for (std::size_t i = 0; i < comparisons.size(); ++i) {
    double sp = scores[2 * i];
    double sn = scores[2 * i + 1];
    if (sp > sn)
      half_units += 2;
    else if (sp == sn)
      half_units += 1;
  }
  return static_cast<double>(half_units) /
         (2.0 * static_cast<double>(comparisons.size()));
}

// AUC from n seeded random comparisons of probe vs nonexistent pairs.
inline double auc_sampled(const WeightedGraph& train, const PairScorer& scorer,
                          const std::vector<NodePair>& probe, std::uint64_t n,
                          std::uint64_t seed, int workers = 1) {
  auto comparisons = draw_auc_comparisons(train, probe, n, seed);
  return auc_from_comparisons(train, scorer, comparisons, workers);
}

// Exact Mann-Whitney AUC over all probe x nonexistent comparisons with 0.5
// tie credit. Guarded: the comparison count must not exceed kExactAucGuard.
inline double auc_exact(const WeightedGraph& train, const PairScorer& scorer,
                        const std::vector<NodePair>& probe, int workers = 1) {
  if (probe.empty()) throw DataError("AUC needs a non-empty probe set");
  auto nodes = static_cast<std::uint64_t>(train.node_count());
  std::uint64_t universe = detail::unordered_pair_count(nodes);
  if (universe <= train.edge_count() + probe.size())
    throw DataError("no nonexistent pairs to enumerate");
  std::uint64_t nonexistent_count =
      universe - train.edge_count() - probe.size();
  if (probe.size() * nonexistent_count > kExactAucGuard)
    throw BudgetError(
        "exact AUC would need " + std::to_string(probe.size()) + " x " +
        std::to_string(nonexistent_count) +
        " comparisons; use sampled mode");

  detail::PairSet probe_set = detail::make_pair_set(probe);
  std::vector<double> probe_scores =
      detail::resolve_scores(train, scorer, probe, workers);

  // Scores of every nonexistent pair, via one row per node.
  std::vector<double> nonexistent_scores;
  nonexistent_scores.reserve(nonexistent_count);
  {
    PairScorer::Workspace ws;
    std::vector<double> row;
    auto n = static_cast<NodeId>(nodes);
    for (NodeId x = 0; x + 1 < n; ++x) {
      scorer.fill_row(x, row, ws);
      for (NodeId y = x + 1; y < n; ++y) {
        if (train.has_edge(x, y)) continue;
        if (probe_set.count(pair_key(x, y))) continue;
        nonexistent_scores.push_back(row[static_cast<std::size_t>(y)]);
      }
    }
  }
  std::sort(nonexistent_scores.begin(), nonexistent_scores.end());

  std::uint64_t half_units = 0;  // 2 n' + n''
  for (double sp : probe_scores) {
    auto lo = std::lower_bound(nonexistent_scores.begin(),
                               nonexistent_scores.end(), sp);
    auto hi = std::upper_bound(lo, nonexistent_scores.end(), sp);
    auto below = static_cast<std::uint64_t>(lo - nonexistent_scores.begin());
    auto ties = static_cast<std::uint64_t>(hi - lo);
    half_units += 2 * below + ties;
  }
  return static_cast<double>(half_units) /
         (2.0 * static_cast<double>(probe_scores.size()) *
          static_cast<double>(nonexistent_scores.size()));
}

// Lr / L: the fraction of the top-L ranked entries that are probe pairs.
// The list must already be in the deterministic ranked order.
inline double precision_at_L(const ScoredPairList& scores,
                             const std::vector<NodePair>& probe, std::size_t L) {
  if (L == 0) throw DataError("precision needs L >= 1");
  if (L > scores.entries.size())
    throw DataError("L = " + std::to_string(L) + " exceeds the ranked list size " +
                    std::to_string(scores.entries.size()));
  detail::PairSet probe_set = detail::make_pair_set(probe);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < L; ++i) {
    const ScoredPair& p = scores.entries[i];
    if (probe_set.count(pair_key(p.x, p.y))) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(L);
}

// Streaming precision over the full candidate universe U \ ET: equivalent to
// ranking every non-observed pair and counting probe pairs in the top L, but
// only the running top L is kept. Positive scores are collected with one row
// sweep per source; if fewer than L candidates score above zero, the ranking
// tail consists of zero-score pairs in ascending (x, y) order, enumerated
// lazily.
inline double precision_over_universe(const WeightedGraph& train,
                                      const PairScorer& scorer,
                                      const std::vector<NodePair>& probe,
                                      std::size_t L, int workers = 1) {
  if (L == 0) throw DataError("precision needs L >= 1");
  auto n = static_cast<std::size_t>(train.node_count());
  std::size_t candidates = detail::unordered_pair_count(n) - train.edge_count();
  if (L > candidates)
    throw DataError("L = " + std::to_string(L) +
                    " exceeds the candidate universe size " +
                    std::to_string(candidates));

  int use = effective_workers(n, workers);
  std::vector<detail::TopCandidates> collected;
  collected.reserve(static_cast<std::size_t>(use));
  for (int w = 0; w < use; ++w) collected.emplace_back(L);
  parallel_chunks(n, use, [&](int worker, std::size_t begin, std::size_t end) {
    PairScorer::Workspace ws;
    std::vector<double> row;
    for (std::size_t x = begin; x < end; ++x) {
      scorer.fill_row(static_cast<NodeId>(x), row, ws);
      for (std::size_t y = x + 1; y < n; ++y) {
        if (row[y] <= 0.0) continue;
        auto xi = static_cast<NodeId>(x);
        auto yi = static_cast<NodeId>(y);
        if (train.has_edge(xi, yi)) continue;
        collected[static_cast<std::size_t>(worker)].offer({xi, yi, row[y]});
      }
    }
  });
  std::vector<ScoredPair> top;
  for (auto& c : collected) {
    auto part = c.take_sorted();
    top.insert(top.end(), part.begin(), part.end());
  }
  std::sort(top.begin(), top.end(), scored_before);
  if (top.size() > L) top.resize(L);

  detail::PairSet probe_set = detail::make_pair_set(probe);
  std::size_t hits = 0;
  for (const ScoredPair& p : top)
    if (probe_set.count(pair_key(p.x, p.y))) ++hits;

  // Zero-score tail in ascending pair order, skipping train edges and the
  // already-counted positive pairs.
  if (top.size() < L) {
    detail::PairSet positive;
    positive.reserve(top.size() * 2);
    for (const ScoredPair& p : top) positive.insert(pair_key(p.x, p.y));
    std::size_t need = L - top.size();
    for (std::size_t x = 0; x < n && need > 0; ++x) {
      for (std::size_t y = x + 1; y < n && need > 0; ++y) {
        auto xi = static_cast<NodeId>(x);
        auto yi = static_cast<NodeId>(y);
        if (train.has_edge(xi, yi)) continue;
        if (positive.count(pair_key(xi, yi))) continue;
        --need;
        if (probe_set.count(pair_key(xi, yi))) ++hits;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(L);
}

// Best-k non-observed pairs of the graph under the deterministic ranked
// order, via one row sweep per source.
inline ScoredPairList top_candidates(const WeightedGraph& g,
                                     const PairScorer& scorer, std::size_t k,
                                     int workers = 1) {
  auto n = static_cast<std::size_t>(g.node_count());
  int use = effective_workers(n, workers);
  std::vector<detail::TopCandidates> collected;
  collected.reserve(static_cast<std::size_t>(use));
  for (int w = 0; w < use; ++w) collected.emplace_back(k);
  parallel_chunks(n, use, [&](int worker, std::size_t begin, std::size_t end) {
    PairScorer::Workspace ws;
    std::vector<double> row;
    for (std::size_t x = begin; x < end; ++x) {
      scorer.fill_row(static_cast<NodeId>(x), row, ws);
      for (std::size_t y = x + 1; y < n; ++y) {
        auto xi = static_cast<NodeId>(x);
        auto yi = static_cast<NodeId>(y);
        if (g.has_edge(xi, yi)) continue;
        collected[static_cast<std::size_t>(worker)].offer({xi, yi, row[y]});
      }
    }
  });
  ScoredPairList result;
  for (auto& c : collected) {
    auto part = c.take_sorted();
    result.entries.insert(result.entries.end(), part.begin(), part.end());
  }
  result.sort_entries();
  if (result.entries.size() > k) result.entries.resize(k);
  return result;
}

}  // namespace netdrift
