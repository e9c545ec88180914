#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "netdrift/similarity.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace netdrift;
using support::E;
using support::id_of;
using support::make_graph;

TEST_CASE("common-neighbor family point values") {
  // x(0) - z(1) - y(2) with w(x,z)=1, w(z,y)=2.
  auto g = make_graph({{0, 1, 1.0}, {1, 2, 2.0}});
  NodeId x = id_of(g, 0), y = id_of(g, 2);
  CHECK(score_wcn(g, x, y) == 3.0);
  CHECK_THAT(score_waa(g, x, y),
             Catch::Matchers::WithinRel(3.0 / std::log(4.0), 1e-12));
  CHECK(score_wra(g, x, y) == 1.0);

  // No common neighbor.
  auto square = make_graph({{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(score_wcn(square, id_of(square, 0), id_of(square, 1)) == 0.0);

  // Unit weights: WCN = 2 x |CN|, WAA term 2/ln(3) for a degree-2 neighbor.
  auto path = make_graph({{0, 1}, {1, 2}});
  CHECK(score_wcn(path, id_of(path, 0), id_of(path, 2)) == 2.0);
  CHECK_THAT(score_waa(path, id_of(path, 0), id_of(path, 2)),
             Catch::Matchers::WithinRel(2.0 / std::log(3.0), 1e-12));

  // A common neighbor whose only edges go to x and y gives WRA exactly 1.
  auto theta = make_graph({{0, 1, 2.5}, {1, 2, 0.7}, {0, 3}, {2, 4}});
  CHECK(score_wra(theta, id_of(theta, 0), id_of(theta, 2)) == 1.0);
}

TEST_CASE("local path point values") {
  auto path = make_graph({{0, 1}, {1, 2}});
  CHECK(score_wlp(path, id_of(path, 0), id_of(path, 2), 1e-3) == 1.0);

  // Square 0-1-2-3-0: two length-2 walks between opposite corners, no
  // length-3 walks (parity).
  auto square = make_graph({{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(score_wlp(square, id_of(square, 0), id_of(square, 2), 1e-3) == 2.0);

  // epsilon = 0 reduces to the pure two-hop walk weight.
  auto g = make_graph({{0, 1, 1.5}, {1, 2, 2.0}, {0, 2, 0.3}, {2, 3, 1.0}});
  CHECK(score_wlp(g, id_of(g, 0), id_of(g, 3), 0.0) ==
        walk_weight(g, id_of(g, 0), id_of(g, 3), 2));
}

TEST_CASE("structure-dependent point values") {
  auto path3 = make_graph({{0, 1}, {1, 2}});
  CHECK(score_wsd(path3, id_of(path3, 0), id_of(path3, 2)) == 0.5);

  // Path of four nodes: the end pair sits at distance 3 > cap = 2.
  auto path4 = make_graph({{0, 1}, {1, 2}, {2, 3}});
  CHECK(wsd_path_cap(path4) == 2);
  CHECK(score_wsd(path4, id_of(path4, 0), id_of(path4, 3)) == 0.0);
  // The cap override lifts the range restriction.
  CHECK(score_wsd(path4, id_of(path4, 0), id_of(path4, 3), 1e-3, 3) > 0.0);

  // Unreachable pairs score 0.
  auto split_graph = make_graph({{0, 1}, {2, 3}});
  CHECK(score_wsd(split_graph, id_of(split_graph, 0), id_of(split_graph, 2)) == 0.0);
}

TEST_CASE("wsd with forced distance and denominator equals wlp") {
  Rng rng(101);
  for (int round = 0; round < 50; ++round) {
    auto g = support::random_graph(rng, 9, 0.3);
    double epsilon = rng.unit();
    for (NodeId x = 0; x < g.node_count(); ++x)
      for (NodeId y = static_cast<NodeId>(x + 1); y < g.node_count(); ++y) {
        double forced = score_wsd_forced(g, x, y, epsilon, 2, 1.0);
        double lp = score_wlp(g, x, y, epsilon);
        CHECK(forced == lp);
      }
  }
}

TEST_CASE("wsd with zero epsilon matches resource allocation when all common "
          "neighbors have equal degree") {
  // Disjoint gadgets: pair i has i+1 common neighbors, every common neighbor
  // has degree exactly 2, so WSD(eps=0) = |CN| / 2 = RA.
  std::vector<E> edges;
  int next = 0;
  std::vector<std::pair<int, int>> gadget_pairs;
  for (int m = 1; m <= 4; ++m) {
    int x = next++;
    int y = next++;
    gadget_pairs.push_back({x, y});
    for (int c = 0; c < m; ++c) {
      int z = next++;
      edges.push_back({x, z});
      edges.push_back({z, y});
    }
  }
  auto g = make_graph(edges);

  std::vector<double> wsd_scores, ra_scores;
  for (auto [x, y] : gadget_pairs) {
    NodeId xi = id_of(g, x), yi = id_of(g, y);
    double wsd0 = score_wsd(g, xi, yi, 0.0);
    double ra = oracle::wra(g, xi, yi) / 2.0;  // unit weights: RA = |CN|/k
    CHECK_THAT(wsd0, Catch::Matchers::WithinRel(ra, 1e-12));
    wsd_scores.push_back(wsd0);
    ra_scores.push_back(ra);
  }
  // Identical ranking of the gadget pairs.
  CHECK(oracle::spearman(wsd_scores, ra_scores) == 1.0);
}

TEST_CASE("every index matches its brute-force oracle on random graphs") {
  Rng rng(2024);
  for (int round = 0; round < 40; ++round) {
    auto g = support::random_graph(rng, 10, 0.35);
    double epsilon = round % 3 == 0 ? 1e-3 : rng.unit();
    for (NodeId x = 0; x < g.node_count(); ++x)
      for (NodeId y = static_cast<NodeId>(x + 1); y < g.node_count(); ++y) {
        CHECK(support::rel_diff(score_wcn(g, x, y), oracle::wcn(g, x, y)) <= 1e-12);
        CHECK(support::rel_diff(score_waa(g, x, y), oracle::waa(g, x, y)) <= 1e-12);
        CHECK(support::rel_diff(score_wra(g, x, y), oracle::wra(g, x, y)) <= 1e-12);
        CHECK(support::rel_diff(score_wlp(g, x, y, epsilon),
                                oracle::wlp(g, x, y, epsilon)) <= 1e-12);
        CHECK(support::rel_diff(score_wsd(g, x, y, epsilon),
                                oracle::wsd(g, x, y, epsilon)) <= 1e-12);
      }
  }
}

TEST_CASE("scores are symmetric, non-negative, and finite") {
  Rng rng(7);
  for (int round = 0; round < 15; ++round) {
    auto g = support::random_graph(rng, 10, 0.3);
    for (NodeId x = 0; x < g.node_count(); ++x)
      for (NodeId y = static_cast<NodeId>(x + 1); y < g.node_count(); ++y) {
        for (double s : {score_wcn(g, x, y), score_waa(g, x, y), score_wra(g, x, y),
                         score_wlp(g, x, y), score_wsd(g, x, y)}) {
          CHECK(s >= 0.0);
          CHECK(std::isfinite(s));
        }
        CHECK(score_wcn(g, x, y) == score_wcn(g, y, x));
        CHECK(score_waa(g, x, y) == score_waa(g, y, x));
        CHECK(score_wra(g, x, y) == score_wra(g, y, x));
        CHECK(score_wlp(g, x, y) == score_wlp(g, y, x));
        CHECK(score_wsd(g, x, y) == score_wsd(g, y, x));
      }
  }
}

TEST_CASE("zero-weight edges keep every score finite") {
  auto g = make_graph({{0, 1, 0.0}, {1, 2, 0.0}, {0, 2, 1.0}, {2, 3, 0.0}});
  for (NodeId x = 0; x < g.node_count(); ++x)
    for (NodeId y = static_cast<NodeId>(x + 1); y < g.node_count(); ++y) {
      CHECK(std::isfinite(score_wcn(g, x, y)));
      CHECK(std::isfinite(score_waa(g, x, y)));
      CHECK(std::isfinite(score_wra(g, x, y)));
      CHECK(std::isfinite(score_wlp(g, x, y)));
      CHECK(std::isfinite(score_wsd(g, x, y)));
    }
}

TEST_CASE("unit-weight wcn ranking equals classic common-neighbor ranking") {
  Rng rng(55);
  for (int round = 0; round < 10; ++round) {
    auto g = support::random_graph(rng, 10, 0.4, /*unit_weights=*/true);
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId x = 0; x < g.node_count(); ++x)
      for (NodeId y = static_cast<NodeId>(x + 1); y < g.node_count(); ++y)
        pairs.push_back({x, y});
    auto ranked = score_pairs(g, {IndexTag::kWcn, kDefaultEpsilon, {}}, pairs);

    ScoredPairList classic;
    for (auto [x, y] : pairs) {
      double cn = oracle::wcn(g, x, y) / 2.0;  // unit weights: CN count
      CHECK(score_wcn(g, x, y) == 2.0 * cn);
      classic.entries.push_back({x, y, cn});
    }
    classic.sort_entries();
    for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
      CHECK(ranked.entries[i].x == classic.entries[i].x);
      CHECK(ranked.entries[i].y == classic.entries[i].y);
    }
  }
}

TEST_CASE("row scoring equals point scoring for every index") {
  Rng rng(404);
  for (int round = 0; round < 8; ++round) {
    auto g = support::random_graph(rng, 12, 0.3);
    for (IndexTag tag : {IndexTag::kWcn, IndexTag::kWaa, IndexTag::kWra,
                         IndexTag::kWlp, IndexTag::kWsd}) {
      auto scorer = make_scorer(g, {tag, 1e-3, {}});
      PairScorer::Workspace ws;
      std::vector<double> row;
      for (NodeId x = 0; x < g.node_count(); ++x) {
        scorer->fill_row(x, row, ws);
        // Canonical access pattern: rows are read at y > x.
        for (NodeId y = static_cast<NodeId>(x + 1); y < g.node_count(); ++y)
          CHECK(row[static_cast<std::size_t>(y)] == scorer->score(x, y, ws));
      }
    }
  }
}

TEST_CASE("score_pairs contract") {
  auto g = make_graph({{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto empty = score_pairs(g, {IndexTag::kWcn, kDefaultEpsilon, {}}, {});
  CHECK(empty.entries.empty());

  // Opposite corners of the square tie at WCN = 4; order falls back to ids.
  std::vector<std::pair<NodeId, NodeId>> pairs{
      {id_of(g, 1), id_of(g, 3)}, {id_of(g, 2), id_of(g, 0)}};
  auto ranked = score_pairs(g, {IndexTag::kWcn, kDefaultEpsilon, {}}, pairs);
  REQUIRE(ranked.entries.size() == 2);
  CHECK(ranked.entries[0].score == ranked.entries[1].score);
  CHECK(std::pair(ranked.entries[0].x, ranked.entries[0].y) <
        std::pair(ranked.entries[1].x, ranked.entries[1].y));

  // Determinism across repeated runs and worker counts.
  Rng rng(31);
  auto big = support::random_connected_graph(rng, 20, 0.2);
  std::vector<std::pair<NodeId, NodeId>> all;
  for (NodeId x = 0; x < big.node_count(); ++x)
    for (NodeId y = static_cast<NodeId>(x + 1); y < big.node_count(); ++y)
      if (!big.has_edge(x, y)) all.push_back({x, y});
  auto once = score_pairs(big, {IndexTag::kWsd, 1e-3, {}}, all, 1);
  auto again = score_pairs(big, {IndexTag::kWsd, 1e-3, {}}, all, 4);
  REQUIRE(once.entries.size() == again.entries.size());
  for (std::size_t i = 0; i < once.entries.size(); ++i) {
    CHECK(once.entries[i].x == again.entries[i].x);
    CHECK(once.entries[i].y == again.entries[i].y);
    CHECK(once.entries[i].score == again.entries[i].score);
  }

  CHECK_THROWS_AS(
      score_pairs(g, {IndexTag::kWcn, kDefaultEpsilon, {}},
                  {{0, 1}, {1, 0}}),
      DataError);
  CHECK_THROWS_AS(
      score_pairs(g, {IndexTag::kWcn, kDefaultEpsilon, {}}, {{0, 0}}),
      DataError);
}

TEST_CASE("scored pair list serializes to csv with 12 significant digits") {
  auto g = make_graph({{0, 1}, {1, 2}});
  ScoredPairList list;
  list.entries.push_back({id_of(g, 0), id_of(g, 2), 1.0 / 3.0});
  std::ostringstream out;
  list.write_csv(out, g);
  CHECK(out.str() == "x,y,score\n0,2,0.333333333333\n");
}

TEST_CASE("index names parse and reject unknowns") {
  CHECK(parse_index_name("wsd") == IndexTag::kWsd);
  CHECK_THROWS_WITH(parse_index_name("katz"),
                    Catch::Matchers::ContainsSubstring("wcn, waa, wra, wlp, wsd"));
}
