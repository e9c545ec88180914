#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "netdrift/distances.hpp"
#include "netdrift/edge_list.hpp"
#include "netdrift/graph.hpp"
#include "netdrift/stats.hpp"
#include "netdrift/walks.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace netdrift;
using support::E;
using support::id_of;
using support::make_graph;

TEST_CASE("edge list parsing maps columns and defaults") {
  std::istringstream in("1 2 3.0 100\n# comment\n% other comment\n4 5 0.5 7\n");
  auto edges = parse_edge_list(in, parse_format("uvwt"));
  REQUIRE(edges.size() == 2);
  CHECK(edges[0].u == "1");
  CHECK(edges[0].v == "2");
  CHECK(edges[0].weight == 3.0);
  CHECK(edges[0].time == 100.0);

  std::istringstream bare("3 4\n");
  auto defaults = parse_edge_list(bare, parse_format("uv"));
  REQUIRE(defaults.size() == 1);
  CHECK(defaults[0].weight == 1.0);
  CHECK(defaults[0].time == 0.0);

  std::istringstream reordered("10 a b\n");
  auto tuw = parse_edge_list(reordered, parse_format("tuv"));
  REQUIRE(tuw.size() == 1);
  CHECK(tuw[0].u == "a");
  CHECK(tuw[0].time == 10.0);
}

TEST_CASE("edge list parsing rejects bad lines with line numbers") {
  std::istringstream self_loop("1 1 1.0 5\n");
  CHECK_THROWS_WITH(parse_edge_list(self_loop, parse_format("uvwt")),
                    Catch::Matchers::ContainsSubstring("line 1"));

  std::istringstream negative("5 6 1 0\n1 2 -3 0\n");
  CHECK_THROWS_WITH(parse_edge_list(negative, parse_format("uvwt")),
                    Catch::Matchers::ContainsSubstring("line 2"));

  std::istringstream malformed("1 2 x 0\n");
  CHECK_THROWS_AS(parse_edge_list(malformed, parse_format("uvwt")), DataError);

  std::istringstream short_line("1\n");
  CHECK_THROWS_AS(parse_edge_list(short_line, parse_format("uv")), DataError);
}

TEST_CASE("build_graph aggregates duplicate interactions") {
  std::vector<TemporalEdge> es{{"a", "b", 1, 5}, {"b", "a", 2, 9}};
  auto summed = build_graph(es, Aggregation::kSumWeights);
  REQUIRE(summed.edge_count() == 1);
  CHECK(summed.edges()[0].weight == 3.0);
  CHECK(summed.edges()[0].time == 9.0);

  std::vector<TemporalEdge> repeat{{"a", "b", 1, 5}, {"a", "b", 1, 2}};
  auto counted = build_graph(repeat, Aggregation::kCountInteractions);
  CHECK(counted.edges()[0].weight == 2.0);
  CHECK(counted.edges()[0].time == 5.0);

  auto maxed = build_graph(repeat, Aggregation::kKeepMaxWeight);
  CHECK(maxed.edges()[0].weight == 1.0);

  std::vector<TemporalEdge> single{{"a", "b", 4, 1}};
  for (auto policy : {Aggregation::kSumWeights, Aggregation::kCountInteractions,
                      Aggregation::kKeepMaxWeight}) {
    auto g = build_graph(single, policy);
    CHECK(g.edges()[0].weight == (policy == Aggregation::kCountInteractions ? 1.0 : 4.0));
    CHECK(g.edges()[0].time == 1.0);
  }

  auto empty = build_graph(std::vector<TemporalEdge>{});
  CHECK(empty.node_count() == 0);
  CHECK(empty.edge_count() == 0);
}

TEST_CASE("graph invariants: symmetry, strength, degree sum") {
  Rng rng(11);
  for (int round = 0; round < 20; ++round) {
    auto g = support::random_graph(rng, 12, 0.3);
    std::size_t degree_sum = 0;
    for (NodeId x = 0; x < g.node_count(); ++x) {
      degree_sum += static_cast<std::size_t>(g.degree(x));
      double recomputed = 0.0;
      for (const HalfEdge& h : g.neighbors(x)) {
        recomputed += h.weight;
        const HalfEdge* mirror = g.find_half_edge(h.to, x);
        REQUIRE(mirror != nullptr);
        CHECK(mirror->weight == h.weight);
        CHECK(mirror->time == h.time);
      }
      CHECK(recomputed == g.strength(x));
    }
    CHECK(degree_sum == 2 * g.edge_count());
  }
}

TEST_CASE("giant component keeps the largest component, ties by min id") {
  // Two triangles and an isolated extra edge; first triangle has node 0.
  auto g = make_graph({{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {6, 7}});
  auto giant = giant_component(g);
  CHECK(giant.node_count() == 3);
  CHECK(giant.find("0").has_value());
  CHECK(giant.find("3") == std::nullopt);

  auto connected = make_graph({{0, 1}, {1, 2}});
  auto same = giant_component(connected);
  CHECK(same.node_count() == connected.node_count());
  CHECK(same.edge_count() == connected.edge_count());

  auto empty = giant_component(WeightedGraph{});
  CHECK(empty.node_count() == 0);
}

TEST_CASE("hop distance basics") {
  auto g = make_graph({{0, 1}, {1, 2}, {3, 4}});
  CHECK(hop_distance(g, id_of(g, 0), id_of(g, 2)) == 2);
  CHECK(hop_distance(g, id_of(g, 0), id_of(g, 0)) == 0);
  CHECK(hop_distance(g, id_of(g, 0), id_of(g, 3)) == std::nullopt);
  CHECK_THROWS_AS(hop_distance(g, 0, 99), DataError);
}

TEST_CASE("hop distance symmetry and triangle inequality") {
  Rng rng(23);
  for (int round = 0; round < 10; ++round) {
    auto g = support::random_connected_graph(rng, 10, 0.2);
    auto brute = oracle::all_hop_distances(g);
    for (NodeId x = 0; x < g.node_count(); ++x)
      for (NodeId y = 0; y < g.node_count(); ++y) {
        auto d = hop_distance(g, x, y);
        REQUIRE(d.has_value());
        CHECK(*d == brute[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
        CHECK(*d == *hop_distance(g, y, x));
        for (NodeId z = 0; z < g.node_count(); ++z)
          CHECK(*d <= *hop_distance(g, x, z) + *hop_distance(g, z, y));
      }
  }
}

TEST_CASE("mean shortest distance") {
  auto triangle = make_graph({{0, 1}, {1, 2}, {2, 0}});
  CHECK(mean_shortest_distance(triangle) == 1.0);

  auto path4 = make_graph({{0, 1}, {1, 2}, {2, 3}});
  CHECK_THAT(mean_shortest_distance(path4),
             Catch::Matchers::WithinAbs(10.0 / 6.0, 1e-12));

  auto disconnected = make_graph({{0, 1}, {2, 3}});
  CHECK_THROWS_WITH(mean_shortest_distance(disconnected),
                    Catch::Matchers::ContainsSubstring("giant component"));
}

TEST_CASE("ego edge set includes the center and its closed neighborhood") {
  auto triangle = make_graph({{0, 1}, {0, 2}, {1, 2}});
  auto ego = ego_edge_set(triangle, id_of(triangle, 0));
  CHECK(ego.size() == 3);

  auto star = make_graph({{0, 1}, {0, 2}});
  auto star_ego = ego_edge_set(star, id_of(star, 0));
  CHECK(star_ego.size() == 2);

  // Leaf of the star: ego({1}) = {1, 0}, giving just the one edge.
  auto leaf_ego = ego_edge_set(star, id_of(star, 1));
  CHECK(leaf_ego.size() == 1);

  auto with_isolated = giant_component(make_graph({{0, 1}}));
  CHECK(ego_edge_set(with_isolated, 0).size() == 1);
}

TEST_CASE("network stats on hand-computed graphs") {
  auto triangle = make_graph({{0, 1}, {1, 2}, {2, 0}});
  auto st = network_stats(triangle);
  CHECK(st.nodes == 3);
  CHECK(st.links == 3);
  CHECK(st.mean_degree == 2.0);
  CHECK(st.mean_distance == 1.0);
  CHECK(st.clustering == 1.0);
  CHECK(st.weighted_clustering == 1.0);
  CHECK(st.heterogeneity == 1.0);

  auto star = make_graph({{0, 1}, {0, 2}, {0, 3}});
  auto star_stats = network_stats(star);
  CHECK(star_stats.clustering == 0.0);
  CHECK_THAT(star_stats.heterogeneity, Catch::Matchers::WithinAbs(4.0 / 3.0, 1e-12));

  auto ring = make_graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  CHECK(network_stats(ring).heterogeneity == 1.0);
}

TEST_CASE("heterogeneity is 1 exactly on regular graphs and above otherwise") {
  Rng rng(5);
  for (int round = 0; round < 10; ++round) {
    auto g = support::random_connected_graph(rng, 9, 0.3);
    auto st = network_stats(g);
    bool regular = true;
    for (NodeId x = 1; x < g.node_count(); ++x)
      if (g.degree(x) != g.degree(0)) regular = false;
    if (regular)
      CHECK(st.heterogeneity == 1.0);
    else
      CHECK(st.heterogeneity > 1.0);
  }
}

TEST_CASE("walk weight matches hand counts") {
  auto path = make_graph({{0, 1}, {1, 2}});
  NodeId x = id_of(path, 0), z = id_of(path, 1), y = id_of(path, 2);
  CHECK(walk_weight(path, x, y, 2) == 1.0);
  CHECK(walk_weight(path, x, y, 3) == 0.0);  // parity: no 3-step walk spans the path
  CHECK(walk_weight(path, x, z, 3) == 2.0);  // 0-1-0-1 and 0-1-2-1

  auto triangle = make_graph({{0, 1}, {1, 2}, {2, 0}});
  CHECK(walk_weight(triangle, 0, 1, 3) ==
        oracle::mat_power(oracle::weight_matrix(triangle), 3)[0][1]);

  CHECK_THROWS_AS(walk_weight(path, x, y, 1), DataError);
  CHECK_THROWS_AS(walk_weight(path, x, y, 6), DataError);
  CHECK_THROWS_AS(walk_weight(path, x, x, 2), DataError);
}

TEST_CASE("walk weight agrees with the dense matrix-power oracle") {
  Rng rng(37);
  for (int round = 0; round < 25; ++round) {
    auto g = support::random_graph(rng, 12, 0.25);
    auto w = oracle::weight_matrix(g);
    for (int length = 2; length <= 5; ++length) {
      auto powered = oracle::mat_power(w, length);
      for (NodeId x = 0; x < g.node_count(); ++x)
        for (NodeId y = static_cast<NodeId>(x + 1); y < g.node_count(); ++y) {
          double ours = walk_weight(g, x, y, length);
          double theirs = powered[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
          CHECK(support::rel_diff(ours, theirs) <= 1e-12);
          CHECK(ours == walk_weight(g, y, x, length));
        }
    }
  }
}

TEST_CASE("edge list round-trips through write and parse") {
  Rng rng(99);
  auto g = support::random_connected_graph(rng, 15, 0.2);
  std::ostringstream out;
  write_edge_list(out, g);
  std::istringstream in(out.str());
  auto reparsed = build_graph(parse_edge_list(in, parse_format("uvwt")));
  REQUIRE(reparsed.edge_count() == g.edge_count());
  REQUIRE(reparsed.node_count() == g.node_count());
  for (const Edge& e : g.edges()) {
    auto u = reparsed.find(g.label(e.u));
    auto v = reparsed.find(g.label(e.v));
    REQUIRE(u);
    REQUIRE(v);
    const HalfEdge* h = reparsed.find_half_edge(*u, *v);
    REQUIRE(h != nullptr);
    CHECK(format_double(h->weight) == format_double(e.weight));
    CHECK(format_double(h->time) == format_double(e.time));
  }
}
