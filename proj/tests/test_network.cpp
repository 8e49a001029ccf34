#include "doctest.h"
#include "oracles.hpp"
#include "patrol/errors.hpp"
#include "patrol/fixtures.hpp"

using namespace patrol;

TEST_CASE("fixture totals and leaves") {
  CHECK(fixture_network("dog-tree").total_length() == 9);
  CHECK(fixture_network("star-2166").total_length() == 15);
  CHECK(fixture_network("star-611").total_length() == 8);
  CHECK(leaf_arcs(fixture_network("dog-tree")).size() == 5);
  CHECK(leaf_arcs(fixture_network("circle")).empty());
  CHECK(leaf_arcs(fixture_network("star-611")).size() == 3);
  CHECK(fixture_network("three-arc").total_length() == 3);
  CHECK(fixture_network("circle").total_length() == 1);
}

TEST_CASE("girth and generalized girth") {
  CHECK(*girth(fixture_network("K4")) == 3);
  CHECK(*girth(fixture_network("three-arc")) == 2);
  CHECK(!girth(fixture_network("dog-tree")));
  CHECK(*generalized_girth(fixture_network("dog-tree")) == 2);
  CHECK(*girth(fixture_network("circle")) == 1);
  CHECK(*generalized_girth(fixture_network("K4")) == 3);
  CHECK(*generalized_girth(fixture_network("line")) == 1);
}

TEST_CASE("validation rejects malformed networks") {
  CHECK_THROWS_AS(MetricNetwork({{"A", false}, {"B", false}, {"C", false}},
                                {{"x", 0, 1, Rational(1)}, {"y", 1, 2, Rational(1)}}),
                  InvalidNetwork);
  CHECK_NOTHROW(MetricNetwork({{"A", false}, {"B", true}, {"C", false}},
                              {{"x", 0, 1, Rational(1)}, {"y", 1, 2, Rational(1)}}));
  CHECK_THROWS_AS(MetricNetwork({{"A", false}, {"B", false}}, {{"x", 0, 1, Rational(0)}}), InvalidNetwork);
  CHECK_THROWS_AS(MetricNetwork({{"A", false}, {"B", false}, {"C", false}, {"D", false}},
                                {{"x", 0, 1, Rational(1)}, {"y", 2, 3, Rational(1)}}),
                  InvalidNetwork);
  CHECK_THROWS_AS(MetricNetwork({{"A", false}, {"A", false}}, {{"x", 0, 1, Rational(1)}}), InvalidNetwork);
}

TEST_CASE("distance matches path enumeration") {
  auto star = fixture_network("star-611");
  CHECK(star.distance(NetPoint::at_node(star.node_index("9")), NetPoint::at_node(star.node_index("1"))) == 7);
  auto single = MetricNetwork({{"A", false}, {"B", false}}, {{"x", 0, 1, Rational(7)}});
  CHECK(single.distance(NetPoint::at_node(0), NetPoint::at_node(1)) == 7);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    auto net = oracle::random_network(rng, 6, false);
    for (int k = 0; k < 10; ++k) {
      auto p = oracle::random_point(rng, net);
      auto q = oracle::random_point(rng, net);
      auto r = oracle::random_point(rng, net);
      Rational pq = net.distance(p, q);
      CHECK(pq == oracle::brute_distance(net, p, q));
      CHECK(pq == net.distance(q, p));
      CHECK(net.distance(p, p) == 0);
      CHECK(net.distance(p, r) <= pq + net.distance(q, r));
    }
    if (auto g = girth(net)) CHECK(*generalized_girth(net) <= *g);
  }
}

TEST_CASE("point canonicalization") {
  auto net = fixture_network("K4");
  CHECK(net.point(0, Rational(0)) == NetPoint::at_node(0));
  CHECK(net.point(0, Rational(1)) == NetPoint::at_node(1));
  CHECK(!net.point(0, Rational(1, 2)).is_node());
  CHECK_THROWS_AS(net.point(0, Rational(2)), PreconditionError);
}

TEST_CASE("tree removal components sum to mu") {
  auto net = fixture_network("dog-tree");
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    auto d = shortest_paths(net, net.arc(a).from, a);
    Rational side = 0;
    for (const auto& arc : net.arcs()) {
      if (&arc == &net.arc(a)) continue;
      if (d[arc.from] && d[arc.to]) side += arc.length;
    }
    Rational t = net.arc(a).length / 3;
    Rational other = net.total_length() - side - t;
    CHECK(side + t + other == net.total_length());
    CHECK(other > 0);
  }
}

TEST_CASE("identify_points") {
  auto theta = fixture_network("fig1-theta");
  auto C = theta.point(theta.arc_index("a"), Rational(1));
  auto D = theta.point(theta.arc_index("b"), Rational(1));
  auto glued = identify_points(theta, C, D, "CD");
  CHECK(glued.network.total_length() == 6);
  CHECK(*girth(glued.network) == 2);
  CHECK(glued.network.distance(glued.map_point(C), glued.map_point(D)) == 0);

  std::mt19937 rng(11);
  for (int k = 0; k < 40; ++k) {
    auto p = oracle::random_point(rng, theta);
    auto q = oracle::random_point(rng, theta);
    CHECK(glued.network.distance(glued.map_point(p), glued.map_point(q)) <= theta.distance(p, q));
  }

  auto segment = MetricNetwork({{"A", false}, {"B", false}}, {{"x", 0, 1, Rational(1)}});
  auto circle = identify_points(segment, NetPoint::at_node(0), NetPoint::at_node(1));
  CHECK(circle.network.node_count() == 1);
  CHECK(circle.network.arc(0).is_loop());
  CHECK(circle.network.is_eulerian());
  CHECK_THROWS_AS(identify_points(segment, NetPoint::at_node(0), NetPoint::at_node(0)), PreconditionError);
}
