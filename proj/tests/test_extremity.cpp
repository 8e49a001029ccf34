#include "doctest.h"
#include "oracles.hpp"
#include "patrol/errors.hpp"
#include "patrol/extremity.hpp"
#include "patrol/fixtures.hpp"

using namespace patrol;

namespace {

// Smaller side length after removing a regular point, using only distances.
Rational min_side(const MetricNetwork& net, const NetPoint& x) {
  const Arc& arc = net.arc(x.arc());
  Rational u_side = x.offset();
  for (const auto& a : net.arcs()) {
    if (&a == &arc) continue;
    auto closer_to_u = [&](std::size_t w) { return net.node_distance(w, arc.from) < net.node_distance(w, arc.to); };
    if (closer_to_u(a.from) && closer_to_u(a.to)) u_side += a.length;
  }
  return min(u_side, net.total_length() - u_side);
}

// Membership in E and in every smaller-alpha E on a grid of regular points.
void check_against_definition(const MetricNetwork& net, const ExtremityProfile& prof) {
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    for (Rational o = Rational(1, 8); o < net.arc(a).length; o += Rational(1, 8)) {
      auto x = net.point(a, o);
      CHECK(prof.contains(net, x) == (min_side(net, x) < prof.alpha / 2));
    }
  }
}

}  // namespace

TEST_CASE("star 2-1-6-6 at alpha 6") {
  auto net = fixture_network("star-2166");
  auto prof = extremity_set(net, Rational(6));
  CHECK(prof.lambda_E == 9);
  CHECK(prof.components.size() == 4);
  CHECK(prof.closure_components.size() == 3);
  CHECK(prof.v_star == Rational(1, 4));
  CHECK(prof.leaf_condition);
  CHECK(prof.M == 3);
  for (const auto& c : prof.components) CHECK(c.leaf != npos);
  check_against_definition(net, prof);
}

TEST_CASE("6-1-1 star") {
  auto net = fixture_network("star-611");
  auto prof = extremity_set(net, Rational(6));
  CHECK(prof.lambda_E == 6);
  CHECK(!prof.leaf_condition);
  REQUIRE(prof.leaf_witness);
  CHECK(prof.contains(net, *prof.leaf_witness) != (prof.leaf_witness->arc() == net.arc_index("c9") &&
                                                    prof.leaf_witness->offset() > 3));
  CHECK(prof.v_star == Rational(3, 7));
  for (int a = 4; a <= 8; ++a) CHECK(extremity_set(net, Rational(a)).lambda_E == a);
  CHECK(extremity_set(net, Rational(4)).leaf_condition);
  CHECK(!extremity_set(net, Rational(5)).leaf_condition);
  CHECK(!extremity_set(net, Rational(11)).leaf_condition);
  CHECK(extremity_set(net, Rational(12)).leaf_condition);
  check_against_definition(net, prof);
}

TEST_CASE("fig 8 tree") {
  auto net = fixture_network("fig8-tree");
  auto prof = extremity_set(net, Rational(6));
  CHECK(prof.covers_everything());
  CHECK(prof.closure_components.size() == 1);
  CHECK(conjectured_value(net, Rational(6)) == Rational(1, 2));
}

TEST_CASE("dog tree sweep") {
  auto net = fixture_network("dog-tree");
  const std::size_t expected[] = {5, 5, 5, 5, 7, 7, 7, 7};
  for (int a = 1; a <= 8; ++a) {
    auto prof = extremity_set(net, Rational(a));
    CHECK(prof.components.size() == expected[a - 1]);
    CHECK(prof.leaf_condition == (a <= 4));
    check_against_definition(net, prof);
  }
  auto full = extremity_set(net, Rational(8));
  CHECK(full.covers_everything());
  CHECK(full.closure_components.size() == 1);
  CHECK(!extremity_set(net, Rational(7)).covers_everything());
  auto a2 = extremity_set(net, Rational(2));
  CHECK(a2.lambda_E == 5);
  CHECK(a2.v_star == Rational(1, 7));
}

TEST_CASE("large alpha covers the tree") {
  auto net = fixture_network("dog-tree");
  auto prof = extremity_set(net, Rational(10));
  CHECK(prof.lambda_E == 9);
  CHECK(prof.v_star == Rational(10, 18));
  CHECK(!prof.trivial);
  auto huge = extremity_set(net, Rational(20));
  CHECK(huge.v_star == 1);
  CHECK(huge.trivial);
  CHECK_THROWS_AS(extremity_set(fixture_network("K4"), Rational(1)), PreconditionError);
}

TEST_CASE("balanced stars satisfy the leaf condition") {
  auto star = MetricNetwork({{"c", false}, {"x", false}, {"y", false}, {"z", false}},
                            {{"cx", 0, 1, Rational(2)}, {"cy", 0, 2, Rational(3)}, {"cz", 0, 3, Rational(4)}});
  for (Rational a = Rational(1, 2); a <= 20; a += Rational(1, 2)) CHECK(extremity_set(star, a).leaf_condition);
}

TEST_CASE("random trees: exactness, monotonicity and boundaries") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    auto net = oracle::random_network(rng, 8, true, 4);
    Rational gstar = *generalized_girth(net);
    Rational l = static_cast<long>(leaf_arcs(net).size());
    std::uniform_int_distribution<int> pick(1, 16);
    Rational small = gstar * Rational(pick(rng), 16);
    // On a bare segment both leaf ends share one arc and may overlap.
    if (net.arc_count() > 1) CHECK(extremity_set(net, small).lambda_E == l * small / 2);

    Rational a1 = Rational(pick(rng), 2), a2 = a1 + Rational(pick(rng), 4);
    auto p1 = extremity_set(net, a1), p2 = extremity_set(net, a2);
    for (std::size_t a = 0; a < net.arc_count(); ++a) {
      for (const auto& piece : p1.regions[a]) {
        bool inside = false;
        for (const auto& big : p2.regions[a]) inside = inside || (big.lo <= piece.lo && piece.hi <= big.hi);
        CHECK(inside);
      }
      for (const auto& piece : p1.regions[a]) {
        for (const auto& t : {piece.lo, piece.hi}) {
          auto x = net.point(a, t);
          if (!x.is_node()) CHECK(min_side(net, x) == a1 / 2);
        }
      }
    }
    if (p1.leaf_condition) {
      Rational sum = 0;
      for (const auto& c : p1.components) {
        CHECK(c.leaf != npos);
        sum += c.length;
      }
      CHECK(sum == p1.lambda_E);
    }
    if (trial % 10 == 0) check_against_definition(net, p1);
  }
}
