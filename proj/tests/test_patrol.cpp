#include "doctest.h"
#include "oracles.hpp"
#include "patrol/errors.hpp"
#include "patrol/fixtures.hpp"
#include "patrol/patrol.hpp"
#include "patrol/tour_builder.hpp"

using namespace patrol;

namespace {

// Largest circular distance between two visits at x, from a direct segment scan.
Rational scan_two_visit_gap(const TimedTour& tour, const NetPoint& x) {
  auto iv = oracle::scan_visits(tour, x);
  const Rational& L = tour.period();
  Rational best = 0;
  for (const auto& a : iv) {
    for (const auto& b : iv) {
      for (const auto& s : {a.lo, a.hi}) {
        for (const auto& t : {b.lo, b.hi}) {
          Rational d = mod(t - s, L);
          best = max(best, min(d, L - d));
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("randomized periodic extension") {
  auto circle = fixture("circle");
  PathBuilder b(circle, NetPoint::at_node(0));
  b.go(0, Rational(1));
  auto patrol = randomized_periodic(b.close());
  CHECK(patrol.patrollers == 1);
  CHECK(patrol_guarantee(patrol, Rational(1, 2), 1) == Rational(1, 2));
  CHECK(patrol.realize(Rational(1, 4)).position(Rational(0)) == circle->point(0, Rational(1, 4)));

  PathBuilder open(circle, NetPoint::at_node(0));
  open.go(0, Rational(1, 2));
  CHECK_THROWS_AS(randomized_periodic(open.open()), PreconditionError);
}

TEST_CASE("tree depth-first tour guarantees alpha over twice the length") {
  auto star = fixture("star-2166");
  auto patrol = randomized_periodic(tree_cpt(star, NetPoint::at_node(0)));
  CHECK(patrol.period() == 30);
  CHECK(patrol_guarantee(patrol, Rational(6), 1) == Rational(6, 30));
}

TEST_CASE("a pause-only tour certifies nothing") {
  auto k4 = fixture("K4");
  PathBuilder b(k4, NetPoint::at_node(0));
  b.pause(Rational(5));
  auto patrol = randomized_periodic(b.close());
  CHECK_THROWS_AS(patrol_guarantee(patrol, Rational(1), 1), CertificateError);
}

TEST_CASE("star 2-1-6-6: E-patrolling tour and leaf-pause tour") {
  auto star = fixture("star-2166");
  auto tour = e_patrolling_tour(star, Rational(6));
  CHECK(tour.period() == 48);
  auto cert = certify_e_patrolling(star, Rational(6));
  CHECK(cert.k == 2);
  CHECK(cert.separation.alpha0 >= 6);
  CHECK(cert.guarantee == Rational(1, 4));
  CHECK(cert.guarantee == extremity_set(*star, Rational(6)).v_star);

  auto s2a = randomized_periodic(leaf_pause_tour(star, Rational(6)));
  CHECK(s2a.period() == 54);
  CHECK(patrol_guarantee(s2a, Rational(6), 2) == Rational(2, 9));
  CHECK_THROWS_AS(patrol_guarantee(s2a, Rational(7), 2), CertificateError);

  for (std::size_t a = 0; a < star->arc_count(); ++a) {
    for (Rational o = 0; o <= star->arc(a).length; o += Rational(1, 2)) {
      CHECK(scan_two_visit_gap(tour, star->point(a, o)) >= 6);
    }
  }
}

TEST_CASE("multiple patrollers") {
  auto circle = fixture("circle");
  PathBuilder b(circle, NetPoint::at_node(0));
  b.go(0, Rational(1));
  auto two = multi_patroller(randomized_periodic(b.close()), 2);
  CHECK(patrol_guarantee(two, Rational(1, 4), 1) == Rational(1, 2));
  CHECK(patrol_guarantee(two, Rational(1), 1) == 1);
  CHECK(two.offset(Rational(3, 4), 1) == Rational(1, 4));
  CHECK_THROWS_AS(multi_patroller(two, 0), PreconditionError);
  CHECK(multi_patroller(two, 1).patrollers == 1);

  // Q5: the second crossing of each arc runs the other way, so near A on arc 5 the visits at
  // 10 + o and 30 - o collapse modulo 10. Three patrollers only certify single visits.
  auto q5 = randomized_periodic(double_cover_tour(fixture("Q5")));
  auto three = multi_patroller(q5, 3);
  CHECK_THROWS_AS(patrol_guarantee(three, Rational(1, 2), 2), CertificateError);
  CHECK(patrol_guarantee(three, Rational(4), 1) == Rational(2, 5));
  CHECK(visit_separation(q5.base, 2, Rational(1, 4), {}, 3).alpha0 == 0);
  CHECK(patrol_guarantee(q5, Rational(10), 2) == Rational(2, 3));
}

TEST_CASE("closure of E equal to the tree gives a plain depth-first tour") {
  auto star = fixture("star-2166");
  auto prof = extremity_set(*star, Rational(20));
  REQUIRE(prof.covers_everything());
  auto tour = e_patrolling_tour(star, Rational(20));
  CHECK(tour.period() == 30);
  CHECK(certify_e_patrolling(star, Rational(20)).guarantee == prof.v_star);
}

TEST_CASE("alpha up to the generalized girth matches the leaf-pause length") {
  auto dog = fixture("dog-tree");
  for (Rational a : {Rational(1), Rational(3, 2), Rational(2)}) {
    auto tour = e_patrolling_tour(dog, a);
    CHECK(tour.period() == 18 + 5 * a);
    CHECK(certify_e_patrolling(dog, a).guarantee == a / (9 + 5 * a / 2));
  }
}

TEST_CASE("random trees: E-patrolling period, separation and guarantee") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    auto net = share(oracle::random_network(rng, 8, true, 4));
    Rational mu = net->total_length();
    std::uniform_int_distribution<int> pick(1, static_cast<int>(4 * mu));
    Rational alpha = Rational(pick(rng), 2);
    auto prof = extremity_set(*net, alpha);
    auto tour = e_patrolling_tour(net, alpha);
    auto cert = certify_e_patrolling(net, alpha);
    if (prof.covers_everything()) {
      CHECK(tour.period() == 2 * mu);
      CHECK(cert.k == 1);
    } else {
      CHECK(tour.period() == 2 * (mu + prof.lambda_E));
      CHECK(cert.separation.alpha0 >= alpha);
      CHECK(cert.separation.sampled_min >= alpha);
    }
    CHECK(cert.guarantee == prof.v_star);
  }
}
