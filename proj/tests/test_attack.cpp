#include <algorithm>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "patrol/attack.hpp"
#include "patrol/errors.hpp"
#include "patrol/fixtures.hpp"

using namespace patrol;

namespace {

std::multiset<Rational> weights(const MixedAttack& a) {
  std::multiset<Rational> out;
  for (const auto& c : a.components) out.insert(c.weight);
  return out;
}

const AttackComponent& at_node(const MetricNetwork& net, const MixedAttack& a, const char* id) {
  for (const auto& c : a.components) {
    if (const auto* p = std::get_if<SpatialPoint>(&c.where)) {
      if (p->at.is_node() && net.node(p->at.node()).id == id) return c;
    }
  }
  throw std::runtime_error("no component at node");
}

}  // namespace

TEST_CASE("temporal distributions") {
  Temporal u = TemporalUniform{Rational(1), Rational(5)};
  CHECK(temporal_cdf(u, Rational(2)) == Rational(1, 4));
  CHECK(temporal_probability(u, IntervalSet({{Rational(0), Rational(2)}, {Rational(4), Rational(9)}})) == Rational(1, 2));
  CHECK(sample_temporal(u, Rational(1, 2)) == 3);

  Temporal f = TemporalCdf{{{Rational(0), Rational(0)}, {Rational(2), Rational(1, 4)}, {Rational(4), Rational(3, 4)},
                            {Rational(6), Rational(1)}}};
  CHECK(temporal_cdf(f, Rational(4)) == Rational(3, 4));
  CHECK(temporal_cdf(f, Rational(3)) == Rational(1, 2));
  CHECK(sample_temporal(f, Rational(1, 2)) == 3);
  CHECK(latest_start(f) == 6);
  for (Rational t = 0; t <= 6; t += Rational(1, 3)) {
    CHECK(temporal_probability(f, IntervalSet({{Rational(-1), t}})) == temporal_cdf(f, t));
  }

  Temporal a = TemporalAtom{Rational(3)};
  CHECK(temporal_cdf(a, Rational(3)) == 1);
  CHECK(temporal_cdf(a, Rational(2)) == 0);
  CHECK(temporal_probability(a, IntervalSet({{Rational(3), Rational(3)}})) == 1);
}

TEST_CASE("uniform attack bounds") {
  CHECK(uniform_attack(fixture_network("circle"), Rational(1, 2)).bound == Rational(1, 2));
  CHECK(uniform_attack(fixture_network("K4"), Rational(3)).bound == Rational(1, 2));
  CHECK(uniform_attack(fixture_network("K4"), Rational(6)).bound == 1);
  CHECK(uniform_attack(fixture_network("K4"), Rational(9)).bound == 1);
  auto k4 = fixture_network("K4");
  uniform_attack(k4, Rational(1)).attack.validate(k4);
}

TEST_CASE("independent attack") {
  auto dog = fixture_network("dog-tree");
  auto ind = independent_attack(dog, leaf_points(dog), Rational(2));
  CHECK(ind.bounded.bound == Rational(1, 7));
  CHECK(ind.lambda_within_complement == 4);
  CHECK(ind.p == Rational(10, 14));
  ind.bounded.attack.validate(dog);

  // Leaf arcs longer than alpha / 2: the bound is alpha / (mu + l alpha / 2).
  auto star = fixture_network("star-2166");
  Rational a(3, 2);
  CHECK(independent_attack(star, leaf_points(star), a).bounded.bound == a / (15 + 4 * a / 2));

  auto line = fixture_network("line");
  auto ends = leaf_points(line);
  auto full = independent_attack(line, ends, Rational(1));
  CHECK(full.lambda_within_complement == 0);
  CHECK(full.bounded.bound == Rational(1, 2));
  CHECK(full.bounded.attack.components.size() == 2);

  CHECK_THROWS_AS(independent_attack(star, leaf_points(star), Rational(4)), PreconditionError);

  // Regular points: W is measured along arcs on both sides.
  auto circle = fixture_network("circle");
  auto one = independent_attack(circle, {circle.point(0, Rational(1, 2))}, Rational(1, 2));
  CHECK(one.lambda_within_complement == Rational(1, 2));
  CHECK(one.bounded.bound == Rational(1, 2));
}

TEST_CASE("independent attack region against a distance oracle") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    auto net = oracle::random_network(rng, 6, trial % 2 == 0, 4);
    Rational alpha = Rational(std::uniform_int_distribution<int>(1, 6)(rng), 2);
    std::vector<NetPoint> pts;
    for (int tries = 0; tries < 12; ++tries) {
      auto x = oracle::random_point(rng, net);
      bool ok = std::all_of(pts.begin(), pts.end(), [&](const NetPoint& y) { return oracle::brute_distance(net, x, y) >= alpha; });
      if (ok) pts.push_back(x);
    }
    auto ind = independent_attack(net, pts, alpha);
    for (std::size_t a = 0; a < net.arc_count(); ++a) {
      for (Rational o = Rational(1, 16); o < net.arc(a).length; o += Rational(1, 8)) {
        auto x = net.point(a, o);
        bool near = std::any_of(pts.begin(), pts.end(),
                                [&](const NetPoint& y) { return oracle::brute_distance(net, x, y) < alpha / 2; });
        CHECK(ind.within[a].contains(o) == near);
      }
    }
    ind.bounded.attack.validate(net);
  }
}

TEST_CASE("E-attack on the 2-1-6-6 star") {
  auto star = fixture_network("star-2166");
  auto e = e_attack(star, Rational(6));
  e.attack.validate(star);
  CHECK(e.bound == Rational(1, 4));
  CHECK(weights(e.attack) == std::multiset<Rational>{Rational(6, 24), Rational(6, 24), Rational(4, 24),
                                                      Rational(2, 24), Rational(6, 24)});
  auto check_window = [&](const char* id, Rational w, Rational lo, Rational hi) {
    const auto& c = at_node(star, e.attack, id);
    CHECK(c.weight == w);
    const auto& u = std::get<TemporalUniform>(c.when);
    CHECK(u.lo == lo);
    CHECK(u.hi == hi);
  };
  check_window("D", Rational(6, 24), Rational(0), Rational(6));
  check_window("E", Rational(6, 24), Rational(0), Rational(6));
  check_window("B", Rational(4, 24), Rational(1), Rational(5));
  check_window("C", Rational(2, 24), Rational(2), Rational(4));
  const auto& region = e.attack.components.back();
  CHECK(std::get<SpatialRegion>(region.where).length() == 6);
  CHECK(std::get<TemporalAtom>(region.when).t == 3);
}

TEST_CASE("E-attack on the dog tree and its refusal") {
  auto dog = fixture_network("dog-tree");
  auto e = e_attack(dog, Rational(2));
  e.attack.validate(dog);
  CHECK(e.attack.components.size() == 6);
  int leaf_parts = 0;
  for (const auto& c : e.attack.components) {
    if (std::holds_alternative<SpatialPoint>(c.where)) {
      CHECK(c.weight == Rational(2, 14));
      ++leaf_parts;
    } else {
      CHECK(c.weight == Rational(4, 14));
      CHECK(std::get<TemporalAtom>(c.when).t == 1);
    }
  }
  CHECK(leaf_parts == 5);
  CHECK(e.bound == Rational(1, 7));

  CHECK_THROWS_AS(e_attack(fixture_network("star-611"), Rational(6)), PreconditionError);

  // Closure of E equal to a balanced star: only leaf atoms remain.
  auto star = MetricNetwork({{"c", false}, {"x", false}, {"y", false}, {"z", false}},
                            {{"cx", 0, 1, Rational(2)}, {"cy", 0, 2, Rational(2)}, {"cz", 0, 3, Rational(2)}});
  auto b = e_attack(star, Rational(4));
  b.attack.validate(star);
  CHECK(b.attack.components.size() == 3);
  CHECK(b.bound == Rational(1, 3));
}

TEST_CASE("6-1-1 attack") {
  auto net = fixture_network("star-611");
  auto a6 = attack_611(net, Rational(6));
  a6.attack.validate(net);
  CHECK(a6.bound == Rational(3, 7));
  CHECK(at_node(net, a6.attack, "1").weight == Rational(6, 28));
  CHECK(at_node(net, a6.attack, "2").weight == Rational(6, 28));
  const auto& right = at_node(net, a6.attack, "9");
  CHECK(right.weight == Rational(12, 28));
  CHECK(temporal_cdf(right.when, Rational(2)) == Rational(1, 6));
  CHECK(temporal_cdf(right.when, Rational(6)) == Rational(5, 6));
  CHECK(temporal_cdf(right.when, Rational(8)) == 1);
  Rational middle = 0;
  for (const auto& c : a6.attack.components) {
    if (const auto* r = std::get_if<SpatialRegion>(&c.where)) {
      middle += c.weight;
      CHECK(r->length() == 2);
      CHECK(r->pieces.front().lo == 1);
      CHECK(r->pieces.front().hi == 3);
    }
  }
  CHECK(middle == Rational(4, 28));

  for (int a = 4; a <= 8; ++a) {
    auto x = attack_611(net, Rational(a));
    CHECK(x.attack.total_weight() == 1);
    CHECK(x.bound == Rational(a, 8 + a));
  }
  // The prior conjecture alpha / (2 mu) fails at alpha = 7.
  CHECK(attack_611(net, Rational(7)).bound != Rational(7, 16));
  CHECK_THROWS_AS(attack_611(net, Rational(9)), PreconditionError);
  CHECK_THROWS_AS(attack_611(net, Rational(3)), PreconditionError);
  CHECK_THROWS_AS(attack_611(fixture_network("star-2166"), Rational(6)), PreconditionError);

  auto ext = attack_611_extended(net, Rational(17, 2));
  ext.attack.validate(net);
  CHECK(ext.bound == Rational(1, 2));

  auto counter = counter_patrol_611(fixture("star-611"), Rational(17, 2));
  CHECK(!counter.closed());
  CHECK(counter.period() == Rational(17, 2) + 10);
  CHECK(counter.end_point() == NetPoint::at_node(net.node_index("9")));
}

TEST_CASE("four-leaf tree attack") {
  auto net = fixture_network("fig8-tree");
  auto a = attack_fig8_tree(net, Rational(6));
  a.attack.validate(net);
  CHECK(a.bound == Rational(1, 2));
  CHECK(weights(a.attack) == std::multiset<Rational>{Rational(6, 24), Rational(6, 24), Rational(8, 24), Rational(4, 24)});
  const auto& six = at_node(net, a.attack, "6");
  CHECK(temporal_cdf(six.when, Rational(2)) == Rational(2, 8));
  CHECK(temporal_cdf(six.when, Rational(4)) == Rational(6, 8));
  CHECK_THROWS_AS(attack_fig8_tree(net, Rational(5)), PreconditionError);
  CHECK_THROWS_AS(attack_fig8_tree(fixture_network("star-611"), Rational(6)), PreconditionError);
}

TEST_CASE("validation and sampling") {
  auto net = fixture_network("star-2166");
  auto e = e_attack(net, Rational(6)).attack;
  auto bad = e;
  bad.components.front().weight += Rational(1, 100);
  CHECK_THROWS_AS(bad.validate(net), PreconditionError);
  auto bad_cdf = attack_611(fixture_network("star-611"), Rational(6)).attack;
  std::get<TemporalCdf>(bad_cdf.components[2].when).knots[1].second = Rational(9, 10);
  CHECK_THROWS_AS(bad_cdf.validate(fixture_network("star-611")), PreconditionError);

  // Component frequencies follow the weights.
  std::mt19937 rng(3);
  std::map<std::string, int> counts;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    auto u = [&rng] { return from_double(std::uniform_real_distribution<double>(0, 1)(rng)); };
    auto s = sample_attack(net, e, u(), u(), u());
    counts[s.at.is_node() ? net.node(s.at.node()).id : "region"]++;
    if (!s.at.is_node()) CHECK(!extremity_set(net, Rational(6)).contains(net, s.at));
  }
  CHECK(std::abs(counts["D"] / double(n) - 0.25) < 0.02);
  CHECK(std::abs(counts["C"] / double(n) - 2.0 / 24) < 0.02);
  CHECK(std::abs(counts["region"] / double(n) - 0.25) < 0.02);
}
