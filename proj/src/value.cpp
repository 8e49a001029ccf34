#include "patrol/value.hpp"

#include <functional>

#include "patrol/attack.hpp"
#include "patrol/errors.hpp"
#include "patrol/extremity.hpp"
#include "patrol/patrol.hpp"
#include "patrol/tour_builder.hpp"

namespace patrol {
namespace {

bool divides(const Rational& step, const Rational& t) {
  Rational q = t / step;
  return floor(q) == q;
}

Rational default_oracle_step(const MetricNetwork& net, const Rational& alpha) {
  for (Rational step = 1; step >= Rational(1, 16); step /= 2) {
    bool ok = divides(step, alpha);
    for (const auto& a : net.arcs()) ok = ok && divides(step, a.length);
    if (ok) return step;
  }
  throw PreconditionError("no grid step down to 1/16 divides alpha and every arc length; pass one explicitly");
}

void add_patrol_bound(ValueReport& r, const std::string& source, const std::function<TimedTour()>& make) {
  std::optional<TimedTour> tour;
  try {
    tour = make();
  } catch (const Error&) {
    return;
  }
  auto patrol = randomized_periodic(*tour);
  for (std::size_t k : {std::size_t(2), std::size_t(1)}) {
    try {
      auto cert = certify_patrol(patrol, r.alpha, k);
      r.lower_bounds.push_back({source, cert.guarantee, true,
                                "k = " + std::to_string(k) + ", L = " + to_string(tour->period())});
      return;
    } catch (const CertificateError&) {
    }
  }
}

void add_attack_bound(ValueReport& r, const std::function<BoundedAttack()>& make) {
  try {
    auto b = make();
    r.upper_bounds.push_back({b.family, b.bound, true, ""});
  } catch (const Error&) {
  }
}

}  // namespace

std::optional<Rational> three_arc_quoted_bound(const MetricNetwork& net, const Rational& alpha) {
  if (net.node_count() != 2 || net.arc_count() != 3) return std::nullopt;
  const Rational& c = net.arc(0).length;
  for (const auto& a : net.arcs()) {
    if (a.is_loop() || a.length != c) return std::nullopt;
  }
  Rational a = alpha / c;
  if (a < 2 || a > Rational(10, 3)) return std::nullopt;
  Rational d = 2 - a / 2;
  return 1 - d * d / 3;
}

ValueReport value_bracket(const NetworkPtr& netp, const Rational& alpha, const ValueConfig& config) {
  if (alpha <= 0) throw PreconditionError("alpha must be positive");
  const MetricNetwork& net = *netp;
  ValueReport r;
  r.alpha = alpha;
  r.mu = net.total_length();
  const bool tree = net.is_tree();
  const auto leaves = leaf_arcs(net);
  const Rational l(static_cast<long>(leaves.size()));

  // Lower bounds: constructive tours with certified separation.
  if (net.is_eulerian()) add_patrol_bound(r, "Euler tour", [&] { return euler_tour(netp); });
  add_patrol_bound(r, "double cover", [&] { return double_cover_tour(netp); });
  if (!leaves.empty()) add_patrol_bound(r, "double cover with leaf pauses", [&] { return leaf_pause_tour(netp, alpha); });
  add_patrol_bound(r, "alternating two-node tour", [&] { return two_node_alternating_tour(netp); });
  if (tree) {
    add_patrol_bound(r, "depth-first tree tour", [&] { return tree_cpt(netp, NetPoint::at_node(0)); });
    try {
      auto cert = certify_e_patrolling(netp, alpha);
      r.lower_bounds.push_back({"E-patrolling tour", cert.guarantee, true, "k = " + std::to_string(cert.k)});
    } catch (const Error&) {
    }
  }

  // Upper bounds: attacks with proven interception limits.
  add_attack_bound(r, [&] { return uniform_attack(net, alpha); });
  if (!leaves.empty()) add_attack_bound(r, [&] { return independent_attack(net, leaf_points(net), alpha).bounded; });
  if (tree) add_attack_bound(r, [&] { return e_attack(net, alpha); });
  add_attack_bound(r, [&] { return attack_611(net, alpha); });
  add_attack_bound(r, [&] { return attack_fig8_tree(net, alpha); });
  if (auto f = three_arc_quoted_bound(net, alpha)) {
    r.upper_bounds.push_back({"three-arc bound from prior work", *f, false, "1 - (1/3)(2 - a/2)^2 with a = alpha / arc length"});
  }

  for (const auto& b : r.lower_bounds) {
    if (r.lower.source.empty() || b.value > r.lower.value) r.lower = b;
  }
  if (r.lower.source.empty()) r.lower = {"none", Rational(0), true, ""};
  std::optional<Rational> certified_upper;
  for (const auto& b : r.upper_bounds) {
    if (r.upper.source.empty() || b.value < r.upper.value) r.upper = b;
    if (b.certified && (!certified_upper || b.value < *certified_upper)) certified_upper = b.value;
  }
  r.violation = certified_upper && r.lower.value > *certified_upper + config.tolerance;

  // Closed forms.
  auto g = generalized_girth(net);
  Rational short_attack = min(Rational(1), alpha / (r.mu + l * alpha / 2));
  r.formulas.push_back({leaves.empty() ? "alpha / mu" : "alpha / (mu + l alpha / 2)", short_attack, !g || alpha <= *g});
  if (net.is_eulerian()) r.formulas.push_back({"Eulerian: alpha / mu", min(Rational(1), alpha / r.mu), true});
  if (tree) {
    auto profile = extremity_set(net, alpha);
    bool holds = profile.trivial || leaf_condition(profile, net, alpha).holds;
    r.formulas.push_back({"alpha / (mu + lambda(E))", profile.v_star, holds});
  }
  try {
    star_611_layout(net);
    if (alpha >= 4 && alpha <= 8) r.formulas.push_back({"6-1-1 star: alpha / (8 + alpha)", alpha / (8 + alpha), true});
  } catch (const Error&) {
  }
  try {
    attack_fig8_tree(net, alpha);
    r.formulas.push_back({"four-leaf tree at alpha = 6", Rational(1, 2), true});
  } catch (const Error&) {
  }

  for (const auto& f : r.formulas) {
    if (f.value + config.tolerance < r.lower.value || f.value > r.upper.value + config.tolerance) {
      r.disagreements.push_back(std::string(f.proven ? "proven" : "unproven") + " formula " + f.name + " = " +
                                to_string(f.value) + " lies outside [" + to_string(r.lower.value) + ", " +
                                to_string(r.upper.value) + "]");
    }
  }

  if (config.run_oracle) {
    Rational step = config.oracle_step ? *config.oracle_step : default_oracle_step(net, alpha);
    auto game = make_discrete_game(netp, alpha, step, config.start_horizon);
    auto res = solve_double_oracle(game, config.oracle);
    r.oracle = OracleSummary{step, step * game.cells, res.lower, res.upper, res.converged, res.trace.size()};
    double lo = r.lower.value.convert_to<double>(), up = r.upper.value.convert_to<double>();
    double slack = config.oracle.eps + config.tolerance.convert_to<double>();
    if (res.upper < lo - slack || res.lower > up + slack) {
      r.disagreements.push_back("oracle bracket [" + std::to_string(res.lower) + ", " + std::to_string(res.upper) +
                                "] on grid " + to_string(step) + " misses the analytic bracket");
    }
  }
  return r;
}

}  // namespace patrol
