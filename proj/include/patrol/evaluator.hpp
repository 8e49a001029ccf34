// Interception probabilities: pure patrols against mixed attacks, mixed patrols against pure
// attacks, Monte Carlo cross-checks and best responses.
#pragma once

#include <random>

#include "patrol/attack.hpp"
#include "patrol/grid.hpp"
#include "patrol/patrol.hpp"

namespace patrol {

struct EvaluationResult {
  Rational probability;
  std::string method;
  /// Conditional interception probability of each attack component.
  std::vector<Rational> per_component;
};

/// Length of the part of `region` (arc intervals) that the path occupies during [t0, t1].
Rational covered_length(const TimedTour& patrol, const Rational& t0, const Rational& t1,
                        const std::vector<ArcInterval>& region);

/// Whether the path is at x at some time in [start, start + alpha].
bool intercepts(const TimedTour& patrol, const NetPoint& x, const Rational& start, const Rational& alpha);

/// Exact interception probability of a pure patrol (closed tours are run periodically from
/// phase 0, open paths hold their end point). Region components need a single start time.
EvaluationResult intercept_pure_patrol(const TimedTour& patrol, const MixedAttack& attack);

struct MixedInterception {
  Rational probability;
  /// Phases delta in [0, L) for which some patroller intercepts.
  IntervalSet phases;
};

MixedInterception intercept_mixed_patrol(const MixedPatrol& patrol, const NetPoint& x, const Rational& start,
                                         const Rational& alpha);

/// Interception probability at a uniform point of `region`, computed exactly: along an arc the
/// probability is piecewise linear in the offset, so each linear piece is integrated exactly.
Rational intercept_mixed_region(const MixedPatrol& patrol, const std::vector<ArcInterval>& region, const Rational& alpha);

/// Exact value of a mixed patrol against a mixed attack.
Rational intercept_mixed_vs_attack(const MixedPatrol& patrol, const MixedAttack& attack);

struct MonteCarloResult {
  double estimate = 0;
  double std_error = 0;
  std::size_t samples = 0;
};

/// Samples the phase and checks the attack window against the visit times directly.
MonteCarloResult monte_carlo_mixed_patrol(const MixedPatrol& patrol, const NetPoint& x, const Rational& start,
                                          const Rational& alpha, std::size_t samples, std::mt19937_64& rng);

/// Samples attacks from the mixture and checks each against the pure patrol.
MonteCarloResult monte_carlo_pure_patrol(const TimedTour& patrol, const MixedAttack& attack, std::size_t samples,
                                         std::mt19937_64& rng);

/// Samples both the phase and the attack.
MonteCarloResult monte_carlo_mixed_vs_attack(const MixedPatrol& patrol, const MixedAttack& attack,
                                             std::size_t samples, std::mt19937_64& rng);

struct AttackResponse {
  NetPoint at;
  Rational start;
  Rational probability;
  std::size_t points_checked = 0;
};

/// Minimizes the mixed patrol's interception over nodes and arc points spaced `step` apart.
/// The random phase makes the result independent of the start time, which is reported as 0.
AttackResponse best_response_attack(const MixedPatrol& patrol, const Rational& alpha, const Rational& step);

struct PatrolResponse {
  Rational step;
  long steps = 0;
  std::size_t items = 0;
  /// Optimum of the dynamic program (floating point).
  double grid_value = 0;
  /// The optimal walk re-evaluated exactly in continuous time.
  Rational exact_value;
  TimedTour path;
  std::size_t peak_states = 0;
};

/// Best grid walk against `attack`: an exact maximum over walks that move one grid edge or
/// stay put per step of length `step`, hence a lower bound on the best response of the
/// continuous game. Throws PreconditionError when the attack does not fit the grid.
PatrolResponse best_response_patrol(const NetworkPtr& net, const MixedAttack& attack, const Rational& step,
                                    std::size_t state_limit = 4000000);

}  // namespace patrol
