// A discretized patrolling game solved by double oracle, used to cross-check values numerically.
#pragma once

#include <optional>

#include "patrol/grid.hpp"
#include "patrol/matrix_game.hpp"

namespace patrol {

/// The attacker picks a grid node v and a start cell j, meaning a start time strictly inside
/// (j dt, (j + 1) dt); the attack is intercepted iff the walk is at v at some step in
/// [j + 1, j + window], where window = alpha / dt. Walks run over steps 0..steps.
struct DiscreteGame {
  Grid grid;
  Rational alpha;
  long window = 0;
  long cells = 0;
  long steps = 0;

  bool intercepts(const GridWalk& walk, std::size_t node, long cell) const;
};

/// Throws PreconditionError unless `step` divides alpha and every arc length. The start cells
/// cover [0, start_horizon); the default horizon is 2 mu rounded up to the grid.
DiscreteGame make_discrete_game(const NetworkPtr& net, const Rational& alpha, const Rational& step,
                                const std::optional<Rational>& start_horizon = {});

struct AttackCell {
  std::size_t node = npos;
  long cell = 0;
  friend bool operator==(const AttackCell&, const AttackCell&) = default;
};

struct OracleConfig {
  double eps = 0.02;
  std::size_t max_iter = 200;
  /// Cheapest attacks (below the current upper bound) added to the restricted game per round.
  std::size_t attacks_per_round = 8;
  std::size_t state_limit = 4000000;
  /// Restricted games are solved by the simplex method unless this is set.
  bool regret_dynamics = false;
  /// Seed the patroller with phases of the constructive tours that fit the grid.
  bool seed_tours = true;
};

struct OracleIteration {
  std::size_t iteration = 0;
  double restricted_value = 0;
  double lower = 0;
  double upper = 0;
  std::size_t patrols = 0;
  std::size_t attacks = 0;
};

struct OracleResult {
  /// Certified bracket on the value of the discrete game.
  double lower = 0;
  double upper = 0;
  bool converged = false;
  std::vector<std::pair<GridWalk, double>> patrol_support;
  std::vector<std::pair<AttackCell, double>> attack_support;
  std::vector<OracleIteration> trace;

  double value() const { return (lower + upper) / 2; }
  double gap() const { return upper - lower; }
};

/// Grid walks of the game's length following `tour` from each grid-aligned phase; empty when
/// the tour does not fit the grid.
std::vector<GridWalk> tour_walks(const DiscreteGame& game, const TimedTour& tour);

/// Stops when upper - lower <= eps, when no best response is new, or after max_iter rounds.
OracleResult solve_double_oracle(const DiscreteGame& game, const OracleConfig& config = {});

}  // namespace patrol
