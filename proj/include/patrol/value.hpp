// Bracketing the game value: certified patrol guarantees from below, attack bounds from above,
// closed-form predictions and an optional double-oracle estimate.
#pragma once

#include "patrol/game_oracle.hpp"

namespace patrol {

struct BoundEntry {
  std::string source;
  Rational value;
  /// False for bounds quoted from prior work rather than built and checked here.
  bool certified = true;
  std::string note;
};

struct FormulaPrediction {
  std::string name;
  Rational value;
  /// True when the hypotheses of a proven result hold; false for conjectures.
  bool proven = true;
};

struct OracleSummary {
  Rational step;
  Rational start_horizon;
  double lower = 0;
  double upper = 0;
  bool converged = false;
  std::size_t iterations = 0;
};

struct ValueConfig {
  /// Exact comparisons are used when zero.
  Rational tolerance = 0;
  bool run_oracle = false;
  /// Oracle grid step; defaults to the largest of 1, 1/2, 1/4, ... dividing alpha and every arc.
  std::optional<Rational> oracle_step;
  std::optional<Rational> start_horizon;
  OracleConfig oracle;
};

struct ValueReport {
  Rational alpha;
  Rational mu;
  std::vector<BoundEntry> lower_bounds;
  std::vector<BoundEntry> upper_bounds;
  /// Best certified lower bound and best upper bound (quoted bounds included).
  BoundEntry lower;
  BoundEntry upper;
  std::vector<FormulaPrediction> formulas;
  std::optional<OracleSummary> oracle;
  /// A certified lower bound exceeds a certified upper bound beyond the tolerance.
  bool violation = false;
  /// Human-readable notes on formulas outside [lower, upper] and oracle estimates outside it.
  std::vector<std::string> disagreements;

  bool pinned() const { return lower.value == upper.value; }
};

ValueReport value_bracket(const NetworkPtr& net, const Rational& alpha, const ValueConfig& config = {});

/// Upper bound 1 - (1/3)(2 - a/2)^2 at a = alpha / c for two nodes joined by three arcs of
/// length c, quoted for a in [2, 10/3]; nullopt elsewhere or for other networks.
std::optional<Rational> three_arc_quoted_bound(const MetricNetwork& net, const Rational& alpha);

}  // namespace patrol
