// The extremity set of a tree: regular points whose smaller side has length below alpha / 2.
#pragma once

#include "patrol/intervals.hpp"
#include "patrol/network.hpp"

namespace patrol {

/// Open sub-interval (lo, hi) of an arc, in offsets from its `from` end.
struct ArcInterval {
  std::size_t arc = npos;
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  friend bool operator==(const ArcInterval&, const ArcInterval&) = default;
};

struct EComponent {
  ArcInterval piece;
  Rational length;
  /// Leaf node in the closure of the component, npos when the component is interior.
  std::size_t leaf = npos;
};

/// A component of the closure of E: adjacent components joined through nodes or touching points.
struct ClosureComponent {
  std::vector<std::size_t> members;  // indices into ExtremityProfile::components
  std::vector<std::size_t> nodes;    // nodes contained in the closure
  Rational length;
};

struct ExtremityProfile {
  Rational alpha;
  Rational mu;
  std::vector<std::vector<ArcInterval>> regions;  // per arc, sorted
  std::vector<EComponent> components;
  std::vector<ClosureComponent> closure_components;
  Rational lambda_E;
  Rational M;
  bool leaf_condition = false;
  std::optional<NetPoint> leaf_witness;
  Rational v_star;
  /// alpha >= 2 mu: a depth-first tour intercepts everything.
  bool trivial = false;

  bool contains(const MetricNetwork& net, const NetPoint& x) const;
  bool closure_contains(const MetricNetwork& net, const NetPoint& x) const;
  /// Closure-component index containing x, or npos.
  std::size_t closure_component_of(const MetricNetwork& net, const NetPoint& x) const;
  /// Closed pieces of the complement of E on one arc.
  IntervalSet complement_on(const MetricNetwork& net, std::size_t arc) const;
  Rational lambda_complement() const { return mu - lambda_E; }
  bool covers_everything() const { return lambda_E == mu; }
};

/// Length of the part of the tree on the `from` side of arc `arc` (the arc itself excluded).
Rational from_side_mass(const MetricNetwork& net, std::size_t arc);

/// Throws PreconditionError when `net` is not a tree or alpha <= 0.
ExtremityProfile extremity_set(const MetricNetwork& net, const Rational& alpha);

struct LeafConditionResult {
  bool holds = false;
  std::optional<NetPoint> witness;
};

LeafConditionResult leaf_condition(const ExtremityProfile& profile, const MetricNetwork& net, const Rational& alpha);

/// alpha / (mu + lambda(E)), clamped to 1.
Rational conjectured_value(const MetricNetwork& net, const Rational& alpha);

}  // namespace patrol
