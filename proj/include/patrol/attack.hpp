// Mixed attack strategies: a finite mixture of (where, when) distributions with a common
// attack duration alpha, each family carrying its proven upper bound on interception.
#pragma once

#include <string>
#include <variant>

#include "patrol/extremity.hpp"
#include "patrol/tour.hpp"

namespace patrol {

struct SpatialPoint {
  NetPoint at;
};

/// Uniform over a union of arc intervals (endpoints carry no mass).
struct SpatialRegion {
  std::vector<ArcInterval> pieces;
  Rational length() const;
};

using Spatial = std::variant<SpatialPoint, SpatialRegion>;

struct TemporalAtom {
  Rational t;
};

struct TemporalUniform {
  Rational lo;
  Rational hi;
};

/// Piecewise-linear cumulative distribution through (time, probability) knots.
struct TemporalCdf {
  std::vector<std::pair<Rational, Rational>> knots;
};

using Temporal = std::variant<TemporalAtom, TemporalUniform, TemporalCdf>;

/// Mass spread uniformly over [lo, hi]; lo == hi is an atom.
struct TemporalPiece {
  Rational lo;
  Rational hi;
  Rational mass;
};

std::vector<TemporalPiece> temporal_pieces(const Temporal& when);
Rational temporal_cdf(const Temporal& when, const Rational& t);
/// Probability that the start time falls in `starts`.
Rational temporal_probability(const Temporal& when, const IntervalSet& starts);
/// Inverse-cdf sample for u in [0, 1).
Rational sample_temporal(const Temporal& when, const Rational& u);
Rational latest_start(const Temporal& when);

struct AttackComponent {
  Rational weight;
  Spatial where;
  Temporal when;
  std::string label;
};

struct MixedAttack {
  Rational alpha;
  std::vector<AttackComponent> components;

  Rational total_weight() const;
  /// Latest end time tau + alpha over all components.
  Rational horizon() const;
  /// Throws PreconditionError unless weights are nonnegative and sum to 1, cdfs are valid,
  /// regions have positive length and every point lies on `net`.
  void validate(const MetricNetwork& net) const;
};

/// A point and start time drawn from a mixed attack.
struct PureAttack {
  NetPoint at;
  Rational start;
};

/// u_component picks the component, u_space and u_time are uniform on [0, 1).
PureAttack sample_attack(const MetricNetwork& net, const MixedAttack& attack, const Rational& u_component,
                         const Rational& u_space, const Rational& u_time);

/// An attack with an upper bound on the interception probability of any patrol.
struct BoundedAttack {
  MixedAttack attack;
  Rational bound;
  std::string family;
};

/// Uniform point at time M; bound min(1, alpha / mu).
BoundedAttack uniform_attack(const MetricNetwork& net, const Rational& alpha, const Rational& M = Rational(0));

struct IndependentAttack {
  BoundedAttack bounded;
  std::vector<NetPoint> points;
  /// Points within alpha / 2 of the independent set, per arc.
  std::vector<IntervalSet> within;
  Rational lambda_within_complement;
  Rational p;
};

/// Points pairwise at least alpha apart; throws PreconditionError naming a closer pair.
IndependentAttack independent_attack(const MetricNetwork& net, const std::vector<NetPoint>& points,
                                     const Rational& alpha);

/// Leaf nodes of the network as an independent set when they are pairwise alpha apart.
std::vector<NetPoint> leaf_points(const MetricNetwork& net);

/// Needs a tree satisfying the Leaf Condition; bound v*. Throws PreconditionError otherwise.
BoundedAttack e_attack(const MetricNetwork& net, const Rational& alpha);

/// Leaves of the 6-1-1 star: short leaves first (by id), then the long leaf.
struct Star611 {
  std::size_t center = npos;
  std::size_t short1 = npos;
  std::size_t short2 = npos;
  std::size_t far = npos;
  std::size_t far_arc = npos;
};

/// Throws PreconditionError unless `net` is a star with leaf arcs of lengths 1, 1 and 6.
Star611 star_611_layout(const MetricNetwork& net);

/// For 4 <= alpha <= 8; bound alpha / (8 + alpha).
BoundedAttack attack_611(const MetricNetwork& net, const Rational& alpha);

/// The same left and right attacks for alpha > 8, where the middle part is empty; weights are
/// rescaled to 1/2 each, so the reported bound is the left weight 1/2, not a proven value.
BoundedAttack attack_611_extended(const MetricNetwork& net, const Rational& alpha);

/// Waits at the second short leaf until alpha - 1, visits the first short leaf, returns, then
/// walks to the long leaf and stays there.
TimedTour counter_patrol_611(const NetworkPtr& net, const Rational& alpha);

/// Four-leaf unit tree with leaves 1, 2, 6, 7 at alpha = 6; bound 1/2.
BoundedAttack attack_fig8_tree(const MetricNetwork& net, const Rational& alpha);

}  // namespace patrol
