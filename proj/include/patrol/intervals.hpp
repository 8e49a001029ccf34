// Finite unions of closed intervals on the line and on a circle.
#pragma once

#include <vector>

#include "patrol/rational.hpp"

namespace patrol {

struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted union of closed intervals. Touching or overlapping pieces are merged,
/// so the stored list is always disjoint and strictly separated.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> pieces);

  void add(const Rational& lo, const Rational& hi);
  void add(const Interval& piece) { add(piece.lo, piece.hi); }
  void add(const IntervalSet& other);

  const std::vector<Interval>& intervals() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  Rational measure() const;
  bool contains(const Rational& x) const;

  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet clip(const Rational& lo, const Rational& hi) const;
  /// Closure of the complement inside [lo, hi].
  IntervalSet complement_in(const Rational& lo, const Rational& hi) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> pieces_;
};

/// Lebesgue measure of the union of `pieces` taken modulo `period`.
/// Pieces may lie anywhere on the line; any piece of length >= period covers the circle.
Rational circle_union_measure(const std::vector<Interval>& pieces, const Rational& period);

/// Reduces pieces modulo `period` into a sorted union inside [0, period].
IntervalSet wrap_to_circle(const std::vector<Interval>& pieces, const Rational& period);

}  // namespace patrol
