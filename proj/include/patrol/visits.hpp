// When a tour is at a point, and how far apart its visits are modulo the period.
#pragma once

#include "patrol/intervals.hpp"
#include "patrol/tour.hpp"

namespace patrol {

/// Sorted disjoint closed time intervals (points are degenerate intervals).
/// Closed tours report times in [0, L); open paths report times in [0, duration].
struct VisitTimeSet {
  std::vector<Interval> times;
  /// Open paths only: the point is held from the end of the path onwards.
  bool held_after_end = false;

  std::size_t count() const { return times.size(); }
};

VisitTimeSet visit_times(const TimedTour& tour, const NetPoint& x);

/// Visit intervals over [0, horizon]; closed tours are unrolled, open paths hold their end point.
std::vector<Interval> visit_times_until(const TimedTour& tour, const NetPoint& x, const Rational& horizon);

/// Largest s such that some k visit times are pairwise at circular distance >= s on a circle of
/// length `period`; nullopt when fewer than k visits exist. k = 1 yields the period.
std::optional<Rational> point_separation(const std::vector<Interval>& times, const Rational& period, std::size_t k);

struct SeparationReport {
  std::size_t k = 0;
  /// Exact infimum over all points of the network.
  Rational alpha0;
  /// A point where the infimum is attained or approached.
  NetPoint witness;
  /// Minimum over the sampled overlay (nodes, extra points, arc samples).
  Rational sampled_min;
  std::size_t samples = 0;
  std::size_t checkpoints = 0;
};

/// Exact k-visit separation of a closed tour. With `patrollers` = m, visit times are read on the
/// circle of length L / m, which is where m copies offset by L / m repeat. Throws
/// PreconditionError when some point is visited fewer than k times.
SeparationReport visit_separation(const TimedTour& tour, std::size_t k, const Rational& sample_density = Rational(1, 4),
                                  const std::vector<NetPoint>& extra_points = {}, std::size_t patrollers = 1);

}  // namespace patrol
