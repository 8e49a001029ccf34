// Mixed patrols: closed tours started at a uniformly random phase, possibly by several
// evenly offset patrollers, with certified interception guarantees.
#pragma once

#include "patrol/extremity.hpp"
#include "patrol/tour.hpp"
#include "patrol/visits.hpp"

namespace patrol {

/// Patroller i follows base((t + delta + i L / m) mod L) with delta uniform on [0, L).
struct MixedPatrol {
  TimedTour base;
  std::size_t patrollers = 1;

  const Rational& period() const { return base.period(); }
  const MetricNetwork& network() const { return base.network(); }
  /// Offset of patroller i for phase delta, reduced modulo L.
  Rational offset(const Rational& delta, std::size_t i) const;
  /// The pure path of patroller i for phase delta.
  TimedTour realize(const Rational& delta, std::size_t i = 0) const;
};

/// Throws PreconditionError for an open path.
MixedPatrol randomized_periodic(TimedTour tour);

/// Same base tour with m patrollers. Throws PreconditionError for m = 0.
MixedPatrol multi_patroller(const MixedPatrol& patrol, std::size_t m);

struct PatrolCertificate {
  Rational guarantee;
  Rational alpha;
  std::size_t k = 0;
  std::size_t patrollers = 1;
  SeparationReport separation;
};

/// Certified lower bound min(1, m k alpha / L). For k >= 2 the k-visit separation of the tour
/// on the circle of length L / m must be at least alpha; for k = 1 every point must be visited.
/// Throws CertificateError when the hypothesis cannot be certified.
PatrolCertificate certify_patrol(const MixedPatrol& patrol, const Rational& alpha, std::size_t k);

Rational patrol_guarantee(const MixedPatrol& patrol, const Rational& alpha, std::size_t k);

/// Closed tour of length 2 (mu + lambda(E)) on a tree visiting every point twice at times at
/// least alpha apart; a plain depth-first tour (length 2 mu) when the closure of E is the tree.
/// Throws PreconditionError for a network that is not a tree.
TimedTour e_patrolling_tour(const NetworkPtr& net, const Rational& alpha);

/// Certificate for the E-patrolling tour: k = 2, or k = 1 when the closure of E is the tree.
PatrolCertificate certify_e_patrolling(const NetworkPtr& net, const Rational& alpha);

}  // namespace patrol
