#include "patrol/patrol.hpp"

#include <algorithm>
#include <functional>

#include "patrol/errors.hpp"
#include "patrol/tour_builder.hpp"

namespace patrol {

Rational MixedPatrol::offset(const Rational& delta, std::size_t i) const {
  return mod(delta + period() * static_cast<long>(i) / static_cast<long>(patrollers), period());
}

TimedTour MixedPatrol::realize(const Rational& delta, std::size_t i) const {
  if (i >= patrollers) throw PreconditionError("patroller index out of range");
  return base.rotated(offset(delta, i));
}

MixedPatrol randomized_periodic(TimedTour tour) {
  if (!tour.closed()) throw PreconditionError("a randomized periodic patrol needs a closed tour");
  if (tour.period() <= 0) throw PreconditionError("a randomized periodic patrol needs a positive period");
  return MixedPatrol{std::move(tour), 1};
}

MixedPatrol multi_patroller(const MixedPatrol& patrol, std::size_t m) {
  if (m == 0) throw PreconditionError("at least one patroller is needed");
  return MixedPatrol{patrol.base, m};
}

PatrolCertificate certify_patrol(const MixedPatrol& patrol, const Rational& alpha, std::size_t k) {
  if (k == 0) throw PreconditionError("k must be at least 1");
  if (alpha <= 0) throw PreconditionError("alpha must be positive");
  PatrolCertificate cert;
  cert.alpha = alpha;
  cert.k = k;
  cert.patrollers = patrol.patrollers;
  try {
    cert.separation = visit_separation(patrol.base, k, Rational(1, 4), {}, patrol.patrollers);
  } catch (const PreconditionError& e) {
    throw CertificateError(std::string("separation hypothesis fails: ") + e.what());
  }
  // With a single visit per point the windows can only overlap once they cover the circle.
  if (k >= 2 && cert.separation.alpha0 < alpha) {
    throw CertificateError("separation " + to_string(cert.separation.alpha0) + " at " +
                           patrol.network().describe(cert.separation.witness) + " is below alpha " +
                           to_string(alpha));
  }
  Rational m = static_cast<long>(patrol.patrollers);
  cert.guarantee = min(Rational(1), m * static_cast<long>(k) * alpha / patrol.period());
  return cert;
}

Rational patrol_guarantee(const MixedPatrol& patrol, const Rational& alpha, std::size_t k) {
  return certify_patrol(patrol, alpha, k).guarantee;
}

namespace {

// Depth-first walk of the refined tree that keeps each closure component of E contiguous
// and traverses it a second time.
class EPatrolBuilder {
 public:
  EPatrolBuilder(const MetricNetwork& original, const Subdivision& sub, const ExtremityProfile& prof)
      : net_(sub.network), alpha_(prof.alpha), in_e_(net_.arc_count()) {
    for (std::size_t a = 0; a < net_.arc_count(); ++a) {
      const auto& piece = sub.pieces[a];
      in_e_[a] = prof.contains(original, original.point(piece.arc, (piece.lo + piece.hi) / 2));
    }
    order_ = [&original, &sub](std::size_t x, std::size_t y) {
      const auto& px = sub.pieces[x];
      const auto& py = sub.pieces[y];
      const auto& ix = original.arc(px.arc).id;
      const auto& iy = original.arc(py.arc).id;
      return ix != iy ? ix < iy : px.lo < py.lo;
    };
  }

  std::vector<DirectedStep> run(std::size_t root) {
    visit(root, npos, false);
    return std::move(steps_);
  }

 private:
  Rational duration(std::size_t begin) const {
    Rational d = 0;
    for (std::size_t i = begin; i < steps_.size(); ++i) d += net_.arc(steps_[i].arc).length;
    return d;
  }

  void descend(const Passage& p, bool inside) {
    steps_.push_back({p.arc, p.end});
    visit(net_.arc(p.arc).endpoint(1 - p.end), p.arc, inside);
    steps_.push_back({p.arc, 1 - p.end});
  }

  void visit(std::size_t node, std::size_t parent_arc, bool inside) {
    std::vector<Passage> in_comp, out_comp;
    for (const auto& p : net_.passages(node)) {
      if (p.arc == parent_arc) continue;
      (in_e_[p.arc] ? in_comp : out_comp).push_back(p);
    }
    auto by_id = [this](const Passage& x, const Passage& y) { return order_(x.arc, y.arc); };
    std::sort(in_comp.begin(), in_comp.end(), by_id);
    std::sort(out_comp.begin(), out_comp.end(), by_id);
    if (inside) {
      // Everything below a point of E lies in E.
      if (!out_comp.empty()) throw PreconditionError("extremity set is not closed downwards");
      for (const auto& p : in_comp) descend(p, true);
      return;
    }

    std::vector<DirectedStep> pending;
    if (!in_comp.empty()) {
      std::size_t begin = steps_.size();
      for (const auto& p : in_comp) descend(p, true);
      std::vector<DirectedStep> block(steps_.begin() + static_cast<std::ptrdiff_t>(begin), steps_.end());
      // The block lasts twice the component length; long blocks are repeated at once.
      if (duration(begin) >= alpha_) {
        steps_.insert(steps_.end(), block.begin(), block.end());
      } else {
        pending = std::move(block);
      }
    }
    for (const auto& p : out_comp) {
      std::size_t begin = steps_.size();
      descend(p, false);
      if (!pending.empty()) {
        if (duration(begin) < alpha_) throw PreconditionError("return gap to a small component is below alpha");
        steps_.insert(steps_.end(), pending.begin(), pending.end());
        pending.clear();
      }
    }
    if (!pending.empty()) throw PreconditionError("the tour never returns to a small component");
  }

  const MetricNetwork& net_;
  Rational alpha_;
  std::vector<bool> in_e_;
  std::function<bool(std::size_t, std::size_t)> order_;
  std::vector<DirectedStep> steps_;
};

}  // namespace

TimedTour e_patrolling_tour(const NetworkPtr& net, const Rational& alpha) {
  const MetricNetwork& g = *net;
  ExtremityProfile prof = extremity_set(g, alpha);
  if (prof.covers_everything()) return tree_cpt(net, NetPoint::at_node(0));

  // Start at the midpoint of the longest piece of the complement of E.
  std::optional<NetPoint> start;
  Rational longest = 0;
  std::vector<NetPoint> cuts;
  for (std::size_t a = 0; a < g.arc_count(); ++a) {
    IntervalSet rest = prof.complement_on(g, a);
    for (const auto& iv : rest.intervals()) {
      if (iv.length() > longest) {
        longest = iv.length();
        start = g.point(a, (iv.lo + iv.hi) / 2);
      }
    }
    for (const auto& piece : prof.regions[a]) {
      cuts.push_back(g.point(a, piece.lo));
      cuts.push_back(g.point(a, piece.hi));
    }
  }
  if (!start) throw PreconditionError("complement of the extremity set has no interior");
  cuts.push_back(*start);

  Subdivision sub = subdivide(g, cuts);
  EPatrolBuilder builder(g, sub, prof);
  auto steps = builder.run(sub.from_original(*start).node());

  PathBuilder b(net, *start);
  for (const auto& s : steps) {
    const auto& piece = sub.pieces[s.arc];
    if (s.from_end == 0) {
      b.move(piece.arc, piece.lo, piece.hi);
    } else {
      b.move(piece.arc, piece.hi, piece.lo);
    }
  }
  TimedTour tour = b.close();
  if (tour.period() != 2 * (prof.mu + prof.lambda_E)) throw PreconditionError("E-patrolling tour has the wrong length");
  return tour;
}

PatrolCertificate certify_e_patrolling(const NetworkPtr& net, const Rational& alpha) {
  bool plain = extremity_set(*net, alpha).covers_everything();
  return certify_patrol(randomized_periodic(e_patrolling_tour(net, alpha)), alpha, plain ? 1 : 2);
}

}  // namespace patrol
