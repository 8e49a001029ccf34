#include "patrol/evaluator.hpp"

#include <cmath>

#include "patrol/errors.hpp"
#include "patrol/visits.hpp"

namespace patrol {
namespace {

Rational uniform_rational(std::mt19937_64& rng) {
  return from_double(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
}

MonteCarloResult summarize(std::size_t hits, std::size_t samples) {
  MonteCarloResult r;
  r.samples = samples;
  r.estimate = samples == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(samples);
  r.std_error = samples == 0 ? 0.0 : std::sqrt(r.estimate * (1 - r.estimate) / static_cast<double>(samples));
  return r;
}

// Adds the arc positions swept by one move during [t0, t1] (the move runs over [s0, s1]).
void sweep(std::vector<IntervalSet>& image, const Move& m, const Rational& s0, const Rational& s1, const Rational& t0,
           const Rational& t1) {
  Rational a = max(s0, t0), b = min(s1, t1);
  if (a >= b) return;
  int dir = m.to > m.from ? 1 : -1;
  Rational p = m.from + dir * (a - s0), q = m.from + dir * (b - s0);
  image[m.arc].add(min(p, q), max(p, q));
}

}  // namespace

Rational covered_length(const TimedTour& patrol, const Rational& t0, const Rational& t1,
                        const std::vector<ArcInterval>& region) {
  const MetricNetwork& net = patrol.network();
  std::vector<IntervalSet> image(net.arc_count());
  if (t1 > t0) {
    if (patrol.closed()) {
      const Rational& L = patrol.period();
      for (Rational shift = floor(t0 / L) * L; shift < t1; shift += L) {
        for (const auto& s : patrol.segments()) {
          if (!s.is_pause()) sweep(image, s.move(), s.t0 + shift, s.t1 + shift, t0, t1);
        }
      }
    } else {
      for (const auto& s : patrol.segments()) {
        if (!s.is_pause()) sweep(image, s.move(), s.t0, s.t1, t0, t1);
      }
    }
  }
  std::vector<IntervalSet> wanted(net.arc_count());
  for (const auto& piece : region) wanted.at(piece.arc).add(piece.lo, piece.hi);
  Rational total = 0;
  for (std::size_t a = 0; a < net.arc_count(); ++a) total += image[a].intersect(wanted[a]).measure();
  return total;
}

bool intercepts(const TimedTour& patrol, const NetPoint& x, const Rational& start, const Rational& alpha) {
  for (const auto& iv : visit_times_until(patrol, x, start + alpha)) {
    if (iv.hi >= start) return true;
  }
  return false;
}

EvaluationResult intercept_pure_patrol(const TimedTour& patrol, const MixedAttack& attack) {
  attack.validate(patrol.network());
  EvaluationResult out;
  out.method = "exact";
  out.probability = 0;
  for (const auto& c : attack.components) {
    Rational p;
    if (const auto* pt = std::get_if<SpatialPoint>(&c.where)) {
      // Starts whose window meets a visit [lo, hi] fill [lo - alpha, hi].
      IntervalSet starts;
      for (const auto& iv : visit_times_until(patrol, pt->at, latest_start(c.when) + attack.alpha)) {
        starts.add(iv.lo - attack.alpha, iv.hi);
      }
      p = temporal_probability(c.when, starts);
    } else {
      const auto& region = std::get<SpatialRegion>(c.where);
      const auto* atom = std::get_if<TemporalAtom>(&c.when);
      if (!atom) throw PreconditionError("exact region evaluation needs a single start time");
      p = covered_length(patrol, atom->t, atom->t + attack.alpha, region.pieces) / region.length();
    }
    out.per_component.push_back(p);
    out.probability += c.weight * p;
  }
  return out;
}

MixedInterception intercept_mixed_patrol(const MixedPatrol& patrol, const NetPoint& x, const Rational& start,
                                         const Rational& alpha) {
  const Rational& L = patrol.period();
  std::vector<Interval> pieces;
  for (const auto& v : visit_times(patrol.base, x).times) {
    for (std::size_t i = 0; i < patrol.patrollers; ++i) {
      Rational shift = start + L * static_cast<long>(i) / static_cast<long>(patrol.patrollers);
      pieces.push_back({v.lo - shift - alpha, v.hi - shift});
    }
  }
  MixedInterception out;
  out.phases = wrap_to_circle(pieces, L);
  out.probability = circle_union_measure(pieces, L) / L;
  return out;
}

Rational intercept_mixed_region(const MixedPatrol& patrol, const std::vector<ArcInterval>& region, const Rational& alpha) {
  const MetricNetwork& net = patrol.network();
  const Rational shift = patrol.period() / static_cast<long>(patrol.patrollers);
  Rational total = 0, length = 0;
  for (const auto& piece : region) {
    if (piece.hi <= piece.lo) continue;
    length += piece.length();
    // Passages along the arc: time t0 + sign (x - from) for x between from and to.
    struct Pass {
      Rational t0, from, to;
      int sign;
    };
    std::vector<Pass> passes;
    std::vector<Rational> cuts{piece.lo, piece.hi};
    auto cut = [&](const Rational& x) {
      if (piece.lo < x && x < piece.hi) cuts.push_back(x);
    };
    for (std::size_t i = 0; i < patrol.base.segments().size(); ++i) {
      const Segment& s = patrol.base.segments()[i];
      if (s.is_pause()) {
        const NetPoint& at = s.pause().at;
        if (!at.is_node() && at.arc() == piece.arc) cut(at.offset());
        continue;
      }
      const Move& m = s.move();
      if (m.arc != piece.arc) continue;
      cut(m.from);
      cut(m.to);
      passes.push_back({s.t0, m.from, m.to, m.to > m.from ? 1 : -1});
    }
    // Between cuts the probability is linear: its kinks sit where two opposite passages are
    // 0 or alpha apart modulo the patroller spacing.
    for (std::size_t i = 0; i < passes.size(); ++i) {
      for (std::size_t j = 0; j < passes.size(); ++j) {
        const Pass& a = passes[i];
        const Pass& b = passes[j];
        if (a.sign != 1 || b.sign != -1) continue;
        Rational lo = max(max(min(a.from, a.to), min(b.from, b.to)), piece.lo);
        Rational hi = min(min(max(a.from, a.to), max(b.from, b.to)), piece.hi);
        if (hi <= lo) continue;
        // diff(x) = (a.t0 + x - a.from) - (b.t0 + b.from - x) = c + 2x
        Rational c = a.t0 - a.from - b.t0 - b.from;
        Rational dmin = c + 2 * lo, dmax = c + 2 * hi;
        for (const Rational& base : {Rational(0), alpha, Rational(-alpha)}) {
          Rational k = floor((dmin - base) / shift);
          for (Rational d = base + k * shift; d <= dmax; d += shift) {
            if (d >= dmin) cut((d - c) / 2);
          }
        }
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Rational& a = cuts[i];
      const Rational& b = cuts[i + 1];
      Rational f1 = intercept_mixed_patrol(patrol, net.point(piece.arc, (2 * a + b) / 3), Rational(0), alpha).probability;
      Rational f2 = intercept_mixed_patrol(patrol, net.point(piece.arc, (a + 2 * b) / 3), Rational(0), alpha).probability;
      total += (b - a) * (f1 + f2) / 2;
    }
  }
  if (length == 0) throw PreconditionError("region has zero length");
  return total / length;
}

Rational intercept_mixed_vs_attack(const MixedPatrol& patrol, const MixedAttack& attack) {
  attack.validate(patrol.network());
  Rational total = 0;
  for (const auto& c : attack.components) {
    // A uniform phase makes the interception probability independent of the start time.
    if (const auto* pt = std::get_if<SpatialPoint>(&c.where)) {
      total += c.weight * intercept_mixed_patrol(patrol, pt->at, Rational(0), attack.alpha).probability;
    } else {
      total += c.weight * intercept_mixed_region(patrol, std::get<SpatialRegion>(c.where).pieces, attack.alpha);
    }
  }
  return total;
}

MonteCarloResult monte_carlo_mixed_patrol(const MixedPatrol& patrol, const NetPoint& x, const Rational& start,
                                          const Rational& alpha, std::size_t samples, std::mt19937_64& rng) {
  const Rational& L = patrol.period();
  auto visits = visit_times(patrol.base, x).times;
  std::size_t hits = 0;
  for (std::size_t n = 0; n < samples; ++n) {
    Rational delta = uniform_rational(rng) * L;
    bool hit = false;
    for (std::size_t i = 0; i < patrol.patrollers && !hit; ++i) {
      // Patroller i is at base time start + delta + i L / m when the attack begins.
      Rational w = mod(start + patrol.offset(delta, i), L);
      for (const auto& v : visits) {
        for (Rational shift = 0; shift <= w + alpha && !hit; shift += L) {
          hit = v.lo + shift <= w + alpha && v.hi + shift >= w;
        }
        if (hit) break;
      }
    }
    hits += hit ? 1 : 0;
  }
  return summarize(hits, samples);
}

MonteCarloResult monte_carlo_pure_patrol(const TimedTour& patrol, const MixedAttack& attack, std::size_t samples,
                                         std::mt19937_64& rng) {
  std::size_t hits = 0;
  for (std::size_t n = 0; n < samples; ++n) {
    Rational uc = uniform_rational(rng), us = uniform_rational(rng), ut = uniform_rational(rng);
    PureAttack a = sample_attack(patrol.network(), attack, uc, us, ut);
    hits += intercepts(patrol, a.at, a.start, attack.alpha) ? 1 : 0;
  }
  return summarize(hits, samples);
}

MonteCarloResult monte_carlo_mixed_vs_attack(const MixedPatrol& patrol, const MixedAttack& attack,
                                             std::size_t samples, std::mt19937_64& rng) {
  std::size_t hits = 0;
  for (std::size_t n = 0; n < samples; ++n) {
    Rational delta = uniform_rational(rng) * patrol.period();
    Rational uc = uniform_rational(rng), us = uniform_rational(rng), ut = uniform_rational(rng);
    PureAttack a = sample_attack(patrol.network(), attack, uc, us, ut);
    bool hit = false;
    for (std::size_t i = 0; i < patrol.patrollers && !hit; ++i) {
      hit = intercepts(patrol.realize(delta, i), a.at, a.start, attack.alpha);
    }
    hits += hit ? 1 : 0;
  }
  return summarize(hits, samples);
}

AttackResponse best_response_attack(const MixedPatrol& patrol, const Rational& alpha, const Rational& step) {
  if (step <= 0) throw PreconditionError("grid step must be positive");
  const MetricNetwork& net = patrol.network();
  std::vector<NetPoint> points;
  for (std::size_t v = 0; v < net.node_count(); ++v) points.push_back(NetPoint::at_node(v));
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    for (Rational o = step; o < net.arc(a).length; o += step) points.push_back(net.point(a, o));
  }
  AttackResponse best;
  bool have = false;
  for (const auto& x : points) {
    Rational p = intercept_mixed_patrol(patrol, x, Rational(0), alpha).probability;
    ++best.points_checked;
    if (!have || p < best.probability) {
      best.at = x;
      best.probability = p;
      have = true;
    }
  }
  best.start = 0;
  return best;
}

PatrolResponse best_response_patrol(const NetworkPtr& net, const MixedAttack& attack, const Rational& step,
                                    std::size_t state_limit) {
  attack.validate(*net);
  Grid grid = make_grid(net, step);
  auto items = discretize_attack(grid, attack);
  long steps = item_horizon(items);
  auto walk = best_grid_walk(grid, items, steps, state_limit);
  TimedTour path = walk_to_path(grid, walk.walk);
  Rational exact = intercept_pure_patrol(path, attack).probability;
  return PatrolResponse{step, steps, items.size(), walk.value, exact, std::move(path), walk.peak_states};
}

}  // namespace patrol
