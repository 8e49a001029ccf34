#include "patrol/visits.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "patrol/errors.hpp"

namespace patrol {
namespace {

Rational circular(const Rational& delta, const Rational& period) {
  Rational d = mod(delta, period);
  return min(d, period - d);
}

// Largest circular distance between a point of [a.lo, a.hi] and a point of [b.lo, b.hi].
Rational max_circular(const Interval& a, const Interval& b, const Rational& period) {
  Rational lo = b.lo - a.hi;
  Rational hi = b.hi - a.lo;
  Rational half = period / 2;
  // Is some half + n * period inside [lo, hi]?
  Rational first = floor((lo - half) / period);
  for (Rational n = first; n <= first + 1; n += 1) {
    Rational v = half + n * period;
    if (lo <= v && v <= hi) return half;
  }
  return max(circular(lo, period), circular(hi, period));
}

Rational min_gap(std::vector<Rational> pts, const Rational& period) {
  for (auto& p : pts) p = mod(p, period);
  std::sort(pts.begin(), pts.end());
  Rational gap = pts.front() + period - pts.back();
  for (std::size_t i = 1; i < pts.size(); ++i) gap = min(gap, pts[i] - pts[i - 1]);
  return gap;
}

std::optional<Rational> separation_of_points(const std::vector<Rational>& pts, const Rational& period, std::size_t k) {
  if (pts.size() < k) return std::nullopt;
  if (k == 1) return period;
  if (k == 2) {
    Rational best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) best = max(best, circular(pts[j] - pts[i], period));
    }
    return best;
  }
  if (pts.size() > 24) throw PreconditionError("too many visits for a k-subset search");
  std::optional<Rational> best;
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t pos, std::size_t from) {
    if (pos == k) {
      std::vector<Rational> sub;
      for (auto i : idx) sub.push_back(pts[i]);
      Rational g = min_gap(sub, period);
      if (!best || g > *best) best = g;
      return;
    }
    for (std::size_t i = from; i + (k - pos) <= pts.size(); ++i) {
      idx[pos] = i;
      choose(pos + 1, i + 1);
    }
  };
  choose(0, 0);
  return best;
}

struct Affine {
  Rational c;
  int slope;
  Rational at(const Rational& o) const { return c + slope * o; }
};

}  // namespace

VisitTimeSet visit_times(const TimedTour& tour, const NetPoint& x) {
  const MetricNetwork& net = tour.network();
  net.check_point(x);
  IntervalSet set;
  for (const auto& s : tour.segments()) {
    if (s.is_pause()) {
      if (s.pause().at == x) set.add(s.t0, s.t1);
      continue;
    }
    const Move& m = s.move();
    if (x.is_node()) {
      if (net.point(m.arc, m.from) == x) set.add(s.t0, s.t0);
      if (net.point(m.arc, m.to) == x) set.add(s.t1, s.t1);
    } else if (x.arc() == m.arc) {
      const Rational& o = x.offset();
      if (min(m.from, m.to) <= o && o <= max(m.from, m.to)) {
        Rational t = s.t0 + abs(o - m.from);
        set.add(t, t);
      }
    }
  }
  VisitTimeSet out;
  if (tour.closed()) {
    const Rational& L = tour.period();
    IntervalSet wrapped;
    for (const auto& iv : set.intervals()) {
      if (iv.lo == L) {
        wrapped.add(Rational(0), Rational(0));
      } else {
        wrapped.add(iv);
        if (iv.hi == L) wrapped.add(Rational(0), Rational(0));
      }
    }
    out.times = wrapped.intervals();
  } else {
    out.times = set.intervals();
    out.held_after_end = tour.end_point() == x;
  }
  return out;
}

std::vector<Interval> visit_times_until(const TimedTour& tour, const NetPoint& x, const Rational& horizon) {
  VisitTimeSet base = visit_times(tour, x);
  IntervalSet out;
  if (tour.closed()) {
    const Rational& L = tour.period();
    for (Rational shift = 0; shift <= horizon; shift += L) {
      for (const auto& iv : base.times) {
        if (iv.lo + shift > horizon) continue;
        out.add(iv.lo + shift, min(iv.hi + shift, horizon));
      }
    }
  } else {
    for (const auto& iv : base.times) {
      if (iv.lo <= horizon) out.add(iv.lo, min(iv.hi, horizon));
    }
    if (base.held_after_end && tour.period() <= horizon) out.add(tour.period(), horizon);
  }
  return out.intervals();
}

std::optional<Rational> point_separation(const std::vector<Interval>& times, const Rational& period, std::size_t k) {
  if (k == 0) throw PreconditionError("k must be at least 1");
  if (times.empty()) return std::nullopt;
  if (k == 1) return period;
  bool all_points = std::all_of(times.begin(), times.end(), [](const Interval& iv) { return iv.lo == iv.hi; });
  if (all_points) {
    std::vector<Rational> pts;
    for (const auto& iv : times) pts.push_back(iv.lo);
    return separation_of_points(pts, period, k);
  }
  if (k == 2) {
    Rational best = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      for (std::size_t j = i; j < times.size(); ++j) best = max(best, max_circular(times[i], times[j], period));
    }
    return best;
  }
  // Conservative for k >= 3: a finite subset of the visit times.
  std::vector<Rational> pts;
  for (const auto& iv : times) {
    pts.push_back(iv.lo);
    if (iv.hi == iv.lo) continue;
    for (std::size_t i = 1; i < k; ++i) pts.push_back(iv.lo + (iv.hi - iv.lo) * Rational(static_cast<long>(i), static_cast<long>(k)));
    pts.push_back(iv.hi);
  }
  return separation_of_points(pts, period, k);
}

SeparationReport visit_separation(const TimedTour& tour, std::size_t k, const Rational& sample_density,
                                  const std::vector<NetPoint>& extra_points, std::size_t patrollers) {
  if (!tour.closed()) throw PreconditionError("visit separation needs a closed tour");
  if (k == 0) throw PreconditionError("k must be at least 1");
  if (patrollers == 0) throw PreconditionError("at least one patroller is needed");
  if (sample_density <= 0) throw PreconditionError("sample density must be positive");
  const MetricNetwork& net = tour.network();
  // m evenly offset copies of the tour repeat with period L / m.
  const Rational L = tour.period() / static_cast<long>(patrollers);

  SeparationReport report;
  report.k = k;
  bool have = false;
  auto consider = [&](const Rational& value, const NetPoint& where) {
    ++report.checkpoints;
    if (!have || value < report.alpha0) {
      report.alpha0 = value;
      report.witness = where;
      have = true;
    }
  };
  auto exact_at = [&](const NetPoint& x) {
    auto s = point_separation(visit_times(tour, x).times, L, k);
    if (!s) throw PreconditionError("point " + net.describe(x) + " is visited fewer than k times");
    return *s;
  };

  for (std::size_t v = 0; v < net.node_count(); ++v) consider(exact_at(NetPoint::at_node(v)), NetPoint::at_node(v));

  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    const Rational& len = net.arc(a).length;
    std::set<Rational> splits{Rational(0), len};
    for (const auto& s : tour.segments()) {
      if (s.is_pause()) {
        if (!s.pause().at.is_node() && s.pause().at.arc() == a) splits.insert(s.pause().at.offset());
      } else if (s.move().arc == a) {
        splits.insert(s.move().from);
        splits.insert(s.move().to);
      }
    }
    std::vector<Rational> cuts(splits.begin(), splits.end());
    for (std::size_t i = 1; i + 1 < cuts.size(); ++i) consider(exact_at(net.point(a, cuts[i])), net.point(a, cuts[i]));

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Rational& p = cuts[i];
      const Rational& q = cuts[i + 1];
      std::vector<Affine> forms;
      for (const auto& s : tour.segments()) {
        if (s.is_pause() || s.move().arc != a) continue;
        const Move& m = s.move();
        if (min(m.from, m.to) <= p && q <= max(m.from, m.to)) {
          int slope = m.to > m.from ? 1 : -1;
          forms.push_back({s.t0 - slope * m.from, slope});
        }
      }
      if (forms.size() < k) {
        throw PreconditionError("point " + net.describe(net.point(a, (p + q) / 2)) + " is visited fewer than k times");
      }
      // Kinks of the separation lie where two difference forms meet modulo L/2.
      std::vector<Affine> diffs{{Rational(0), 0}};
      for (std::size_t x = 0; x < forms.size(); ++x) {
        for (std::size_t y = x + 1; y < forms.size(); ++y) {
          diffs.push_back({forms[x].c - forms[y].c, forms[x].slope - forms[y].slope});
        }
      }
      std::set<Rational> candidates{p, q};
      Rational half = L / 2;
      for (std::size_t x = 0; x < diffs.size(); ++x) {
        for (std::size_t y = x; y < diffs.size(); ++y) {
          for (int sign : {1, -1}) {
            int slope = diffs[x].slope - sign * diffs[y].slope;
            if (slope == 0) continue;
            Rational base = diffs[x].c - sign * diffs[y].c;
            Rational vp = base + slope * p, vq = base + slope * q;
            Rational n_lo = floor(min(vp, vq) / half), n_hi = floor(max(vp, vq) / half) + 1;
            for (Rational n = n_lo; n <= n_hi; n += 1) {
              Rational o = (n * half - base) / slope;
              if (p < o && o < q) candidates.insert(o);
            }
          }
        }
      }
      for (const auto& o : candidates) {
        std::vector<Rational> pts;
        for (const auto& f : forms) pts.push_back(f.at(o));
        consider(*separation_of_points(pts, L, k), net.point(a, o));
      }
    }
  }

  // Sampled overlay.
  bool sampled = false;
  auto sample = [&](const NetPoint& x) {
    Rational s = exact_at(x);
    ++report.samples;
    if (!sampled || s < report.sampled_min) report.sampled_min = s;
    sampled = true;
  };
  for (std::size_t v = 0; v < net.node_count(); ++v) sample(NetPoint::at_node(v));
  for (const auto& x : extra_points) sample(x);
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    for (Rational o = sample_density; o < net.arc(a).length; o += sample_density) sample(net.point(a, o));
  }
  return report;
}

}  // namespace patrol
