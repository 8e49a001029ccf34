#include "patrol/attack.hpp"

#include <algorithm>

#include "patrol/errors.hpp"

namespace patrol {

Rational SpatialRegion::length() const {
  Rational total = 0;
  for (const auto& p : pieces) total += p.length();
  return total;
}

std::vector<TemporalPiece> temporal_pieces(const Temporal& when) {
  std::vector<TemporalPiece> out;
  if (const auto* a = std::get_if<TemporalAtom>(&when)) {
    out.push_back({a->t, a->t, Rational(1)});
  } else if (const auto* u = std::get_if<TemporalUniform>(&when)) {
    out.push_back({u->lo, u->hi, Rational(1)});
  } else {
    const auto& knots = std::get<TemporalCdf>(when).knots;
    if (knots.empty()) return out;
    if (knots.front().second > 0) out.push_back({knots.front().first, knots.front().first, knots.front().second});
    for (std::size_t i = 1; i < knots.size(); ++i) {
      Rational mass = knots[i].second - knots[i - 1].second;
      if (mass > 0) out.push_back({knots[i - 1].first, knots[i].first, mass});
    }
  }
  return out;
}

Rational temporal_cdf(const Temporal& when, const Rational& t) {
  Rational total = 0;
  for (const auto& p : temporal_pieces(when)) {
    if (t >= p.hi) {
      total += p.mass;
    } else if (t > p.lo) {
      total += p.mass * (t - p.lo) / (p.hi - p.lo);
    }
  }
  return total;
}

Rational temporal_probability(const Temporal& when, const IntervalSet& starts) {
  Rational total = 0;
  for (const auto& p : temporal_pieces(when)) {
    if (p.lo == p.hi) {
      if (starts.contains(p.lo)) total += p.mass;
    } else {
      total += p.mass * starts.clip(p.lo, p.hi).measure() / (p.hi - p.lo);
    }
  }
  return total;
}

Rational sample_temporal(const Temporal& when, const Rational& u) {
  auto pieces = temporal_pieces(when);
  if (pieces.empty()) throw PreconditionError("empty temporal distribution");
  Rational acc = 0;
  for (const auto& p : pieces) {
    if (u < acc + p.mass) return p.lo + (p.hi - p.lo) * (u - acc) / p.mass;
    acc += p.mass;
  }
  return pieces.back().hi;
}

Rational latest_start(const Temporal& when) {
  Rational latest = 0;
  for (const auto& p : temporal_pieces(when)) latest = max(latest, p.hi);
  return latest;
}

Rational MixedAttack::total_weight() const {
  Rational total = 0;
  for (const auto& c : components) total += c.weight;
  return total;
}

Rational MixedAttack::horizon() const {
  Rational h = alpha;
  for (const auto& c : components) h = max(h, latest_start(c.when) + alpha);
  return h;
}

void MixedAttack::validate(const MetricNetwork& net) const {
  if (alpha <= 0) throw PreconditionError("attack duration must be positive");
  for (const auto& c : components) {
    if (c.weight < 0) throw PreconditionError("negative component weight");
    if (const auto* p = std::get_if<SpatialPoint>(&c.where)) {
      net.check_point(p->at);
    } else {
      const auto& region = std::get<SpatialRegion>(c.where);
      for (const auto& piece : region.pieces) {
        if (piece.arc >= net.arc_count() || piece.lo < 0 || piece.hi > net.arc(piece.arc).length || piece.lo >= piece.hi) {
          throw PreconditionError("region piece outside its arc");
        }
      }
      if (region.length() <= 0) throw PreconditionError("uniform region has zero length");
    }
    if (const auto* u = std::get_if<TemporalUniform>(&c.when)) {
      if (u->hi < u->lo) throw PreconditionError("uniform start interval is reversed");
    } else if (const auto* f = std::get_if<TemporalCdf>(&c.when)) {
      if (f->knots.empty()) throw PreconditionError("cdf without knots");
      if (f->knots.front().second < 0 || f->knots.back().second != 1) throw PreconditionError("cdf must run from 0 to 1");
      for (std::size_t i = 1; i < f->knots.size(); ++i) {
        if (f->knots[i].first < f->knots[i - 1].first || f->knots[i].second < f->knots[i - 1].second) {
          throw PreconditionError("cdf knots must be nondecreasing");
        }
      }
    }
  }
  if (total_weight() != 1) throw PreconditionError("attack weights sum to " + to_string(total_weight()));
}

PureAttack sample_attack(const MetricNetwork& net, const MixedAttack& attack, const Rational& u_component,
                         const Rational& u_space, const Rational& u_time) {
  if (attack.components.empty()) throw PreconditionError("attack has no components");
  const AttackComponent* chosen = &attack.components.back();
  Rational acc = 0;
  for (const auto& c : attack.components) {
    acc += c.weight;
    if (u_component < acc) {
      chosen = &c;
      break;
    }
  }
  PureAttack out;
  out.start = sample_temporal(chosen->when, u_time);
  if (const auto* p = std::get_if<SpatialPoint>(&chosen->where)) {
    out.at = p->at;
    return out;
  }
  const auto& region = std::get<SpatialRegion>(chosen->where);
  Rational target = u_space * region.length();
  for (const auto& piece : region.pieces) {
    if (target < piece.length()) {
      out.at = net.point(piece.arc, piece.lo + target);
      return out;
    }
    target -= piece.length();
  }
  const auto& last = region.pieces.back();
  out.at = net.point(last.arc, last.hi);
  return out;
}

BoundedAttack uniform_attack(const MetricNetwork& net, const Rational& alpha, const Rational& M) {
  if (alpha <= 0) throw PreconditionError("alpha must be positive");
  SpatialRegion all;
  for (std::size_t a = 0; a < net.arc_count(); ++a) all.pieces.push_back({a, Rational(0), net.arc(a).length});
  BoundedAttack out;
  out.attack.alpha = alpha;
  out.attack.components.push_back({Rational(1), all, TemporalAtom{M}, "uniform"});
  out.bound = min(Rational(1), alpha / net.total_length());
  out.family = "uniform";
  return out;
}

std::vector<NetPoint> leaf_points(const MetricNetwork& net) {
  std::vector<NetPoint> out;
  for (const auto& leaf : leaf_arcs(net)) out.push_back(NetPoint::at_node(leaf.leaf));
  return out;
}

IndependentAttack independent_attack(const MetricNetwork& net, const std::vector<NetPoint>& points,
                                     const Rational& alpha) {
  if (alpha <= 0) throw PreconditionError("alpha must be positive");
  if (points.empty()) throw PreconditionError("independent set is empty");
  for (const auto& x : points) net.check_point(x);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      Rational d = net.distance(points[i], points[j]);
      if (d < alpha) {
        throw PreconditionError("points " + net.describe(points[i]) + " and " + net.describe(points[j]) +
                                " are only " + to_string(d) + " apart");
      }
    }
  }
  const Rational half = alpha / 2;
  IndependentAttack out;
  out.points = points;
  out.within.resize(net.arc_count());
  SpatialRegion rest;
  Rational lambda_rest = 0;
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    const Arc& arc = net.arc(a);
    IntervalSet& w = out.within[a];
    for (const auto& x : points) {
      Rational du = net.distance(x, NetPoint::at_node(arc.from));
      Rational dv = net.distance(x, NetPoint::at_node(arc.to));
      if (du < half) w.add(Rational(0), min(arc.length, half - du));
      if (dv < half) w.add(max(Rational(0), arc.length - (half - dv)), arc.length);
      if (!x.is_node() && x.arc() == a) w.add(max(Rational(0), x.offset() - half), min(arc.length, x.offset() + half));
    }
    IntervalSet c = w.complement_in(Rational(0), arc.length);
    for (const auto& iv : c.intervals()) {
      if (iv.length() <= 0) continue;
      rest.pieces.push_back({a, iv.lo, iv.hi});
      lambda_rest += iv.length();
    }
  }
  Rational l = static_cast<long>(points.size());
  out.lambda_within_complement = lambda_rest;
  out.p = l * alpha / (lambda_rest + l * alpha);
  auto& attack = out.bounded.attack;
  attack.alpha = alpha;
  for (const auto& x : points) {
    attack.components.push_back({out.p / l, SpatialPoint{x}, TemporalUniform{Rational(0), alpha}, net.describe(x)});
  }
  if (lambda_rest > 0) attack.components.push_back({1 - out.p, rest, TemporalAtom{half}, "outside W"});
  out.bounded.bound = min(Rational(1), alpha / (lambda_rest + l * alpha));
  out.bounded.family = "independent";
  return out;
}

BoundedAttack e_attack(const MetricNetwork& net, const Rational& alpha) {
  ExtremityProfile prof = extremity_set(net, alpha);
  if (!prof.leaf_condition) {
    throw PreconditionError("the Leaf Condition fails at " + net.describe(*prof.leaf_witness));
  }
  const Rational denom = prof.mu + prof.lambda_E;
  BoundedAttack out;
  out.attack.alpha = alpha;
  for (const auto& c : prof.components) {
    const Rational& e = c.length;
    out.attack.components.push_back({2 * e / denom, SpatialPoint{NetPoint::at_node(c.leaf)},
                                     TemporalUniform{prof.M - e, prof.M + e}, net.node(c.leaf).id});
  }
  SpatialRegion rest;
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    IntervalSet c = prof.complement_on(net, a);
    for (const auto& iv : c.intervals()) rest.pieces.push_back({a, iv.lo, iv.hi});
  }
  if (rest.length() > 0) {
    out.attack.components.push_back({rest.length() / denom, rest, TemporalAtom{prof.M}, "complement of E"});
  }
  out.bound = prof.v_star;
  out.family = "e-attack";
  return out;
}

Star611 star_611_layout(const MetricNetwork& net) {
  auto leaves = leaf_arcs(net);
  if (!net.is_tree() || net.arc_count() != 3 || leaves.size() != 3) {
    throw PreconditionError("expected a star with three leaf arcs");
  }
  Star611 s;
  s.center = leaves[0].attach;
  std::vector<LeafArc> shorts;
  for (const auto& l : leaves) {
    const Rational& len = net.arc(l.arc).length;
    if (len == 1) {
      shorts.push_back(l);
    } else if (len == 6 && s.far == npos) {
      s.far = l.leaf;
      s.far_arc = l.arc;
    }
  }
  if (shorts.size() != 2 || s.far == npos) throw PreconditionError("expected leaf arcs of lengths 1, 1 and 6");
  std::sort(shorts.begin(), shorts.end(),
            [&net](const LeafArc& a, const LeafArc& b) { return net.node(a.leaf).id < net.node(b.leaf).id; });
  s.short1 = shorts[0].leaf;
  s.short2 = shorts[1].leaf;
  return s;
}

namespace {

// Left and right parts of the 6-1-1 attack with the given group weights.
void add_611_sides(const MetricNetwork& net, const Star611& s, const Rational& alpha, const Rational& side_weight,
                   MixedAttack& attack) {
  for (std::size_t leaf : {s.short1, s.short2}) {
    attack.components.push_back({side_weight / 2, SpatialPoint{NetPoint::at_node(leaf)},
                                 TemporalUniform{Rational(1), 1 + alpha}, "left " + net.node(leaf).id});
  }
  TemporalCdf f{{{Rational(0), Rational(0)},
                 {Rational(2), 1 / alpha},
                 {alpha, (alpha - 1) / alpha},
                 {alpha + 2, Rational(1)}}};
  attack.components.push_back({side_weight, SpatialPoint{NetPoint::at_node(s.far)}, f, "right " + net.node(s.far).id});
}

}  // namespace

BoundedAttack attack_611(const MetricNetwork& net, const Rational& alpha) {
  if (alpha < 4 || alpha > 8) throw PreconditionError("the 6-1-1 attack needs 4 <= alpha <= 8");
  Star611 s = star_611_layout(net);
  const Rational theta = 2 * (8 + alpha);
  BoundedAttack out;
  out.attack.alpha = alpha;
  add_611_sides(net, s, alpha, 2 * alpha / theta, out.attack);
  // The complement of E is the stretch of the long arc between alpha/2 - 2 from the center
  // and alpha/2 from the far leaf.
  const Arc& arc = net.arc(s.far_arc);
  Rational from_center_lo = alpha / 2 - 2, from_center_hi = 6 - alpha / 2;
  if (from_center_hi > from_center_lo) {
    ArcInterval piece = arc.from == s.center ? ArcInterval{s.far_arc, from_center_lo, from_center_hi}
                                             : ArcInterval{s.far_arc, 6 - from_center_hi, 6 - from_center_lo};
    Rational w = 2 * piece.length() / theta;
    out.attack.components.push_back({w / 2, SpatialRegion{{piece}}, TemporalAtom{alpha / 2}, "middle early"});
    out.attack.components.push_back({w / 2, SpatialRegion{{piece}}, TemporalAtom{alpha / 2 + 2}, "middle late"});
  }
  out.bound = 2 * alpha / theta;
  out.family = "6-1-1";
  return out;
}

BoundedAttack attack_611_extended(const MetricNetwork& net, const Rational& alpha) {
  if (alpha <= 8) throw PreconditionError("the extended 6-1-1 attack is for alpha > 8");
  Star611 s = star_611_layout(net);
  BoundedAttack out;
  out.attack.alpha = alpha;
  add_611_sides(net, s, alpha, Rational(1, 2), out.attack);
  out.bound = Rational(1, 2);
  out.family = "6-1-1 extended";
  return out;
}

TimedTour counter_patrol_611(const NetworkPtr& net, const Rational& alpha) {
  Star611 s = star_611_layout(*net);
  if (alpha < 1) throw PreconditionError("the counter-patrol needs alpha >= 1");
  PathBuilder b(net, NetPoint::at_node(s.short2));
  b.pause_until(alpha - 1);
  b.walk_to(NetPoint::at_node(s.short1));
  b.walk_to(NetPoint::at_node(s.short2));
  b.walk_to(NetPoint::at_node(s.far));
  return b.open();
}

BoundedAttack attack_fig8_tree(const MetricNetwork& net, const Rational& alpha) {
  if (alpha != 6) throw PreconditionError("the four-leaf tree attack is stated for alpha = 6");
  if (!net.is_tree() || net.total_length() != 6) throw PreconditionError("expected a tree of total length 6");
  auto leaf = [&net](const char* id) {
    auto v = net.find_node(id);
    if (!v || net.degree(*v) != 1) throw PreconditionError(std::string("expected leaf node ") + id);
    return NetPoint::at_node(*v);
  };
  if (leaf_arcs(net).size() != 4) throw PreconditionError("expected four leaves");
  BoundedAttack out;
  out.attack.alpha = alpha;
  auto& c = out.attack.components;
  c.push_back({Rational(6, 24), SpatialPoint{leaf("1")}, TemporalUniform{Rational(0), Rational(6)}, "leaf 1"});
  c.push_back({Rational(6, 24), SpatialPoint{leaf("2")}, TemporalUniform{Rational(0), Rational(6)}, "leaf 2"});
  c.push_back({Rational(8, 24), SpatialPoint{leaf("6")},
               TemporalCdf{{{Rational(0), Rational(0)},
                            {Rational(2), Rational(1, 4)},
                            {Rational(4), Rational(3, 4)},
                            {Rational(6), Rational(1)}}},
               "leaf 6"});
  c.push_back({Rational(4, 24), SpatialPoint{leaf("7")}, TemporalUniform{Rational(1), Rational(5)}, "leaf 7"});
  out.bound = Rational(1, 2);
  out.family = "four-leaf tree";
  return out;
}

}  // namespace patrol
