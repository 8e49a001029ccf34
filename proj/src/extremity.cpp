#include "patrol/extremity.hpp"

#include <algorithm>
#include <numeric>

#include "patrol/errors.hpp"

namespace patrol {
namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Nodes (or arc-point keys) in the closure of an open arc interval.
std::vector<NetPoint> closure_ends(const MetricNetwork& net, const ArcInterval& piece) {
  return {net.point(piece.arc, piece.lo), net.point(piece.arc, piece.hi)};
}

}  // namespace

Rational from_side_mass(const MetricNetwork& net, std::size_t arc) {
  auto reach = shortest_paths(net, net.arc(arc).from, arc);
  Rational mass = 0;
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    if (a != arc && reach[net.arc(a).from] && reach[net.arc(a).to]) mass += net.arc(a).length;
  }
  return mass;
}

bool ExtremityProfile::contains(const MetricNetwork& net, const NetPoint& x) const {
  net.check_point(x);
  if (x.is_node()) return false;
  for (const auto& p : regions[x.arc()]) {
    if (p.lo < x.offset() && x.offset() < p.hi) return true;
  }
  return false;
}

bool ExtremityProfile::closure_contains(const MetricNetwork& net, const NetPoint& x) const {
  return closure_component_of(net, x) != npos;
}

std::size_t ExtremityProfile::closure_component_of(const MetricNetwork& net, const NetPoint& x) const {
  net.check_point(x);
  for (std::size_t c = 0; c < closure_components.size(); ++c) {
    const auto& comp = closure_components[c];
    if (x.is_node()) {
      if (std::find(comp.nodes.begin(), comp.nodes.end(), x.node()) != comp.nodes.end()) return c;
      continue;
    }
    for (auto m : comp.members) {
      const auto& p = components[m].piece;
      if (p.arc == x.arc() && p.lo <= x.offset() && x.offset() <= p.hi) return c;
    }
  }
  return npos;
}

IntervalSet ExtremityProfile::complement_on(const MetricNetwork& net, std::size_t arc) const {
  IntervalSet in_e;
  for (const auto& p : regions.at(arc)) in_e.add(p.lo, p.hi);
  IntervalSet out;
  // Keep only pieces of positive length; isolated boundary points carry no measure.
  IntervalSet rest = in_e.complement_in(Rational(0), net.arc(arc).length);
  for (const auto& iv : rest.intervals()) {
    if (iv.length() > 0) out.add(iv);
  }
  return out;
}

ExtremityProfile extremity_set(const MetricNetwork& net, const Rational& alpha) {
  if (!net.is_tree()) throw PreconditionError("the extremity set is defined on trees only");
  if (alpha <= 0) throw PreconditionError("alpha must be positive");
  ExtremityProfile prof;
  prof.alpha = alpha;
  prof.mu = net.total_length();
  prof.regions.resize(net.arc_count());
  const Rational half = alpha / 2;

  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    const Rational& len = net.arc(a).length;
    Rational su = from_side_mass(net, a);
    Rational sv = prof.mu - su - len;
    std::vector<ArcInterval> pieces;
    if (half - su > 0) pieces.push_back({a, Rational(0), min(len, half - su)});
    if (half - sv > 0) pieces.push_back({a, max(Rational(0), len - (half - sv)), len});
    if (pieces.size() == 2 && pieces[0].hi > pieces[1].lo) pieces = {{a, Rational(0), len}};
    prof.regions[a] = pieces;
    for (const auto& p : pieces) {
      EComponent c{p, p.length(), npos};
      for (const auto& end : closure_ends(net, p)) {
        if (end.is_node() && net.degree(end.node()) == 1) c.leaf = end.node();
      }
      prof.components.push_back(c);
      prof.lambda_E += p.length();
    }
  }

  // Components of the closure: join members sharing a node or a touching point.
  const std::size_t n = prof.components.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool touch = false;
      for (const auto& x : closure_ends(net, prof.components[i].piece)) {
        for (const auto& y : closure_ends(net, prof.components[j].piece)) touch = touch || x == y;
      }
      if (touch) parent[find_root(parent, i)] = find_root(parent, j);
    }
  }
  std::vector<std::size_t> slot(n, npos);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find_root(parent, i);
    if (slot[r] == npos) {
      slot[r] = prof.closure_components.size();
      prof.closure_components.emplace_back();
    }
    auto& comp = prof.closure_components[slot[r]];
    comp.members.push_back(i);
    comp.length += prof.components[i].length;
    for (const auto& x : closure_ends(net, prof.components[i].piece)) {
      if (x.is_node() && std::find(comp.nodes.begin(), comp.nodes.end(), x.node()) == comp.nodes.end()) {
        comp.nodes.push_back(x.node());
      }
    }
  }
  for (auto& comp : prof.closure_components) std::sort(comp.nodes.begin(), comp.nodes.end());

  for (const auto& c : prof.components) prof.M = max(prof.M, c.length);
  auto lc = leaf_condition(prof, net, alpha);
  prof.leaf_condition = lc.holds;
  prof.leaf_witness = lc.witness;
  prof.v_star = min(Rational(1), alpha / (prof.mu + prof.lambda_E));
  prof.trivial = alpha >= 2 * prof.mu;
  return prof;
}

LeafConditionResult leaf_condition(const ExtremityProfile& profile, const MetricNetwork& net, const Rational& alpha) {
  const Rational half = alpha / 2;
  std::vector<std::vector<ArcInterval>> expected(net.arc_count());
  for (const auto& leaf : leaf_arcs(net)) {
    const Arc& a = net.arc(leaf.arc);
    Rational reach = min(a.length, half);
    ArcInterval piece = leaf.leaf == a.from ? ArcInterval{leaf.arc, Rational(0), reach}
                                            : ArcInterval{leaf.arc, a.length - reach, a.length};
    // A single-arc tree has two leaf ends on one arc.
    if (!expected[leaf.arc].empty()) {
      auto& other = expected[leaf.arc].front();
      if (other.hi >= piece.lo && piece.hi >= other.lo) {
        other = {leaf.arc, min(other.lo, piece.lo), max(other.hi, piece.hi)};
        continue;
      }
    }
    expected[leaf.arc].push_back(piece);
    std::sort(expected[leaf.arc].begin(), expected[leaf.arc].end(),
              [](const ArcInterval& x, const ArcInterval& y) { return x.lo < y.lo; });
  }
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    const auto& have = profile.regions.at(a);
    if (have == expected[a]) continue;
    IntervalSet h, e;
    for (const auto& p : have) h.add(p.lo, p.hi);
    for (const auto& p : expected[a]) e.add(p.lo, p.hi);
    const Rational len = net.arc(a).length;
    for (const auto* pair : {&h, &e}) {
      const IntervalSet& x = *pair;
      const IntervalSet& y = pair == &h ? e : h;
      IntervalSet only = x.intersect(y.complement_in(Rational(0), len));
      for (const auto& piece : only.intervals()) {
        if (piece.length() > 0) return {false, net.point(a, (piece.lo + piece.hi) / 2)};
      }
    }
    // Same closure: the sets differ at a boundary point that splits one of them.
    std::vector<Rational> ends;
    for (const auto& p : have) {
      ends.push_back(p.lo);
      ends.push_back(p.hi);
    }
    for (const auto& p : expected[a]) {
      ends.push_back(p.lo);
      ends.push_back(p.hi);
    }
    for (const auto& t : ends) {
      if (t <= 0 || t >= len) continue;
      auto inside = [&t](const std::vector<ArcInterval>& v) {
        return std::any_of(v.begin(), v.end(), [&t](const ArcInterval& p) { return p.lo < t && t < p.hi; });
      };
      if (inside(have) != inside(expected[a])) return {false, net.point(a, t)};
    }
    return {false, net.point(a, len / 2)};
  }
  return {true, std::nullopt};
}

Rational conjectured_value(const MetricNetwork& net, const Rational& alpha) { return extremity_set(net, alpha).v_star; }

}  // namespace patrol
