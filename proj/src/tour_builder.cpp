#include "patrol/tour_builder.hpp"

#include <algorithm>
#include <tuple>

#include "patrol/errors.hpp"

namespace patrol {
namespace {

bool primed(const Arc& a) { return !a.id.empty() && a.id.back() == '\''; }

Passage arrival(const MetricNetwork& net, const DirectedStep& s) {
  return {net.arc(s.arc).endpoint(1 - s.from_end), s.arc, 1 - s.from_end};
}

Passage departure(const MetricNetwork& net, const DirectedStep& s) {
  return {net.arc(s.arc).endpoint(s.from_end), s.arc, s.from_end};
}

// Builds *-circuits one at a time over a shared traversed set.
class CircuitRunner {
 public:
  CircuitRunner(const MetricNetwork& net, const PassagePairing& pairing)
      : net_(net), pairing_(pairing), traversed_(net.arc_count(), false) {}

  bool done() const { return std::all_of(traversed_.begin(), traversed_.end(), [](bool b) { return b; }); }

  std::vector<Passage> untraversed(std::size_t node) const {
    std::vector<Passage> out;
    for (const auto& p : net_.passages(node)) {
      if (!traversed_[p.arc]) out.push_back(p);
    }
    return out;
  }

  // Preferred passage: original copies, then arcs returning to the circuit start, then arc id.
  const Passage& pick(const std::vector<Passage>& candidates, std::size_t start) const {
    if (candidates.empty()) throw PreconditionError("paired Euler construction is stuck");
    auto key = [&](const Passage& p) {
      const Arc& a = net_.arc(p.arc);
      return std::make_tuple(primed(a), a.endpoint(1 - p.end) != start, std::string_view(a.id), p.end);
    };
    return *std::min_element(candidates.begin(), candidates.end(),
                             [&](const Passage& x, const Passage& y) { return key(x) < key(y); });
  }

  std::vector<DirectedStep> run(std::size_t start, const Passage& first) {
    std::vector<DirectedStep> steps;
    std::size_t cur = start;
    Passage leave = first;
    while (true) {
      traversed_[leave.arc] = true;
      DirectedStep step{leave.arc, leave.end};
      steps.push_back(step);
      Passage arrive = arrival(net_, step);
      cur = arrive.node;
      auto avail = untraversed(cur);
      if (avail.empty()) {
        if (cur != start) throw PreconditionError("paired Euler circuit ended away from its start");
        break;
      }
      std::vector<Passage> candidates;
      const Passage& first_pair = pairing_.partner(first);
      if (cur == start && avail.size() == 2 && std::find(avail.begin(), avail.end(), first_pair) != avail.end()) {
        candidates = {first_pair};
      } else if (avail.size() == 3) {
        std::vector<Passage> pair_members;
        for (std::size_t i = 0; i < 3; ++i) {
          for (std::size_t j = i + 1; j < 3; ++j) {
            if (pairing_.paired(avail[i], avail[j])) {
              pair_members.push_back(avail[i]);
              pair_members.push_back(avail[j]);
            }
          }
        }
        candidates = pair_members.size() == 2 ? pair_members : avail;
      } else {
        candidates = avail;
      }
      std::erase_if(candidates, [&](const Passage& p) { return pairing_.paired(p, arrive); });
      leave = pick(candidates, start);
    }
    return steps;
  }

  const MetricNetwork& net_;
  const PassagePairing& pairing_;
  std::vector<bool> traversed_;
};

// Appends the tour described by mapped moves; `emit(step)` must add the moves of one step.
template <typename Emit>
TimedTour build_closed(const NetworkPtr& net, NetPoint start, std::size_t count, Emit emit) {
  PathBuilder builder(net, start);
  for (std::size_t i = 0; i < count; ++i) emit(builder, i);
  return builder.close();
}

}  // namespace

PassagePairing::PassagePairing(const MetricNetwork& net, std::vector<std::array<Passage, 2>> partner)
    : partner_(std::move(partner)) {
  if (partner_.size() != net.arc_count()) throw PreconditionError("pairing does not cover every arc");
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    for (int end = 0; end < 2; ++end) {
      Passage self{net.arc(a).endpoint(end), a, end};
      const Passage& q = partner_[a][end];
      if (q.arc >= net.arc_count() || (q.end != 0 && q.end != 1)) throw PreconditionError("pairing names an unknown passage");
      if (q == self) throw PreconditionError("passage paired with itself");
      if (q.node != self.node || net.arc(q.arc).endpoint(q.end) != self.node) {
        throw PreconditionError("paired passages must share their node");
      }
      if (!(partner_[q.arc][q.end] == self)) throw PreconditionError("pairing is not an involution");
    }
  }
}

DoubledNetwork double_network(const MetricNetwork& net) {
  std::vector<bool> leaf(net.node_count(), false);
  for (std::size_t v = 0; v < net.node_count(); ++v) leaf[v] = net.degree(v) == 1;

  std::vector<std::size_t> node_map(net.node_count(), npos);
  std::vector<Node> nodes;
  std::vector<std::size_t> source_node;
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (leaf[v]) continue;
    node_map[v] = nodes.size();
    nodes.push_back(net.node(v));
    source_node.push_back(v);
  }
  if (nodes.empty()) throw PreconditionError("the single-arc network has no doubled form");

  std::vector<Arc> arcs;
  std::vector<std::size_t> source_arc;
  std::vector<bool> copy, leaf_loop;
  std::vector<std::array<Passage, 2>> partner;
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    const Arc& arc = net.arc(a);
    if (leaf[arc.from] || leaf[arc.to]) {
      std::size_t attach = node_map[leaf[arc.from] ? arc.to : arc.from];
      std::size_t i = arcs.size();
      arcs.push_back({arc.id, attach, attach, 2 * arc.length});
      source_arc.push_back(a);
      copy.push_back(false);
      leaf_loop.push_back(true);
      partner.push_back({Passage{attach, i, 1}, Passage{attach, i, 0}});
      continue;
    }
    std::size_t i = arcs.size();
    std::size_t u = node_map[arc.from], v = node_map[arc.to];
    arcs.push_back({arc.id, u, v, arc.length});
    arcs.push_back({arc.id + "'", u, v, arc.length});
    for (int c = 0; c < 2; ++c) {
      source_arc.push_back(a);
      copy.push_back(c == 1);
      leaf_loop.push_back(false);
    }
    partner.push_back({Passage{u, i + 1, 0}, Passage{v, i + 1, 1}});
    partner.push_back({Passage{u, i, 0}, Passage{v, i, 1}});
  }
  auto doubled = share(MetricNetwork(std::move(nodes), std::move(arcs)));
  PassagePairing pairing(*doubled, std::move(partner));
  return DoubledNetwork{doubled, std::move(pairing), std::move(source_arc), std::move(copy), std::move(leaf_loop),
                        std::move(source_node)};
}

std::vector<DirectedStep> paired_euler_circuit(const MetricNetwork& net, const PassagePairing& pairing,
                                               std::size_t start) {
  if (!net.is_eulerian()) throw PreconditionError("network is not Eulerian");
  if (start >= net.node_count()) throw PreconditionError("start node out of range");
  CircuitRunner runner(net, pairing);
  auto tour = runner.run(start, runner.pick(runner.untraversed(start), start));

  while (!runner.done()) {
    // First visit of the current tour at a node that still has untraversed passages.
    std::size_t at = npos;
    for (std::size_t i = 0; i < tour.size() && at == npos; ++i) {
      if (!runner.untraversed(departure(net, tour[i]).node).empty()) at = i;
    }
    if (at == npos) throw PreconditionError("paired Euler construction is stuck");
    const Passage a = departure(net, tour[at]);
    const Passage b = arrival(net, tour[(at + tour.size() - 1) % tour.size()]);
    std::size_t z = a.node;
    auto avail = runner.untraversed(z);
    Passage d;
    const Passage& a_pair = pairing.partner(a);
    if (std::find(avail.begin(), avail.end(), a_pair) != avail.end()) {
      d = a_pair;
    } else {
      std::erase_if(avail, [&](const Passage& p) { return pairing.paired(p, b); });
      d = runner.pick(avail, z);
    }
    auto sub = runner.run(z, d);
    tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(at), sub.begin(), sub.end());
  }
  if (!respects_pairing(net, pairing, tour)) throw PreconditionError("paired Euler circuit violates the pairing");
  return tour;
}

bool respects_pairing(const MetricNetwork& net, const PassagePairing& pairing, const std::vector<DirectedStep>& circuit) {
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const auto& next = circuit[(i + 1) % circuit.size()];
    Passage in = arrival(net, circuit[i]);
    Passage out = departure(net, next);
    if (in.node != out.node) return false;
    if (pairing.paired(in, out)) return false;
  }
  return true;
}

TimedTour tour_from_steps(const NetworkPtr& net, std::size_t start, const std::vector<DirectedStep>& steps,
                          const std::vector<Rational>& pauses) {
  return build_closed(net, NetPoint::at_node(start), steps.size(), [&](PathBuilder& b, std::size_t i) {
    b.traverse(steps[i].arc, steps[i].from_end);
    if (i < pauses.size()) b.pause(pauses[i]);
  });
}

TimedTour paired_euler_tour(const NetworkPtr& net, const PassagePairing& pairing, std::size_t start) {
  return tour_from_steps(net, start, paired_euler_circuit(*net, pairing, start));
}

std::vector<DirectedStep> euler_circuit(const MetricNetwork& net, std::size_t start) {
  if (!net.is_eulerian()) throw PreconditionError("network is not Eulerian");
  // Hierholzer: extend a trail until stuck, emitting steps as the stack unwinds.
  std::vector<bool> used(net.arc_count(), false);
  std::vector<std::size_t> next(net.node_count(), 0);
  std::vector<std::pair<std::size_t, DirectedStep>> stack{{start, {npos, 0}}};
  std::vector<DirectedStep> circuit;
  while (!stack.empty()) {
    std::size_t v = stack.back().first;
    const auto& ps = net.passages(v);
    while (next[v] < ps.size() && used[ps[next[v]].arc]) ++next[v];
    if (next[v] < ps.size()) {
      const Passage& p = ps[next[v]];
      used[p.arc] = true;
      stack.push_back({net.arc(p.arc).endpoint(1 - p.end), {p.arc, p.end}});
    } else {
      if (stack.back().second.arc != npos) circuit.push_back(stack.back().second);
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

TimedTour euler_tour(const NetworkPtr& net, std::size_t start) { return tour_from_steps(net, start, euler_circuit(*net, start)); }

std::vector<DirectedStep> tree_dfs_steps(const MetricNetwork& net, std::size_t root, const ChildOrder& order) {
  if (!net.is_tree()) throw PreconditionError("network is not a tree");
  ChildOrder less = order ? order : [&net](std::size_t, std::size_t x, std::size_t y) {
    return net.arc(x).id < net.arc(y).id;
  };
  std::vector<DirectedStep> steps;
  auto visit = [&](auto&& self, std::size_t node, std::size_t parent_arc) -> void {
    std::vector<Passage> children;
    for (const auto& p : net.passages(node)) {
      if (p.arc != parent_arc) children.push_back(p);
    }
    std::stable_sort(children.begin(), children.end(),
                     [&](const Passage& x, const Passage& y) { return less(node, x.arc, y.arc); });
    for (const auto& p : children) {
      steps.push_back({p.arc, p.end});
      self(self, net.arc(p.arc).endpoint(1 - p.end), p.arc);
      steps.push_back({p.arc, 1 - p.end});
    }
  };
  visit(visit, root, npos);
  return steps;
}

TimedTour tree_cpt(const NetworkPtr& net, const NetPoint& start, const ChildOrder& order) {
  if (!net->is_tree()) throw PreconditionError("network is not a tree");
  net->check_point(start);
  if (start.is_node()) return tour_from_steps(net, start.node(), tree_dfs_steps(*net, start.node(), order));

  Subdivision sub = subdivide(*net, {start});
  std::size_t root = sub.from_original(start).node();
  ChildOrder refined_order;
  if (order) {
    refined_order = [&](std::size_t node, std::size_t x, std::size_t y) {
      return order(sub.original_node[node], sub.pieces[x].arc, sub.pieces[y].arc);
    };
  } else {
    refined_order = [&](std::size_t, std::size_t x, std::size_t y) {
      return net->arc(sub.pieces[x].arc).id < net->arc(sub.pieces[y].arc).id;
    };
  }
  auto steps = tree_dfs_steps(sub.network, root, refined_order);
  return build_closed(net, start, steps.size(), [&](PathBuilder& b, std::size_t i) {
    const auto& piece = sub.pieces[steps[i].arc];
    if (steps[i].from_end == 0) {
      b.move(piece.arc, piece.lo, piece.hi);
    } else {
      b.move(piece.arc, piece.hi, piece.lo);
    }
  });
}

std::vector<DirectedStep> double_cover_circuit(const DoubledNetwork& doubled, std::optional<std::size_t> start) {
  return paired_euler_circuit(*doubled.network, doubled.pairing, start.value_or(0));
}

namespace {

TimedTour double_cover_with_pauses(const NetworkPtr& net, const Rational& leaf_pause, std::optional<std::size_t> start) {
  const MetricNetwork& g = *net;
  bool single_arc = g.arc_count() == 1 && g.node_count() == 2;
  if (single_arc) {
    std::size_t s = start.value_or(g.arc(0).from);
    int from_end = s == g.arc(0).from ? 0 : 1;
    PathBuilder b(net, NetPoint::at_node(s));
    b.traverse(0, from_end).pause(leaf_pause).traverse(0, 1 - from_end).pause(leaf_pause);
    return b.close();
  }
  DoubledNetwork doubled = double_network(g);
  std::size_t dstart = 0;
  if (start) {
    auto it = std::find(doubled.source_node.begin(), doubled.source_node.end(), *start);
    if (it == doubled.source_node.end()) throw PreconditionError("a double cover cannot start at a leaf node");
    dstart = static_cast<std::size_t>(it - doubled.source_node.begin());
  }
  auto circuit = double_cover_circuit(doubled, dstart);
  NetPoint origin = NetPoint::at_node(doubled.source_node[dstart]);
  return build_closed(net, origin, circuit.size(), [&](PathBuilder& b, std::size_t i) {
    const DirectedStep& s = circuit[i];
    std::size_t a = doubled.source_arc[s.arc];
    if (doubled.leaf_loop[s.arc]) {
      const Arc& arc = g.arc(a);
      int out_end = g.degree(arc.from) == 1 ? 1 : 0;
      b.traverse(a, out_end).pause(leaf_pause).traverse(a, 1 - out_end);
    } else {
      b.traverse(a, s.from_end);
    }
  });
}

}  // namespace

TimedTour double_cover_tour(const NetworkPtr& net, std::optional<std::size_t> start) {
  return double_cover_with_pauses(net, Rational(0), start);
}

TimedTour leaf_pause_tour(const NetworkPtr& net, const Rational& alpha, std::optional<std::size_t> start) {
  if (alpha <= 0) throw PreconditionError("alpha must be positive");
  return double_cover_with_pauses(net, alpha, start);
}

TimedTour two_node_alternating_tour(const NetworkPtr& net) {
  const MetricNetwork& g = *net;
  if (g.node_count() != 2) throw PreconditionError("alternating tour needs exactly two nodes");
  if (g.arc_count() % 2 == 0) throw PreconditionError("alternating tour needs an odd number of arcs");
  std::vector<std::size_t> order(g.arc_count());
  for (std::size_t a = 0; a < order.size(); ++a) {
    if (g.arc(a).is_loop()) throw PreconditionError("alternating tour does not accept loops");
    order[a] = a;
  }
  std::stable_sort(order.begin(), order.end(), [&g](std::size_t x, std::size_t y) {
    return std::tie(g.arc(x).length, g.arc(x).id) < std::tie(g.arc(y).length, g.arc(y).id);
  });
  std::size_t node = 0;
  std::vector<DirectedStep> steps;
  for (int round = 0; round < 2; ++round) {
    for (std::size_t a : order) {
      int from_end = g.arc(a).from == node ? 0 : 1;
      steps.push_back({a, from_end});
      node = g.arc(a).endpoint(1 - from_end);
    }
  }
  return tour_from_steps(net, 0, steps);
}

}  // namespace patrol
