#include "patrol/network.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

#include "patrol/errors.hpp"

namespace patrol {

MetricNetwork::MetricNetwork(std::vector<Node> nodes, std::vector<Arc> arcs)
    : nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
  if (nodes_.empty()) throw InvalidNetwork("network has no nodes");
  if (arcs_.empty()) throw InvalidNetwork("network has no arcs");

  std::set<std::string, std::less<>> seen;
  for (const auto& n : nodes_) {
    if (n.id.empty()) throw InvalidNetwork("node with empty id");
    if (!seen.insert(n.id).second) throw InvalidNetwork("duplicate node id '" + n.id + "'");
  }
  seen.clear();
  passages_.assign(nodes_.size(), {});
  total_length_ = 0;
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    const Arc& arc = arcs_[a];
    if (arc.id.empty()) throw InvalidNetwork("arc with empty id");
    if (!seen.insert(arc.id).second) throw InvalidNetwork("duplicate arc id '" + arc.id + "'");
    if (arc.from >= nodes_.size() || arc.to >= nodes_.size()) {
      throw InvalidNetwork("arc '" + arc.id + "' references an unknown node");
    }
    if (arc.length <= 0) throw InvalidNetwork("arc '" + arc.id + "' has non-positive length");
    passages_[arc.from].push_back({arc.from, a, 0});
    passages_[arc.to].push_back({arc.to, a, 1});
    total_length_ += arc.length;
  }

  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    const auto& ps = passages_[v];
    if (ps.empty()) throw InvalidNetwork("node '" + nodes_[v].id + "' is isolated");
    if (ps.size() == 2 && !nodes_[v].artificial) {
      // A lone loop (the circle) has no other way to be written down.
      bool lone_loop = ps[0].arc == ps[1].arc && nodes_.size() == 1;
      if (!lone_loop) {
        throw InvalidNetwork("node '" + nodes_[v].id + "' has degree two; flag it artificial to admit it");
      }
    }
  }

  // All-pairs node distances (Floyd-Warshall); also proves connectivity.
  const std::size_t n = nodes_.size();
  std::vector<std::optional<Rational>> d(n * n);
  for (std::size_t v = 0; v < n; ++v) d[v * n + v] = Rational(0);
  for (const auto& arc : arcs_) {
    if (arc.is_loop()) continue;
    auto& uv = d[arc.from * n + arc.to];
    if (!uv || arc.length < *uv) {
      uv = arc.length;
      d[arc.to * n + arc.from] = arc.length;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!d[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!d[k * n + j]) continue;
        Rational via = *d[i * n + k] + *d[k * n + j];
        auto& ij = d[i * n + j];
        if (!ij || via < *ij) ij = via;
      }
    }
  }
  distances_.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    if (!d[i]) throw InvalidNetwork("network is disconnected");
    distances_[i] = *d[i];
  }
}

std::optional<std::size_t> MetricNetwork::find_node(std::string_view id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id == id) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> MetricNetwork::find_arc(std::string_view id) const {
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    if (arcs_[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t MetricNetwork::node_index(std::string_view id) const {
  if (auto i = find_node(id)) return *i;
  throw PreconditionError("unknown node '" + std::string(id) + "'");
}

std::size_t MetricNetwork::arc_index(std::string_view id) const {
  if (auto i = find_arc(id)) return *i;
  throw PreconditionError("unknown arc '" + std::string(id) + "'");
}

NetPoint MetricNetwork::point(std::size_t arc, const Rational& offset) const {
  if (arc >= arcs_.size()) throw PreconditionError("arc index out of range");
  const Arc& a = arcs_[arc];
  if (offset < 0 || offset > a.length) {
    throw PreconditionError("offset " + to_string(offset) + " outside arc '" + a.id + "'");
  }
  if (offset == 0) return NetPoint::at_node(a.from);
  if (offset == a.length) return NetPoint::at_node(a.to);
  return NetPoint::on_arc(arc, offset);
}

void MetricNetwork::check_point(const NetPoint& p) const {
  if (p.is_node()) {
    if (p.node() >= nodes_.size()) throw PreconditionError("point references an unknown node");
    return;
  }
  if (p.arc() >= arcs_.size()) throw PreconditionError("point references an unknown arc");
  if (p.offset() <= 0 || p.offset() >= arcs_[p.arc()].length) {
    throw PreconditionError("point offset is not strictly inside its arc");
  }
}

Rational MetricNetwork::distance(const NetPoint& p, const NetPoint& q) const {
  check_point(p);
  check_point(q);
  // Each point is reached through the nodes it can see, with the extra length to get there.
  auto exits = [this](const NetPoint& x) {
    std::vector<std::pair<std::size_t, Rational>> out;
    if (x.is_node()) {
      out.emplace_back(x.node(), Rational(0));
    } else {
      const Arc& a = arcs_[x.arc()];
      out.emplace_back(a.from, x.offset());
      out.emplace_back(a.to, a.length - x.offset());
    }
    return out;
  };
  std::optional<Rational> best;
  if (!p.is_node() && !q.is_node() && p.arc() == q.arc()) best = abs(p.offset() - q.offset());
  for (const auto& [u, du] : exits(p)) {
    for (const auto& [v, dv] : exits(q)) {
      Rational via = du + node_distance(u, v) + dv;
      if (!best || via < *best) best = via;
    }
  }
  return *best;
}

bool MetricNetwork::is_eulerian() const {
  return std::all_of(passages_.begin(), passages_.end(), [](const auto& ps) { return ps.size() % 2 == 0; });
}

std::string MetricNetwork::describe(const NetPoint& p) const {
  if (p.is_node()) return nodes_.at(p.node()).id;
  return arcs_.at(p.arc()).id + "@" + to_string(p.offset());
}

Rational total_length(const MetricNetwork& net) { return net.total_length(); }

Rational distance(const MetricNetwork& net, const NetPoint& p, const NetPoint& q) { return net.distance(p, q); }

std::vector<ExtendedLength> shortest_paths(const MetricNetwork& net, std::size_t source, std::size_t skip_arc) {
  const std::size_t n = net.node_count();
  std::vector<ExtendedLength> dist(n);
  std::vector<bool> done(n, false);
  dist[source] = Rational(0);
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t u = npos;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && dist[v] && (u == npos || *dist[v] < *dist[u])) u = v;
    }
    if (u == npos) break;
    done[u] = true;
    for (const auto& p : net.passages(u)) {
      if (p.arc == skip_arc) continue;
      const Arc& a = net.arc(p.arc);
      std::size_t w = a.endpoint(1 - p.end);
      Rational cand = *dist[u] + a.length;
      if (!dist[w] || cand < *dist[w]) dist[w] = cand;
    }
  }
  return dist;
}

ExtendedLength girth(const MetricNetwork& net) {
  ExtendedLength best;
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    const Arc& arc = net.arc(a);
    ExtendedLength circuit;
    if (arc.is_loop()) {
      circuit = arc.length;
    } else {
      auto d = shortest_paths(net, arc.from, a);
      if (d[arc.to]) circuit = arc.length + *d[arc.to];
    }
    if (circuit && (!best || *circuit < *best)) best = circuit;
  }
  return best;
}

std::vector<LeafArc> leaf_arcs(const MetricNetwork& net) {
  std::vector<LeafArc> out;
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (net.degree(v) != 1) continue;
    const Passage& p = net.passages(v).front();
    out.push_back({p.arc, v, net.arc(p.arc).endpoint(1 - p.end)});
  }
  return out;
}

ExtendedLength generalized_girth(const MetricNetwork& net) {
  ExtendedLength best = girth(net);
  for (const auto& leaf : leaf_arcs(net)) {
    Rational doubled = 2 * net.arc(leaf.arc).length;
    if (!best || doubled < *best) best = doubled;
  }
  return best;
}

NetPoint Subdivision::to_original(const MetricNetwork& original, const NetPoint& refined) const {
  if (refined.is_node()) {
    std::size_t orig = original_node.at(refined.node());
    if (orig != npos) return NetPoint::at_node(orig);
    // An inserted node: find any piece touching it.
    for (std::size_t r = 0; r < pieces.size(); ++r) {
      const Arc& ra = network.arc(r);
      if (ra.from == refined.node()) return original.point(pieces[r].arc, pieces[r].lo);
      if (ra.to == refined.node()) return original.point(pieces[r].arc, pieces[r].hi);
    }
    throw PreconditionError("dangling inserted node");
  }
  const Piece& piece = pieces.at(refined.arc());
  return original.point(piece.arc, piece.lo + refined.offset());
}

NetPoint Subdivision::from_original(const NetPoint& original) const {
  if (original.is_node()) {
    for (std::size_t v = 0; v < original_node.size(); ++v) {
      if (original_node[v] == original.node()) return NetPoint::at_node(v);
    }
    throw PreconditionError("node missing from subdivision");
  }
  for (std::size_t r = 0; r < pieces.size(); ++r) {
    const Piece& piece = pieces[r];
    if (piece.arc != original.arc()) continue;
    if (original.offset() < piece.lo || original.offset() > piece.hi) continue;
    return network.point(r, original.offset() - piece.lo);
  }
  throw PreconditionError("point missing from subdivision");
}

Subdivision subdivide(const MetricNetwork& net, const std::vector<NetPoint>& points) {
  std::map<std::size_t, std::set<Rational>> cuts;
  for (const auto& p : points) {
    net.check_point(p);
    if (!p.is_node()) cuts[p.arc()].insert(p.offset());
  }

  std::vector<Node> nodes = net.nodes();
  std::vector<std::size_t> original_node(nodes.size());
  for (std::size_t v = 0; v < nodes.size(); ++v) original_node[v] = v;
  // A lone loop's node keeps degree two once the loop is split.
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (net.degree(v) == 2) nodes[v].artificial = true;
  }

  std::vector<Arc> arcs;
  std::vector<Subdivision::Piece> pieces;
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    const Arc& arc = net.arc(a);
    auto it = cuts.find(a);
    if (it == cuts.end()) {
      arcs.push_back(arc);
      pieces.push_back({a, Rational(0), arc.length});
      continue;
    }
    std::size_t prev_node = arc.from;
    Rational prev_offset = 0;
    std::size_t k = 0;
    auto emit = [&](std::size_t to_node, const Rational& to_offset) {
      arcs.push_back({arc.id + "#" + std::to_string(k++), prev_node, to_node, to_offset - prev_offset});
      pieces.push_back({a, prev_offset, to_offset});
      prev_node = to_node;
      prev_offset = to_offset;
    };
    for (const auto& offset : it->second) {
      nodes.push_back({arc.id + "@" + to_string(offset), true});
      original_node.push_back(npos);
      emit(nodes.size() - 1, offset);
    }
    emit(arc.to, arc.length);
  }
  return Subdivision{MetricNetwork(std::move(nodes), std::move(arcs)), std::move(pieces), std::move(original_node)};
}

NetPoint IdentifiedNetwork::map_point(const NetPoint& original) const {
  NetPoint refined = refinement.from_original(original);
  if (refined.is_node()) return NetPoint::at_node(node_remap.at(refined.node()));
  return refined;  // arc indices are unchanged by the gluing
}

IdentifiedNetwork identify_points(const MetricNetwork& net, const NetPoint& p, const NetPoint& q,
                                  std::string merged_id) {
  net.check_point(p);
  net.check_point(q);
  if (p == q) throw PreconditionError("cannot identify a point with itself");

  Subdivision sub = subdivide(net, {p, q});
  const MetricNetwork& refined = sub.network;
  std::size_t np = sub.from_original(p).node();
  std::size_t nq = sub.from_original(q).node();

  std::vector<std::size_t> remap(refined.node_count());
  std::vector<Node> nodes;
  for (std::size_t v = 0; v < refined.node_count(); ++v) {
    if (v == nq) continue;
    remap[v] = nodes.size();
    nodes.push_back(refined.node(v));
  }
  remap[nq] = remap[np];
  Node& merged = nodes[remap[np]];
  merged.id = merged_id.empty() ? refined.node(np).id + "=" + refined.node(nq).id : std::move(merged_id);
  merged.artificial = refined.degree(np) + refined.degree(nq) == 2;

  std::vector<Arc> arcs = refined.arcs();
  for (auto& a : arcs) {
    a.from = remap[a.from];
    a.to = remap[a.to];
  }
  std::size_t merged_index = remap[np];
  return IdentifiedNetwork{MetricNetwork(std::move(nodes), std::move(arcs)), std::move(sub), merged_index,
                           std::move(remap)};
}

}  // namespace patrol
