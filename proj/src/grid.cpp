#include "patrol/grid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

#include "patrol/errors.hpp"

namespace patrol {
namespace {

long to_long(const Rational& integral) { return boost::multiprecision::numerator(integral).convert_to<long>(); }

long floor_steps(const Rational& t, const Rational& step) { return to_long(floor(t / step)); }

bool on_grid(const Rational& t, const Rational& step) { return floor(t / step) * step == t; }

}  // namespace

std::size_t Grid::node_at(const NetPoint& x) const {
  NetPoint refined = sub.from_original(x);
  if (!refined.is_node()) throw PreconditionError("point " + net->describe(x) + " is not on the grid");
  return refined.node();
}

Grid make_grid(const NetworkPtr& net, const Rational& step) {
  if (step <= 0) throw PreconditionError("grid step must be positive");
  std::vector<NetPoint> cuts;
  for (std::size_t a = 0; a < net->arc_count(); ++a) {
    const Rational& len = net->arc(a).length;
    if (!on_grid(len, step)) {
      throw PreconditionError("grid step " + to_string(step) + " does not divide arc " + net->arc(a).id);
    }
    for (Rational o = step; o < len; o += step) cuts.push_back(net->point(a, o));
  }
  Grid grid{net, step, subdivide(*net, cuts), {}, {}};
  const MetricNetwork& g = grid.sub.network;
  for (std::size_t v = 0; v < g.node_count(); ++v) grid.point.push_back(grid.sub.to_original(*net, NetPoint::at_node(v)));
  grid.adjacent.resize(g.node_count());
  for (std::size_t e = 0; e < g.arc_count(); ++e) {
    const Arc& arc = g.arc(e);
    grid.adjacent[arc.from].emplace_back(arc.to, e);
    if (!arc.is_loop()) grid.adjacent[arc.to].emplace_back(arc.from, e);
  }
  return grid;
}

std::vector<GridItem> discretize_attack(const Grid& grid, const MixedAttack& attack) {
  const Rational& dt = grid.step;
  const Rational& alpha = attack.alpha;
  std::map<std::tuple<bool, std::size_t, long, long>, Rational> merged;
  auto add = [&merged](bool edge, std::size_t where, long first, long last, const Rational& w) {
    first = std::max(first, 0L);
    if (last < first || w == 0) return;
    merged[{edge, where, first, last}] += w;
  };

  for (const auto& c : attack.components) {
    if (const auto* p = std::get_if<SpatialPoint>(&c.where)) {
      std::size_t v = grid.node_at(p->at);
      for (const auto& piece : temporal_pieces(c.when)) {
        Rational w = c.weight * piece.mass;
        if (piece.lo == piece.hi) {
          add(false, v, -floor_steps(-piece.lo, dt), floor_steps(piece.lo + alpha, dt), w);
          continue;
        }
        // Within a cell free of grid times t and t - alpha, every start sees the same steps.
        std::set<Rational> cuts{piece.lo, piece.hi};
        for (long k = floor_steps(piece.lo, dt); k <= floor_steps(piece.hi + alpha, dt) + 1; ++k) {
          for (const Rational& s : {dt * k, dt * k - alpha}) {
            if (piece.lo < s && s < piece.hi) cuts.insert(s);
          }
        }
        std::vector<Rational> pts(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
          Rational share = w * (pts[i + 1] - pts[i]) / (piece.hi - piece.lo);
          add(false, v, floor_steps(pts[i], dt) + 1, floor_steps(pts[i] + alpha, dt), share);
        }
      }
      continue;
    }
    const auto& region = std::get<SpatialRegion>(c.where);
    const auto* atom = std::get_if<TemporalAtom>(&c.when);
    if (!atom) throw PreconditionError("region attacks must start at a single time on the grid");
    if (!on_grid(atom->t, dt) || !on_grid(alpha, dt)) throw PreconditionError("region attack window is off the grid");
    long first = to_long(atom->t / dt);
    long last = to_long((atom->t + alpha) / dt) - 1;
    Rational per_edge = c.weight * dt / region.length();
    for (const auto& piece : region.pieces) {
      if (!on_grid(piece.lo, dt) || !on_grid(piece.hi, dt)) throw PreconditionError("region boundary is off the grid");
      for (std::size_t e = 0; e < grid.edge_count(); ++e) {
        const auto& cell = grid.sub.pieces[e];
        if (cell.arc == piece.arc && piece.lo <= cell.lo && cell.hi <= piece.hi) add(true, e, first, last, per_edge);
      }
    }
  }
  std::vector<GridItem> out;
  for (const auto& [key, w] : merged) out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key), w});
  return out;
}

long item_horizon(const std::vector<GridItem>& items) {
  long h = 0;
  for (const auto& it : items) h = std::max(h, it.edge ? it.last + 1 : it.last);
  return h;
}

namespace {

// Items of one node or edge, indexed by step for fast gain and canonicalization queries.
struct Resource {
  std::vector<GridItem> items;
  // active[k]: (first, weight of items active at k with this or a later `first`), sorted.
  std::vector<std::vector<std::pair<long, double>>> active;
  // live[now]: sorted distinct `first` of items with last >= now.
  std::vector<std::vector<long>> live;

  void prepare(long horizon) {
    active.assign(static_cast<std::size_t>(horizon + 3), {});
    live.assign(static_cast<std::size_t>(horizon + 3), {});
    for (long k = 0; k <= horizon + 2; ++k) {
      std::vector<std::pair<long, double>> act;
      std::set<long> firsts;
      for (const auto& it : items) {
        if (it.first <= k && k <= it.last) act.emplace_back(it.first, it.weight.convert_to<double>());
        if (it.last >= k) firsts.insert(it.first);
      }
      std::sort(act.begin(), act.end());
      for (std::size_t i = act.size(); i-- > 1;) act[i - 1].second += act[i].second;
      active[static_cast<std::size_t>(k)] = std::move(act);
      live[static_cast<std::size_t>(k)].assign(firsts.begin(), firsts.end());
    }
  }

  // Weight gained by a visit at step k when the last visit that still matters was at `last`.
  double gain(long k, long last) const {
    const auto& act = active[static_cast<std::size_t>(k)];
    auto it = std::upper_bound(act.begin(), act.end(), last,
                               [](long v, const std::pair<long, double>& p) { return v < p.first; });
    return it == act.end() ? 0.0 : it->second;
  }

  // Largest `first` of a live item not after `last`: later visits only differ through it.
  long canonical(long last, long now) const {
    if (last < 0) return -1;
    const auto& fs = live[static_cast<std::size_t>(std::min<long>(now, static_cast<long>(live.size()) - 1))];
    auto it = std::upper_bound(fs.begin(), fs.end(), last);
    return it == fs.begin() ? -1 : *std::prev(it);
  }
};

struct Back {
  std::int32_t parent;
  std::uint32_t pos;
  std::uint32_t via;
};

}  // namespace

GridWalkResult best_grid_walk(const Grid& grid, const std::vector<GridItem>& items, long steps,
                              std::size_t state_limit) {
  if (steps < 0) throw PreconditionError("walk length must be nonnegative");
  std::vector<std::size_t> node_res(grid.node_count(), npos), edge_res(grid.edge_count(), npos);
  std::vector<Resource> res;
  for (const auto& it : items) {
    auto& slot = it.edge ? edge_res.at(it.where) : node_res.at(it.where);
    if (slot == npos) {
      slot = res.size();
      res.emplace_back();
    }
    res[slot].items.push_back(it);
  }
  for (auto& r : res) r.prepare(steps);
  std::vector<bool> is_edge(res.size(), false);
  for (std::size_t e = 0; e < edge_res.size(); ++e) {
    if (edge_res[e] != npos) is_edge[edge_res[e]] = true;
  }
  const std::size_t R = res.size();

  // Key: 4 position bytes, then per resource 0 (nothing relevant) or ref - last + 1.
  auto encode = [&](std::size_t pos, const std::vector<long>& last, long ref) {
    std::string key(4 + R, '\0');
    for (int b = 0; b < 4; ++b) key[static_cast<std::size_t>(b)] = static_cast<char>((pos >> (8 * b)) & 0xff);
    for (std::size_t r = 0; r < R; ++r) {
      if (last[r] < 0) continue;
      long d = ref - last[r] + 1;
      if (d < 1 || d > 255) throw PreconditionError("attack windows are too long for the walk state encoding");
      key[4 + r] = static_cast<char>(d);
    }
    return key;
  };
  auto decode = [&](const std::string& key, std::vector<long>& last, long ref) {
    std::size_t pos = 0;
    for (int b = 0; b < 4; ++b) pos |= static_cast<std::size_t>(static_cast<unsigned char>(key[static_cast<std::size_t>(b)])) << (8 * b);
    for (std::size_t r = 0; r < R; ++r) {
      auto d = static_cast<unsigned char>(key[4 + r]);
      last[r] = d == 0 ? -1 : ref - d + 1;
    }
    return pos;
  };
  // After the node event at step k: nodes next matter at k + 1, edges at k.
  auto canonicalize = [&](std::vector<long>& last, long k) {
    for (std::size_t r = 0; r < R; ++r) last[r] = res[r].canonical(last[r], is_edge[r] ? k : k + 1);
  };

  GridWalkResult result;
  std::vector<std::vector<Back>> history;
  std::vector<std::string> keys;
  std::vector<double> values;
  {
    std::unordered_map<std::string, std::size_t> index;
    std::vector<Back> back;
    std::vector<long> last(R, -1);
    for (std::size_t v = 0; v < grid.node_count(); ++v) {
      std::fill(last.begin(), last.end(), -1);
      double value = 0;
      if (node_res[v] != npos) {
        value += res[node_res[v]].gain(0, -1);
        last[node_res[v]] = 0;
      }
      canonicalize(last, 0);
      auto key = encode(v, last, 1);
      auto [it, fresh] = index.emplace(key, keys.size());
      if (fresh) {
        keys.push_back(std::move(key));
        values.push_back(value);
        back.push_back({-1, static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(npos)});
      } else if (value > values[it->second]) {
        values[it->second] = value;
        back[it->second] = {-1, static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(npos)};
      }
    }
    history.push_back(std::move(back));
  }
  result.peak_states = result.total_states = keys.size();

  std::vector<long> last(R), next(R);
  for (long k = 0; k < steps; ++k) {
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::string> new_keys;
    std::vector<double> new_values;
    std::vector<Back> back;
    for (std::size_t s = 0; s < keys.size(); ++s) {
      std::size_t pos = decode(keys[s], last, k + 1);
      auto relax = [&](std::size_t q, std::size_t e) {
        next = last;
        double value = values[s];
        if (e != npos && edge_res[e] != npos) {
          std::size_t r = edge_res[e];
          value += res[r].gain(k, next[r]);
          next[r] = k;
        }
        if (node_res[q] != npos) {
          std::size_t r = node_res[q];
          value += res[r].gain(k + 1, next[r]);
          next[r] = k + 1;
        }
        canonicalize(next, k + 1);
        auto key = encode(q, next, k + 2);
        Back b{static_cast<std::int32_t>(s), static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(e)};
        auto [it, fresh] = index.emplace(key, new_keys.size());
        if (fresh) {
          new_keys.push_back(std::move(key));
          new_values.push_back(value);
          back.push_back(b);
        } else if (value > new_values[it->second]) {
          new_values[it->second] = value;
          back[it->second] = b;
        }
      };
      relax(pos, npos);
      for (const auto& [q, e] : grid.adjacent[pos]) relax(q, e);
    }
    if (new_keys.size() > state_limit) {
      throw PreconditionError("grid walk dynamic program exceeded " + std::to_string(state_limit) + " states");
    }
    keys = std::move(new_keys);
    values = std::move(new_values);
    history.push_back(std::move(back));
    result.peak_states = std::max(result.peak_states, keys.size());
    result.total_states += keys.size();
  }

  std::size_t best = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  result.value = values[best];
  result.walk.nodes.assign(static_cast<std::size_t>(steps) + 1, npos);
  result.walk.via.assign(static_cast<std::size_t>(steps), npos);
  std::int32_t cur = static_cast<std::int32_t>(best);
  for (long k = steps; k >= 0; --k) {
    const Back& b = history[static_cast<std::size_t>(k)][static_cast<std::size_t>(cur)];
    result.walk.nodes[static_cast<std::size_t>(k)] = b.pos;
    if (k > 0) result.walk.via[static_cast<std::size_t>(k - 1)] = b.via == static_cast<std::uint32_t>(npos) ? npos : b.via;
    cur = b.parent;
  }
  return result;
}

TimedTour walk_to_path(const Grid& grid, const GridWalk& walk) {
  if (walk.nodes.empty()) throw PreconditionError("empty walk");
  PathBuilder b(grid.net, grid.point[walk.nodes[0]]);
  for (std::size_t k = 0; k < walk.via.size(); ++k) {
    std::size_t e = walk.via[k];
    if (e == npos) {
      b.pause(grid.step);
      continue;
    }
    const auto& piece = grid.sub.pieces[e];
    if (grid.sub.network.arc(e).from == walk.nodes[k]) {
      b.move(piece.arc, piece.lo, piece.hi);
    } else {
      b.move(piece.arc, piece.hi, piece.lo);
    }
  }
  return b.open();
}

}  // namespace patrol
