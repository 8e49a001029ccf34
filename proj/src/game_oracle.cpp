#include "patrol/game_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "patrol/errors.hpp"
#include "patrol/patrol.hpp"
#include "patrol/tour_builder.hpp"

namespace patrol {
namespace {

long whole_steps(const Rational& t, const Rational& step, const char* what) {
  Rational q = t / step;
  if (floor(q) != q) throw PreconditionError(std::string("grid step does not divide ") + what);
  return boost::multiprecision::numerator(q).convert_to<long>();
}

std::vector<TimedTour> seed_tours(const NetworkPtr& net, const Rational& alpha) {
  std::vector<TimedTour> out;
  auto attempt = [&out](auto make) {
    try {
      out.push_back(make());
    } catch (const Error&) {
    }
  };
  if (net->is_tree()) {
    attempt([&] { return tree_cpt(net, NetPoint::at_node(0)); });
    attempt([&] { return e_patrolling_tour(net, alpha); });
  } else {
    attempt([&] { return double_cover_tour(net); });
  }
  attempt([&] { return leaf_pause_tour(net, alpha); });
  return out;
}

}  // namespace

bool DiscreteGame::intercepts(const GridWalk& walk, std::size_t node, long cell) const {
  for (long k = cell + 1; k <= cell + window && k <= steps; ++k) {
    if (walk.nodes[static_cast<std::size_t>(k)] == node) return true;
  }
  return false;
}

DiscreteGame make_discrete_game(const NetworkPtr& net, const Rational& alpha, const Rational& step,
                                const std::optional<Rational>& start_horizon) {
  if (alpha <= 0) throw PreconditionError("alpha must be positive");
  DiscreteGame g{make_grid(net, step), alpha, whole_steps(alpha, step, "alpha"), 0, 0};
  Rational horizon = start_horizon ? *start_horizon : 2 * net->total_length();
  if (horizon <= 0) throw PreconditionError("start horizon must be positive");
  Rational cells = horizon / step;
  g.cells = boost::multiprecision::numerator(-floor(-cells)).convert_to<long>();
  g.steps = g.cells + g.window;
  return g;
}

std::vector<GridWalk> tour_walks(const DiscreteGame& game, const TimedTour& tour) {
  const Grid& grid = game.grid;
  const Rational& dt = grid.step;
  std::vector<GridWalk> out;
  if (!tour.closed()) return out;
  Rational phases = tour.period() / dt;
  if (floor(phases) != phases) return out;
  long count = boost::multiprecision::numerator(phases).convert_to<long>();
  try {
    for (long p = 0; p < count; ++p) {
      GridWalk w;
      for (long k = 0; k <= game.steps; ++k) w.nodes.push_back(grid.node_at(tour.position(dt * (k + p))));
      for (long k = 0; k < game.steps; ++k) {
        NetPoint mid = grid.sub.from_original(tour.position(dt * (k + p) + dt / 2));
        w.via.push_back(mid.is_node() ? npos : mid.arc());
      }
      out.push_back(std::move(w));
    }
  } catch (const PreconditionError&) {
    out.clear();
  }
  return out;
}

OracleResult solve_double_oracle(const DiscreteGame& game, const OracleConfig& config) {
  const Grid& grid = game.grid;
  std::vector<GridWalk> walks;
  std::vector<AttackCell> attacks;
  auto add_walk = [&walks](const GridWalk& w) {
    bool known = std::any_of(walks.begin(), walks.end(), [&w](const GridWalk& x) { return x.nodes == w.nodes; });
    if (!known) walks.push_back(w);
    return !known;
  };
  auto add_attack = [&attacks](const AttackCell& a) {
    bool known = std::find(attacks.begin(), attacks.end(), a) != attacks.end();
    if (!known) attacks.push_back(a);
    return !known;
  };

  if (config.seed_tours) {
    for (const auto& tour : seed_tours(grid.net, game.alpha)) {
      for (const auto& w : tour_walks(game, tour)) add_walk(w);
    }
  }
  if (walks.empty()) {
    GridWalk stay{std::vector<std::size_t>(static_cast<std::size_t>(game.steps) + 1, 0),
                  std::vector<std::size_t>(static_cast<std::size_t>(game.steps), npos)};
    add_walk(stay);
  }
  const MetricNetwork& net = *grid.net;
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    std::size_t g = grid.node_at(NetPoint::at_node(v));
    if (net.degree(v) == 1) {
      for (long j = 0; j < game.cells; ++j) add_attack({g, j});
    }
  }
  for (std::size_t g = 0; g < grid.node_count(); ++g) add_attack({g, 0});

  std::vector<std::vector<char>> hit;  // hit[walk][attack]
  auto extend = [&] {
    hit.resize(walks.size());
    for (std::size_t w = 0; w < walks.size(); ++w) {
      for (std::size_t a = hit[w].size(); a < attacks.size(); ++a) {
        hit[w].push_back(game.intercepts(walks[w], attacks[a].node, attacks[a].cell) ? 1 : 0);
      }
    }
  };

  OracleResult result;
  result.lower = 0;
  result.upper = 1;
  std::vector<double> pmix, amix;
  for (std::size_t it = 1; it <= config.max_iter; ++it) {
    extend();
    const auto rows = static_cast<Eigen::Index>(walks.size()), cols = static_cast<Eigen::Index>(attacks.size());
    double restricted = 0;
    if (config.regret_dynamics) {
      Matrix<double> a(rows, cols);
      for (Eigen::Index w = 0; w < rows; ++w) {
        for (Eigen::Index c = 0; c < cols; ++c) a(w, c) = hit[static_cast<std::size_t>(w)][static_cast<std::size_t>(c)];
      }
      auto eq = solve_matrix_game_mwu(a, config.eps / 4);
      pmix = eq.row;
      amix = eq.col;
      restricted = eq.value;
    } else {
      Matrix<double> a(rows, cols);
      for (Eigen::Index w = 0; w < rows; ++w) {
        for (Eigen::Index c = 0; c < cols; ++c) a(w, c) = hit[static_cast<std::size_t>(w)][static_cast<std::size_t>(c)];
      }
      try {
        auto eq = solve_matrix_game(a, static_cast<std::size_t>(50 * (rows + cols)));
        double rows_sum = std::accumulate(eq.row.begin(), eq.row.end(), 0.0);
        double cols_sum = std::accumulate(eq.col.begin(), eq.col.end(), 0.0);
        // Small drift is harmless: the bracket below is certified for whatever mixes are used.
        if (eq.upper - eq.lower > 1e-6 || std::abs(rows_sum - 1) > 1e-6 || std::abs(cols_sum - 1) > 1e-6) {
          throw Error("inexact restricted equilibrium");
        }
        pmix = eq.row;
        amix = eq.col;
        restricted = eq.value;
      } catch (const Error&) {
        // Floating pivots can cycle or drift on degenerate 0/1 payoffs; exact pivots cannot.
        auto eq = solve_matrix_game(Matrix<Rational>(a.cast<Rational>()));
        pmix.clear();
        amix.clear();
        for (const auto& x : eq.row) pmix.push_back(x.convert_to<double>());
        for (const auto& x : eq.col) amix.push_back(x.convert_to<double>());
        restricted = eq.value.convert_to<double>();
      }
      for (auto* mix : {&pmix, &amix}) {
        for (auto& x : *mix) x = std::max(x, 0.0);
        double total = std::accumulate(mix->begin(), mix->end(), 0.0);
        for (auto& x : *mix) x /= total;
      }
    }

    // Attacker: exact payoff of every (node, cell) against the patrol mix.
    auto attacker = std::async(std::launch::async, [&] {
      std::vector<std::pair<double, AttackCell>> scored;
      for (std::size_t v = 0; v < grid.node_count(); ++v) {
        for (long j = 0; j < game.cells; ++j) {
          double p = 0;
          for (std::size_t w = 0; w < walks.size(); ++w) {
            if (pmix[w] > 0 && game.intercepts(walks[w], v, j)) p += pmix[w];
          }
          scored.push_back({p, AttackCell{v, j}});
        }
      }
      std::stable_sort(scored.begin(), scored.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      return scored;
    });
    // Patroller: best grid walk against the attack mix.
    auto patroller = std::async(std::launch::async, [&] {
      std::vector<GridItem> items;
      for (std::size_t c = 0; c < attacks.size(); ++c) {
        if (amix[c] <= 0) continue;
        items.push_back({false, attacks[c].node, attacks[c].cell + 1, std::min(attacks[c].cell + game.window, game.steps),
                         from_double(amix[c])});
      }
      return best_grid_walk(grid, items, game.steps, config.state_limit);
    });
    auto scored = attacker.get();
    auto walk = patroller.get();

    // The DP ran on weights rounded to rationals; rescore the walk against the exact mix.
    double walk_value = 0;
    for (std::size_t c = 0; c < attacks.size(); ++c) {
      if (amix[c] > 0 && game.intercepts(walk.walk, attacks[c].node, attacks[c].cell)) walk_value += amix[c];
    }
    walk.value = walk_value;
    result.lower = std::max(result.lower, scored.front().first);
    result.upper = std::min(result.upper, std::max(walk_value, result.lower));
    result.trace.push_back({it, restricted, result.lower, result.upper, walks.size(), attacks.size()});
    // Several cheap attacks per round speed up the attacker side considerably.
    bool fresh_attack = false;
    std::size_t added = 0;
    for (const auto& [p, cell] : scored) {
      if (added == config.attacks_per_round || p >= walk.value) break;
      if (add_attack(cell)) {
        fresh_attack = true;
        ++added;
      }
    }
    bool fresh_walk = add_walk(walk.walk);
    if (result.upper - result.lower <= config.eps || (!fresh_attack && !fresh_walk)) {
      result.converged = true;
      break;
    }
  }

  for (std::size_t w = 0; w < pmix.size(); ++w) {
    if (pmix[w] > 1e-9) result.patrol_support.emplace_back(walks[w], pmix[w]);
  }
  for (std::size_t c = 0; c < amix.size(); ++c) {
    if (amix[c] > 1e-9) result.attack_support.emplace_back(attacks[c], amix[c]);
  }
  return result;
}

}  // namespace patrol
