// Time-expanded grid walks: a patroller that moves one grid edge (or stays) per time step,
// and a dynamic program maximizing the weight of intercepted items.
#pragma once

#include "patrol/attack.hpp"
#include "patrol/tour.hpp"

namespace patrol {

/// The network cut into edges of length `step`; one time step is `step` time units.
struct Grid {
  NetworkPtr net;
  Rational step;
  Subdivision sub;
  /// Grid node -> point of the original network.
  std::vector<NetPoint> point;
  /// Grid node -> (neighbor, grid edge).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacent;

  std::size_t node_count() const { return point.size(); }
  std::size_t edge_count() const { return sub.pieces.size(); }
  /// Grid node at an original point; throws PreconditionError when the point is off the grid.
  std::size_t node_at(const NetPoint& x) const;
};

/// Throws PreconditionError unless `step` divides every arc length.
Grid make_grid(const NetworkPtr& net, const Rational& step);

/// Intercepted when the walk is at node `where` at a step in [first, last], or crosses edge
/// `where` during [k, k + 1] for some k in [first, last].
struct GridItem {
  bool edge = false;
  std::size_t where = npos;
  long first = 0;
  long last = 0;
  Rational weight;
};

/// Items equivalent to `attack` for grid walks: point attacks become one item per start-time
/// cell, region attacks one item per grid edge. Throws PreconditionError when an attack point or
/// region boundary is off the grid, or a region is attacked at a time off the grid.
std::vector<GridItem> discretize_attack(const Grid& grid, const MixedAttack& attack);

struct GridWalk {
  /// Node at steps 0..T.
  std::vector<std::size_t> nodes;
  /// Edge used between step k and k + 1, npos for a stay.
  std::vector<std::size_t> via;
};

struct GridWalkResult {
  GridWalk walk;
  double value = 0;
  std::size_t peak_states = 0;
  std::size_t total_states = 0;
};

/// Exact maximum over grid walks of steps 0..`steps` of the intercepted item weight.
/// A state is the position plus, per tracked node or edge, the last visit that can still matter.
/// Throws PreconditionError when a layer exceeds `state_limit` states.
GridWalkResult best_grid_walk(const Grid& grid, const std::vector<GridItem>& items, long steps,
                              std::size_t state_limit = 4000000);

/// Last step at which some item can still be intercepted.
long item_horizon(const std::vector<GridItem>& items);

/// The walk as an open unit-speed path on the original network.
TimedTour walk_to_path(const Grid& grid, const GridWalk& walk);

}  // namespace patrol
