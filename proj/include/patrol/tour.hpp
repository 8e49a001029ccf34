// Unit-speed paths on a network: moves along arcs and pauses, with a period for closed tours.
#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "patrol/network.hpp"

namespace patrol {

using NetworkPtr = std::shared_ptr<const MetricNetwork>;

inline NetworkPtr share(MetricNetwork net) { return std::make_shared<const MetricNetwork>(std::move(net)); }

/// Unit-speed motion along one arc between two offsets (either direction).
struct Move {
  std::size_t arc = npos;
  Rational from;
  Rational to;
};

struct Pause {
  NetPoint at;
};

struct Segment {
  Rational t0;
  Rational t1;
  std::variant<Move, Pause> motion;

  bool is_pause() const { return std::holds_alternative<Pause>(motion); }
  const Move& move() const { return std::get<Move>(motion); }
  const Pause& pause() const { return std::get<Pause>(motion); }
};

struct Breakpoint {
  Rational t;
  NetPoint at;
};

/// A maximal run of consecutive moves along one arc in one direction.
struct Traversal {
  std::size_t arc = npos;
  int dir = 1;  // +1 from -> to, -1 to -> from
  Rational from;
  Rational to;
  bool full(const MetricNetwork& net) const {
    return (from == 0 && to == net.arc(arc).length) || (to == 0 && from == net.arc(arc).length);
  }
};

class TimedTour {
 public:
  /// Validates time contiguity from 0, unit speed and spatial continuity; a closed tour must
  /// end where it starts. Throws PreconditionError.
  TimedTour(NetworkPtr net, std::vector<Segment> segments, bool closed);

  const MetricNetwork& network() const { return *net_; }
  const NetworkPtr& network_ptr() const { return net_; }
  const std::vector<Segment>& segments() const { return segments_; }
  bool closed() const { return closed_; }
  /// Period L of a closed tour, or the duration of an open path.
  const Rational& period() const { return period_; }

  NetPoint start_point() const;
  NetPoint end_point() const;
  NetPoint segment_start(std::size_t i) const;
  NetPoint segment_end(std::size_t i) const;

  /// Closed tours are evaluated modulo the period; open paths hold their end point afterwards
  /// and their start point before time 0.
  NetPoint position(const Rational& t) const;

  std::vector<Breakpoint> breakpoints() const;
  std::vector<Traversal> traversals() const;

  /// The tour started at phase `delta`: result(t) = this(t + delta). Closed tours only.
  TimedTour rotated(const Rational& delta) const;

 private:
  NetworkPtr net_;
  std::vector<Segment> segments_;
  bool closed_ = true;
  Rational period_;
};

/// Incremental construction of a unit-speed path.
class PathBuilder {
 public:
  PathBuilder(NetworkPtr net, NetPoint start);

  /// Moves along `arc` (which must contain the current point) to `to_offset`.
  PathBuilder& go(std::size_t arc, const Rational& to_offset);
  /// Moves along `arc` from offset `from` (which must be the current point) to `to`.
  PathBuilder& move(std::size_t arc, const Rational& from, const Rational& to);
  /// Crosses `arc` completely starting from its endpoint `from_end` (0 = from, 1 = to).
  PathBuilder& traverse(std::size_t arc, int from_end);
  /// Follows a shortest path to `target`.
  PathBuilder& walk_to(const NetPoint& target);
  PathBuilder& pause(const Rational& duration);
  PathBuilder& pause_until(const Rational& t);

  const NetPoint& here() const { return here_; }
  const Rational& now() const { return now_; }
  const MetricNetwork& network() const { return *net_; }

  TimedTour close() const;
  TimedTour open() const;

 private:
  NetworkPtr net_;
  std::vector<Segment> segments_;
  NetPoint start_;
  NetPoint here_;
  Rational now_;
};

/// Offset of `p` along `arc`, or nullopt when p does not lie on the arc.
/// For a loop's node, returns 0.
std::optional<Rational> offset_on_arc(const MetricNetwork& net, const NetPoint& p, std::size_t arc);

}  // namespace patrol
