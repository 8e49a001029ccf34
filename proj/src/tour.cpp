#include "patrol/tour.hpp"

#include <algorithm>

#include "patrol/errors.hpp"

namespace patrol {
namespace {

NetPoint motion_start(const MetricNetwork& net, const Segment& s) {
  if (s.is_pause()) return s.pause().at;
  return net.point(s.move().arc, s.move().from);
}

NetPoint motion_end(const MetricNetwork& net, const Segment& s) {
  if (s.is_pause()) return s.pause().at;
  return net.point(s.move().arc, s.move().to);
}

struct Hop {
  std::size_t arc;
  int from_end;
};

// Arcs of a shortest node-to-node path.
std::vector<Hop> node_path(const MetricNetwork& net, std::size_t source, std::size_t target) {
  const std::size_t n = net.node_count();
  std::vector<std::optional<Rational>> dist(n);
  std::vector<Hop> via(n, {npos, 0});
  std::vector<bool> done(n, false);
  dist[source] = Rational(0);
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t u = npos;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && dist[v] && (u == npos || *dist[v] < *dist[u])) u = v;
    }
    if (u == npos || u == target) break;
    done[u] = true;
    for (const auto& p : net.passages(u)) {
      const Arc& a = net.arc(p.arc);
      std::size_t w = a.endpoint(1 - p.end);
      Rational cand = *dist[u] + a.length;
      if (!dist[w] || cand < *dist[w]) {
        dist[w] = cand;
        via[w] = {p.arc, p.end};
      }
    }
  }
  std::vector<Hop> path;
  for (std::size_t v = target; v != source;) {
    Hop h = via[v];
    path.push_back(h);
    v = net.arc(h.arc).endpoint(h.from_end);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::optional<Rational> offset_on_arc(const MetricNetwork& net, const NetPoint& p, std::size_t arc) {
  const Arc& a = net.arc(arc);
  if (p.is_node()) {
    if (p.node() == a.from) return Rational(0);
    if (p.node() == a.to) return a.length;
    return std::nullopt;
  }
  if (p.arc() == arc) return p.offset();
  return std::nullopt;
}

TimedTour::TimedTour(NetworkPtr net, std::vector<Segment> segments, bool closed)
    : net_(std::move(net)), segments_(std::move(segments)), closed_(closed) {
  if (segments_.empty()) throw PreconditionError("tour has no segments");
  const MetricNetwork& g = *net_;
  Rational t = 0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (s.t0 != t) throw PreconditionError("tour segments are not contiguous in time");
    if (s.t1 <= s.t0) throw PreconditionError("tour segment has non-positive duration");
    if (s.is_pause()) {
      g.check_point(s.pause().at);
    } else {
      const Move& m = s.move();
      if (m.arc >= g.arc_count()) throw PreconditionError("move on unknown arc");
      const Rational& len = g.arc(m.arc).length;
      if (m.from < 0 || m.from > len || m.to < 0 || m.to > len) throw PreconditionError("move leaves its arc");
      if (abs(m.to - m.from) != s.t1 - s.t0) throw PreconditionError("move is not unit speed");
    }
    if (i > 0 && !(motion_end(g, segments_[i - 1]) == motion_start(g, s))) {
      throw PreconditionError("tour is not spatially continuous at t=" + to_string(s.t0));
    }
    t = s.t1;
  }
  period_ = t;
  if (closed_ && !(motion_end(g, segments_.back()) == motion_start(g, segments_.front()))) {
    throw PreconditionError("closed tour does not return to its start");
  }
}

NetPoint TimedTour::start_point() const { return motion_start(*net_, segments_.front()); }
NetPoint TimedTour::end_point() const { return motion_end(*net_, segments_.back()); }
NetPoint TimedTour::segment_start(std::size_t i) const { return motion_start(*net_, segments_.at(i)); }
NetPoint TimedTour::segment_end(std::size_t i) const { return motion_end(*net_, segments_.at(i)); }

NetPoint TimedTour::position(const Rational& time) const {
  Rational t = time;
  if (closed_) {
    t = mod(time, period_);
  } else {
    if (t <= 0) return start_point();
    if (t >= period_) return end_point();
  }
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](const Rational& v, const Segment& s) { return v < s.t0; });
  const Segment& s = *std::prev(it);
  if (s.is_pause()) return s.pause().at;
  const Move& m = s.move();
  Rational offset = m.to > m.from ? m.from + (t - s.t0) : m.from - (t - s.t0);
  return net_->point(m.arc, offset);
}

std::vector<Breakpoint> TimedTour::breakpoints() const {
  std::vector<Breakpoint> out;
  out.push_back({Rational(0), start_point()});
  for (std::size_t i = 0; i < segments_.size(); ++i) out.push_back({segments_[i].t1, segment_end(i)});
  return out;
}

std::vector<Traversal> TimedTour::traversals() const {
  std::vector<Traversal> out;
  auto mergeable = [](const Traversal& a, const Traversal& b) {
    return a.arc == b.arc && a.dir == b.dir && a.to == b.from;
  };
  bool previous_was_move = false;
  for (const auto& s : segments_) {
    if (s.is_pause()) {
      previous_was_move = false;
      continue;
    }
    const Move& m = s.move();
    Traversal tr{m.arc, m.to > m.from ? 1 : -1, m.from, m.to};
    if (previous_was_move && !out.empty() && mergeable(out.back(), tr)) {
      out.back().to = tr.to;
    } else {
      out.push_back(tr);
    }
    previous_was_move = true;
  }
  if (closed_ && out.size() > 1 && !segments_.front().is_pause() && !segments_.back().is_pause() &&
      mergeable(out.back(), out.front())) {
    out.front().from = out.back().from;
    out.pop_back();
  }
  return out;
}

TimedTour TimedTour::rotated(const Rational& delta) const {
  if (!closed_) throw PreconditionError("only closed tours can be rotated");
  Rational d = mod(delta, period_);
  if (d == 0) return *this;
  std::vector<Segment> head, tail;
  for (const auto& s : segments_) {
    if (s.t1 <= d) {
      tail.push_back(s);
    } else if (s.t0 >= d) {
      head.push_back(s);
    } else {
      Segment first = s, second = s;
      first.t1 = d;
      second.t0 = d;
      if (!s.is_pause()) {
        const Move& m = s.move();
        Rational mid = m.to > m.from ? m.from + (d - s.t0) : m.from - (d - s.t0);
        std::get<Move>(first.motion).to = mid;
        std::get<Move>(second.motion).from = mid;
      }
      tail.push_back(first);
      head.push_back(second);
    }
  }
  std::vector<Segment> out;
  for (auto s : head) {
    s.t0 -= d;
    s.t1 -= d;
    out.push_back(std::move(s));
  }
  for (auto s : tail) {
    s.t0 += period_ - d;
    s.t1 += period_ - d;
    out.push_back(std::move(s));
  }
  return TimedTour(net_, std::move(out), true);
}

PathBuilder::PathBuilder(NetworkPtr net, NetPoint start) : net_(std::move(net)), start_(start), here_(start), now_(0) {
  net_->check_point(start);
}

PathBuilder& PathBuilder::go(std::size_t arc, const Rational& to_offset) {
  const Arc& a = net_->arc(arc);
  auto from = offset_on_arc(*net_, here_, arc);
  if (!from) throw PreconditionError("current point is not on arc '" + a.id + "'");
  if (a.is_loop() && here_.is_node() && to_offset == 0) from = a.length;
  if (*from == to_offset) return *this;
  Rational duration = abs(to_offset - *from);
  segments_.push_back({now_, now_ + duration, Move{arc, *from, to_offset}});
  now_ += duration;
  here_ = net_->point(arc, to_offset);
  return *this;
}

PathBuilder& PathBuilder::move(std::size_t arc, const Rational& from, const Rational& to) {
  if (!(net_->point(arc, from) == here_)) {
    throw PreconditionError("move on '" + net_->arc(arc).id + "' does not start at the current point");
  }
  if (from == to) return *this;
  net_->point(arc, to);
  segments_.push_back({now_, now_ + abs(to - from), Move{arc, from, to}});
  now_ += abs(to - from);
  here_ = net_->point(arc, to);
  return *this;
}

PathBuilder& PathBuilder::traverse(std::size_t arc, int from_end) {
  const Arc& a = net_->arc(arc);
  if (!(here_ == NetPoint::at_node(a.endpoint(from_end)))) {
    throw PreconditionError("traverse of '" + a.id + "' does not start at the current node");
  }
  Rational from = from_end == 0 ? Rational(0) : a.length;
  Rational to = from_end == 0 ? a.length : Rational(0);
  segments_.push_back({now_, now_ + a.length, Move{arc, from, to}});
  now_ += a.length;
  here_ = NetPoint::at_node(a.endpoint(1 - from_end));
  return *this;
}

PathBuilder& PathBuilder::walk_to(const NetPoint& target) {
  const MetricNetwork& g = *net_;
  g.check_point(target);
  if (here_ == target) return *this;
  if (!here_.is_node() && !target.is_node() && here_.arc() == target.arc() &&
      abs(here_.offset() - target.offset()) == g.distance(here_, target)) {
    return go(target.arc(), target.offset());
  }
  // Exit nodes on each side with their access cost.
  struct Exit {
    std::size_t node;
    Rational cost;
    Rational offset;
  };
  auto exits = [&g](const NetPoint& x) {
    std::vector<Exit> out;
    if (x.is_node()) {
      out.push_back({x.node(), Rational(0), Rational(0)});
    } else {
      const Arc& a = g.arc(x.arc());
      out.push_back({a.from, x.offset(), Rational(0)});
      out.push_back({a.to, a.length - x.offset(), a.length});
    }
    return out;
  };
  std::optional<Rational> best;
  Exit bu{}, bv{};
  for (const auto& u : exits(here_)) {
    for (const auto& v : exits(target)) {
      Rational c = u.cost + g.node_distance(u.node, v.node) + v.cost;
      if (!best || c < *best) {
        best = c;
        bu = u;
        bv = v;
      }
    }
  }
  if (!here_.is_node()) go(here_.arc(), bu.offset);
  for (const auto& hop : node_path(g, bu.node, bv.node)) traverse(hop.arc, hop.from_end);
  if (!target.is_node()) {
    std::size_t arc = target.arc();
    const Rational target_offset = target.offset();
    move(arc, bv.offset, target_offset);
  }
  return *this;
}

PathBuilder& PathBuilder::pause(const Rational& duration) {
  if (duration < 0) throw PreconditionError("negative pause");
  if (duration == 0) return *this;
  segments_.push_back({now_, now_ + duration, Pause{here_}});
  now_ += duration;
  return *this;
}

PathBuilder& PathBuilder::pause_until(const Rational& t) {
  if (t < now_) throw PreconditionError("pause_until in the past");
  return pause(t - now_);
}

TimedTour PathBuilder::close() const { return TimedTour(net_, segments_, true); }
TimedTour PathBuilder::open() const { return TimedTour(net_, segments_, false); }

}  // namespace patrol
