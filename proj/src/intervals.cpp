#include "patrol/intervals.hpp"

#include <algorithm>

namespace patrol {

IntervalSet::IntervalSet(std::vector<Interval> pieces) {
  for (auto& p : pieces) add(p.lo, p.hi);
}

void IntervalSet::add(const Rational& lo, const Rational& hi) {
  if (hi < lo) return;
  Interval merged{lo, hi};
  std::vector<Interval> out;
  out.reserve(pieces_.size() + 1);
  bool placed = false;
  for (auto& p : pieces_) {
    if (p.hi < merged.lo) {
      out.push_back(std::move(p));
    } else if (merged.hi < p.lo) {
      if (!placed) {
        out.push_back(merged);
        placed = true;
      }
      out.push_back(std::move(p));
    } else {
      merged.lo = min(merged.lo, p.lo);
      merged.hi = max(merged.hi, p.hi);
    }
  }
  if (!placed) out.push_back(merged);
  pieces_ = std::move(out);
}

void IntervalSet::add(const IntervalSet& other) {
  for (const auto& p : other.pieces_) add(p);
}

Rational IntervalSet::measure() const {
  Rational total = 0;
  for (const auto& p : pieces_) total += p.length();
  return total;
}

bool IntervalSet::contains(const Rational& x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Rational& v, const Interval& p) { return v < p.lo; });
  if (it == pieces_.begin()) return false;
  return std::prev(it)->contains(x);
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  IntervalSet out;
  std::size_t i = 0, j = 0;
  while (i < pieces_.size() && j < other.pieces_.size()) {
    const auto& a = pieces_[i];
    const auto& b = other.pieces_[j];
    Rational lo = max(a.lo, b.lo);
    Rational hi = min(a.hi, b.hi);
    if (lo <= hi) out.pieces_.push_back({lo, hi});
    if (a.hi < b.hi) ++i; else ++j;
  }
  return out;
}

IntervalSet IntervalSet::clip(const Rational& lo, const Rational& hi) const {
  return intersect(IntervalSet({{lo, hi}}));
}

IntervalSet IntervalSet::complement_in(const Rational& lo, const Rational& hi) const {
  IntervalSet out;
  Rational cursor = lo;
  for (const auto& p : clip(lo, hi).pieces_) {
    if (cursor < p.lo) out.pieces_.push_back({cursor, p.lo});
    cursor = max(cursor, p.hi);
  }
  if (cursor < hi) out.pieces_.push_back({cursor, hi});
  return out;
}

IntervalSet wrap_to_circle(const std::vector<Interval>& pieces, const Rational& period) {
  IntervalSet out;
  for (const auto& p : pieces) {
    if (p.length() >= period) return IntervalSet({{Rational(0), period}});
    Rational lo = mod(p.lo, period);
    Rational hi = lo + p.length();
    if (hi <= period) {
      out.add(lo, hi);
    } else {
      out.add(lo, period);
      out.add(Rational(0), hi - period);
    }
  }
  return out;
}

Rational circle_union_measure(const std::vector<Interval>& pieces, const Rational& period) {
  return wrap_to_circle(pieces, period).measure();
}

}  // namespace patrol
