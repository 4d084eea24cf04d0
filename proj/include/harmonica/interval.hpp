#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace harmonica {

// Closed bounded interval [lo, hi]. Endpoints are finite and ordered; the
// constructor enforces both. Degenerate [c, c] is allowed, empty is not.
// All operations return new values.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(std::isfinite(lo) && std::isfinite(hi)))
      throw std::invalid_argument("Interval: endpoints must be finite");
    if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
  }

  static Interval point(double c) { return Interval(c, c); }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

inline bool operator==(const Interval& a, const Interval& b) {
  return a.lo == b.lo && a.hi == b.hi;
}

inline Interval add(const Interval& a, const Interval& b) {
  return Interval(a.lo + b.lo, a.hi + b.hi);
}

// c * [lo, hi]; endpoints swap when c < 0.
inline Interval scale(double c, const Interval& a) {
  if (c >= 0.0) return Interval(c * a.lo, c * a.hi);
  return Interval(c * a.hi, c * a.lo);
}

inline Interval mul(const Interval& a, const Interval& b) {
  const double p1 = a.lo * b.lo;
  const double p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo;
  const double p4 = a.hi * b.hi;
  return Interval(std::min(std::min(p1, p2), std::min(p3, p4)),
                  std::max(std::max(p1, p2), std::max(p3, p4)));
}

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

// Signed containment depth of a inside b: positive when a sits strictly
// inside, zero when an endpoint touches, negative by the worst overhang.
struct Inclusion {
  bool holds;
  double margin;
};

inline Inclusion subset_within(const Interval& a, const Interval& b,
                               double tol) {
  if (!(tol >= 0.0))
    throw std::invalid_argument("subset_within: tol must be >= 0");
  const double margin = std::min(a.lo - b.lo, b.hi - a.hi);
  return {margin >= -tol, margin};
}

// Axis-aligned box in R^2, used for paired interval functions.
struct Box2 {
  Interval first;
  Interval second;
};

inline Box2 add(const Box2& a, const Box2& b) {
  return {add(a.first, b.first), add(a.second, b.second)};
}

inline Box2 scale(double c, const Box2& a) {
  return {scale(c, a.first), scale(c, a.second)};
}

// Componentwise containment; the box margin is the worse component margin.
inline Inclusion subset_within(const Box2& a, const Box2& b, double tol) {
  const Inclusion r1 = subset_within(a.first, b.first, tol);
  const Inclusion r2 = subset_within(a.second, b.second, tol);
  const double margin = std::min(r1.margin, r2.margin);
  return {margin >= -tol, margin};
}

}  // namespace harmonica
