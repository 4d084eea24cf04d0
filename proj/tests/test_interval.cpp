#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "harmonica/interval.hpp"
#include "harmonica/sampling.hpp"
#include "support.hpp"

using harmonica::Box2;
using harmonica::Inclusion;
using harmonica::Interval;
using harmonica::Rng;

TEST_CASE("construction validates endpoints") {
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(std::nan(""), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  const Interval p = Interval::point(3.5);
  CHECK(p.lo == 3.5);
  CHECK(p.hi == 3.5);
  CHECK(p.width() == 0.0);
  CHECK(Interval(1.0, 3.0).mid() == 2.0);
  CHECK(Interval(1.0, 3.0).contains(1.0));
  CHECK(Interval(1.0, 3.0).contains(3.0));
  CHECK_FALSE(Interval(1.0, 3.0).contains(3.0000001));
}

TEST_CASE("endpoint arithmetic on fixed operands") {
  CHECK(add(Interval(1, 2), Interval(3, 5)) == Interval(4, 7));
  CHECK(scale(-2.0, Interval(1, 3)) == Interval(-6, -2));
  CHECK(scale(0.5, Interval(2, 4)) == Interval(1, 2));
  CHECK(scale(0.0, Interval(-3, 9)) == Interval(0, 0));
  CHECK(mul(Interval(1, 2), Interval(3, 4)) == Interval(3, 8));
  CHECK(mul(Interval(1, 2), Interval(-1, 3)) == Interval(-2, 6));
  CHECK(mul(Interval(-2, -1), Interval(-3, -1)) == Interval(1, 6));
  CHECK(mul(Interval(-1, 2), Interval(-2, 3)) == Interval(-4, 6));
  CHECK(hull(Interval(0, 1), Interval(2, 3)) == Interval(0, 3));
  CHECK(hull(Interval(0, 2), Interval(1, 3)) == Interval(0, 3));
  CHECK(hull(Interval(1, 2), Interval(1, 2)) == Interval(1, 2));
}

TEST_CASE("inclusion margin is the smaller one-sided slack") {
  const Inclusion in = subset_within(Interval(1, 2), Interval(0, 3), 0.0);
  CHECK(in.holds);
  CHECK(in.margin == 1.0);

  const Inclusion out = subset_within(Interval(0, 3), Interval(1, 2), 0.0);
  CHECK_FALSE(out.holds);
  CHECK(out.margin == -1.0);

  const Inclusion tight = subset_within(Interval(1, 3), Interval(1, 3), 0.0);
  CHECK(tight.holds);
  CHECK(tight.margin == 0.0);

  // Overhang within tolerance still holds, and the margin reports the
  // signed depth unchanged.
  const Inclusion near =
      subset_within(Interval(0.9, 3.1), Interval(1.0, 3.0), 0.15);
  CHECK(near.holds);
  CHECK(near.margin == doctest::Approx(-0.1).epsilon(1e-12));

  CHECK_THROWS_AS(subset_within(Interval(0, 1), Interval(0, 1), -1.0),
                  std::invalid_argument);
}

TEST_CASE("box operations act componentwise") {
  const Box2 a{Interval(0, 1), Interval(2, 3)};
  const Box2 b{Interval(1, 1), Interval(-1, 0)};
  const Box2 s = add(a, b);
  CHECK(s.first == Interval(1, 2));
  CHECK(s.second == Interval(1, 3));
  const Box2 sc = scale(-1.0, a);
  CHECK(sc.first == Interval(-1, 0));
  CHECK(sc.second == Interval(-3, -2));

  // Component margins 1 and -1: the box margin is the worse one.
  const Box2 inner{Interval(1, 2), Interval(0, 3)};
  const Box2 outer{Interval(0, 3), Interval(1, 2)};
  const Inclusion m = subset_within(inner, outer, 0.0);
  CHECK_FALSE(m.holds);
  CHECK(m.margin == -1.0);

  const Box2 outer2{Interval(0, 3), Interval(-1, 4)};
  const Inclusion m2 = subset_within(inner, outer2, 0.0);
  CHECK(m2.holds);
  CHECK(m2.margin == 1.0);
}

// Dyadic operands with few mantissa bits make every sum and product below
// exact, so containment can be asserted with tolerance zero.
TEST_CASE("interval arithmetic encloses pointwise arithmetic") {
  Rng rng(20240816);
  for (int it = 0; it < 500; ++it) {
    const Interval a = ts::dyadic_interval(rng);
    const Interval b = ts::dyadic_interval(rng);
    const double p = ts::dyadic_point_in(rng, a);
    const double q = ts::dyadic_point_in(rng, b);

    CHECK(a.contains(p));
    CHECK(b.contains(q));
    CHECK(add(a, b).contains(p + q));
    CHECK(mul(a, b).contains(p * q));
    CHECK(hull(a, b).contains(p));
    CHECK(hull(a, b).contains(q));

    const double c = ts::dyadic(rng);
    CHECK(scale(c, a).contains(c * p));

    // Hull dominates both operands; every interval contains itself.
    CHECK(subset_within(a, hull(a, b), 0.0).holds);
    CHECK(subset_within(b, hull(a, b), 0.0).holds);
    CHECK(subset_within(a, a, 0.0).holds);
    CHECK(subset_within(a, a, 0.0).margin >= 0.0);
  }
}

TEST_CASE("mul matches the four-products rule on random operands") {
  Rng rng(7);
  for (int it = 0; it < 500; ++it) {
    const Interval a = ts::dyadic_interval(rng);
    const Interval b = ts::dyadic_interval(rng);
    const double p1 = a.lo * b.lo;
    const double p2 = a.lo * b.hi;
    const double p3 = a.hi * b.lo;
    const double p4 = a.hi * b.hi;
    const Interval m = mul(a, b);
    CHECK(m.lo == std::min(std::min(p1, p2), std::min(p3, p4)));
    CHECK(m.hi == std::max(std::max(p1, p2), std::max(p3, p4)));
  }
}
