#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>
#include <stdexcept>

#include "harmonica/convexity.hpp"
#include "harmonica/errors.hpp"
#include "harmonica/expr.hpp"
#include "harmonica/interval.hpp"
#include "harmonica/setfn.hpp"
#include "support.hpp"

using harmonica::check_scalar;
using harmonica::check_svf;
using harmonica::ConvexityReport;
using harmonica::Expr;
using harmonica::HarmonicParams;
using harmonica::harmonic_combination;
using harmonica::Interval;
using harmonica::IntervalFn;
using harmonica::OutOfDomain;
using harmonica::parse;
using harmonica::SampleTriple;
using harmonica::Verdict;

namespace {

bool triple_is(const std::optional<SampleTriple>& got, double x, double y,
               double t) {
  return got.has_value() && got->x == x && got->y == y && got->t == t;
}

IntervalFn fixture(const char* lo, const char* hi, double dlo, double dhi) {
  return harmonica::from_endpoints(parse(lo), parse(hi), Interval(dlo, dhi));
}

}  // namespace

TEST_CASE("parameter validation") {
  HarmonicParams p;
  CHECK_NOTHROW(harmonica::validate(p));
  for (const auto breakit : {
           +[](HarmonicParams& q) { q.m = 0.0; },
           +[](HarmonicParams& q) { q.m = 1.5; },
           +[](HarmonicParams& q) { q.m = -0.5; },
           +[](HarmonicParams& q) { q.alpha = -0.25; },
           +[](HarmonicParams& q) { q.alpha = 1.5; },
           +[](HarmonicParams& q) { q.tol = -1e-9; },
           +[](HarmonicParams& q) { q.samples = 1; },
           +[](HarmonicParams& q) { q.grid_t = 2; },
           +[](HarmonicParams& q) { q.trials = -1; },
       }) {
    HarmonicParams q;
    breakit(q);
    CHECK_THROWS_AS(harmonica::validate(q), std::invalid_argument);
  }
  // Both ends of the exponent range are legal.
  HarmonicParams zero_alpha;
  zero_alpha.alpha = 0.0;
  CHECK_NOTHROW(harmonica::validate(zero_alpha));
}

TEST_CASE("weighted harmonic interpolation hits its anchors exactly") {
  CHECK(harmonic_combination(4.0, 7.0, 0.0, 0.5) == 2.0);
  CHECK(harmonic_combination(4.0, 7.0, 1.0, 0.5) == 7.0);
  CHECK(harmonic_combination(1.0, 3.0, 0.5, 1.0) == 1.5);
  for (const double t : {0.1, 0.3, 0.7, 0.9}) {
    CHECK(harmonic_combination(1.7, 1.7, t, 1.0) == 1.7);
  }

  harmonica::Rng rng(31);
  for (int it = 0; it < 200; ++it) {
    const double x = rng.uniform(0.2, 5.0);
    const double y = rng.uniform(0.2, 5.0);
    const double t = rng.unit();
    const double m = rng.uniform(0.05, 1.0);
    const double h = harmonic_combination(x, y, t, m);
    const double lo = std::min(m * x, y);
    const double hi = std::max(m * x, y);
    CHECK(h >= lo - 1e-12 * hi);
    CHECK(h <= hi + 1e-12 * hi);
  }

  CHECK_THROWS_AS(harmonic_combination(0.0, 1.0, 0.5, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(harmonic_combination(1.0, 1.0, -0.1, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(harmonic_combination(1.0, 1.0, 0.5, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(harmonic_combination(1.0, 1.0, 0.5, 1.1),
                  std::invalid_argument);
}

TEST_CASE("the interpolation point is monotone in both endpoints") {
  // This is what justifies evaluating the set-wise combination image only
  // at the extreme corner pairs of A x B.
  harmonica::Rng rng(808);
  for (int it = 0; it < 200; ++it) {
    const double x = rng.uniform(0.2, 4.0);
    const double x2 = x + rng.uniform(0.0, 2.0);
    const double y = rng.uniform(0.2, 4.0);
    const double y2 = y + rng.uniform(0.0, 2.0);
    const double t = rng.unit();
    const double m = rng.uniform(0.05, 1.0);
    const double small = harmonic_combination(x, y, t, m);
    const double large = harmonic_combination(x2, y2, t, m);
    CHECK(small <= large * (1.0 + 1e-12));
  }
}

TEST_CASE("scaled-segment membership for plain intervals") {
  HarmonicParams p;

  SUBCASE("intervals touching zero absorb the scaled segment") {
    p.m = 0.5;
    const ConvexityReport r = harmonica::is_m_convex_set(Interval(0, 1), 0.5, p);
    CHECK(r.verdict == Verdict::certified_on_samples);
    CHECK(r.worst_margin == 0.0);
    CHECK(harmonica::is_m_convex_set(Interval(-1, 2), 0.7, p).verdict ==
          Verdict::certified_on_samples);
  }

  SUBCASE("a positive interval fails at the scaled lower corner") {
    const ConvexityReport r = harmonica::is_m_convex_set(Interval(1, 2), 0.5, p);
    CHECK(r.verdict == Verdict::falsified);
    CHECK(r.worst_margin == -0.5);
    CHECK(triple_is(r.counterexample, 1.0, 1.0, 0.0));
  }

  SUBCASE("a negative interval fails symmetrically") {
    const ConvexityReport r =
        harmonica::is_m_convex_set(Interval(-3, -1), 0.5, p);
    CHECK(r.verdict == Verdict::falsified);
    CHECK(r.worst_margin == -0.5);
    // At t == 0 the scaled point 0.5*a ignores b entirely, so the -0.5
    // margin ties across every b; the lexicographic rule keeps b = -3.
    CHECK(triple_is(r.counterexample, -1.0, -3.0, 0.0));
  }

  SUBCASE("unit weight keeps every interval closed under the segment") {
    const ConvexityReport r =
        harmonica::is_m_convex_set(Interval(0.5, 10), 1.0, p);
    CHECK(r.verdict == Verdict::certified_on_samples);
    CHECK(r.worst_margin == 0.0);
  }
}

TEST_CASE("ray-contraction membership") {
  HarmonicParams p;
  const ConvexityReport ok = harmonica::is_starshaped(Interval(0, 1), p);
  CHECK(ok.verdict == Verdict::certified_on_samples);
  CHECK(ok.worst_margin == 0.0);
  CHECK(ok.samples_checked == 16);  // two endpoints, eight nonzero t values

  const ConvexityReport bad = harmonica::is_starshaped(Interval(1, 2), p);
  CHECK(bad.verdict == Verdict::falsified);
  CHECK(bad.worst_margin == -0.875);
  CHECK(triple_is(bad.counterexample, 1.0, 1.0, 0.125));

  CHECK(harmonica::is_starshaped(Interval(-2, 1), p).verdict ==
        Verdict::certified_on_samples);
  CHECK(harmonica::is_starshaped(Interval(-2, -1), p).verdict ==
        Verdict::falsified);
}

TEST_CASE("scalar certification fixtures") {
  HarmonicParams p;

  SUBCASE("x^2 certifies with zero slack at the anchors") {
    const ConvexityReport r = check_scalar(parse("x^2"), Interval(1, 3), p);
    CHECK(r.verdict == Verdict::certified_on_samples);
    CHECK(r.worst_margin == 0.0);
    CHECK(r.samples_checked == 17LL * 17 * 9);
    CHECK(r.samples_skipped == 0);
  }

  SUBCASE("concave bulge is caught at the hand-checked triple") {
    p.samples = 3;
    p.grid_t = 3;
    const ConvexityReport r = check_scalar(parse("0-x^2"), Interval(1, 3), p);
    CHECK(r.verdict == Verdict::falsified);
    CHECK(r.worst_margin == -2.75);
    CHECK(triple_is(r.counterexample, 1.0, 3.0, 0.5));
  }

  SUBCASE("reciprocal is the equality case at unit weight") {
    const ConvexityReport r = check_scalar(parse("1/x"), Interval(1, 2), p);
    CHECK(r.verdict == Verdict::certified_on_samples);
    CHECK(std::fabs(r.worst_margin) <= 1e-12);
  }

  SUBCASE("lowering the interpolation exponent breaks the negative equality case") {
    // -1/x is the equality case at alpha = 1; with alpha < 1 the weights
    // t^alpha, (1-t)^alpha grow, which drags the bound below the value on
    // negative functions.
    const ConvexityReport eq =
        check_scalar(parse("0 - 1/x"), Interval(1, 2), p);
    CHECK(eq.verdict == Verdict::certified_on_samples);
    CHECK(std::fabs(eq.worst_margin) <= 1e-12);

    p.alpha = 0.5;
    const ConvexityReport r =
        check_scalar(parse("0 - 1/x"), Interval(1, 2), p);
    CHECK(r.verdict == Verdict::falsified);

    // At alpha = 0 the bound is the plain sum f(y) + m*f(x), which dominates
    // any positive reciprocal value.
    p.alpha = 0.0;
    const ConvexityReport sum = check_scalar(parse("1/x"), Interval(1, 2), p);
    CHECK(sum.verdict == Verdict::certified_on_samples);
  }

  SUBCASE("a positive constant fails for fractional weight") {
    p.m = 0.5;
    const ConvexityReport r = check_scalar(parse("1"), Interval(1, 3), p);
    CHECK(r.verdict == Verdict::falsified);
    const ConvexityReport ok = check_scalar(parse("1"), Interval(1, 3),
                                            HarmonicParams{});
    CHECK(ok.verdict == Verdict::certified_on_samples);
  }
}

TEST_CASE("interval-valued certification fixtures") {
  HarmonicParams p;

  SUBCASE("parabola under a constant roof certifies") {
    const ConvexityReport r = check_svf(fixture("x^2", "12", 1, 3), p);
    CHECK(r.verdict == Verdict::certified_on_samples);
    CHECK(r.worst_margin == 0.0);
    CHECK(r.samples_checked == 17LL * 17 * 9);
  }

  SUBCASE("growing width in the wrong direction is falsified") {
    const ConvexityReport r = check_svf(fixture("2*x^2", "3*x^2", 1, 3), p);
    CHECK(r.verdict == Verdict::falsified);
    CHECK(r.counterexample.has_value());
    CHECK(r.worst_margin < -p.tol);
  }

  SUBCASE("degenerate reciprocal is the equality case") {
    const ConvexityReport r = check_svf(fixture("1/x", "1/x", 1, 2), p);
    CHECK(r.verdict == Verdict::certified_on_samples);
    CHECK(std::fabs(r.worst_margin) <= 1e-12);
  }

  SUBCASE("degenerate identity cannot satisfy a two-sided inclusion") {
    const ConvexityReport r = check_svf(fixture("x", "x", 1, 3), p);
    CHECK(r.verdict == Verdict::falsified);
    CHECK(r.counterexample.has_value());
  }

  SUBCASE("constant intervals: equality at unit weight, failure below it") {
    const ConvexityReport ok = check_svf(fixture("2", "5", 1, 3), p);
    CHECK(ok.verdict == Verdict::certified_on_samples);
    CHECK(ok.worst_margin == 0.0);

    p.m = 0.5;
    const ConvexityReport bad = check_svf(fixture("2", "5", 1, 3), p);
    CHECK(bad.verdict == Verdict::falsified);
    CHECK(bad.worst_margin == -1.0);
    CHECK(triple_is(bad.counterexample, 2.0, 1.0, 0.0));
  }

  SUBCASE("fractional weight skips combinations that exit the domain") {
    p.m = 0.5;
    const ConvexityReport r = check_svf(fixture("x^2", "12", 1, 1.2), p);
    CHECK(r.verdict == Verdict::certified_on_samples);
    CHECK(r.samples_skipped > 0);
    CHECK(r.samples_checked + r.samples_skipped == 17LL * 17 * 9);
  }

  SUBCASE("random sampling is reproducible per seed") {
    p.trials = 64;
    p.seed = 1234;
    const ConvexityReport a = check_svf(fixture("x^2", "12", 1, 3), p);
    const ConvexityReport b = check_svf(fixture("x^2", "12", 1, 3), p);
    CHECK(a.worst_margin == b.worst_margin);
    CHECK(a.samples_checked == b.samples_checked);
    p.seed = 1235;
    const ConvexityReport c = check_svf(fixture("x^2", "12", 1, 3), p);
    CHECK(c.samples_checked == a.samples_checked);
  }
}

TEST_CASE("paired functions certify iff both components do") {
  HarmonicParams p;
  const IntervalFn good1 = fixture("x^2", "12", 1, 3);
  const IntervalFn good2 = fixture("1/x", "1/x", 1, 3);
  const IntervalFn bad = fixture("x", "x", 1, 3);

  const ConvexityReport both =
      check_svf_box(harmonica::cartesian(good1, good2), p);
  CHECK(both.verdict == Verdict::certified_on_samples);

  const ConvexityReport mixed =
      check_svf_box(harmonica::cartesian(good1, bad), p);
  CHECK(mixed.verdict == Verdict::falsified);

  // The joint margin at a sample is the worse component margin, and min
  // commutes with min: the joint worst equals the worse individual worst.
  const ConvexityReport w1 = check_svf(good1, p);
  const ConvexityReport w2 = check_svf(bad, p);
  CHECK(mixed.worst_margin == std::min(w1.worst_margin, w2.worst_margin));
}

TEST_CASE("sampled image hulls") {
  const IntervalFn f = fixture("x^2", "x^2+1", 1, 2);
  CHECK(harmonica::image_hull(f, Interval(1, 2), 33) == Interval(1, 5));
  CHECK(harmonica::image_hull(f, Interval(1.5, 2), 33) == Interval(2.25, 5));
  CHECK(harmonica::image_hull(f, Interval::point(1.5), 9) ==
        Interval(2.25, 3.25));
  CHECK_THROWS_AS(harmonica::image_hull(f, Interval(0.5, 1), 9), OutOfDomain);
  CHECK_THROWS_AS(harmonica::image_hull(f, Interval(1, 2.5), 9), OutOfDomain);
}

TEST_CASE("set-argument certification") {
  HarmonicParams p;

  SUBCASE("constant function: hulls reproduce the constant, equality holds") {
    const IntervalFn f = fixture("0", "1", 1, 3);
    const ConvexityReport r =
        harmonica::check_svf_setwise(f, Interval(1, 2), Interval(2, 3), p);
    CHECK(r.verdict == Verdict::certified_on_samples);
    CHECK(r.worst_margin == 0.0);
  }

  SUBCASE("certified fixture stays certified on subinterval arguments") {
    const IntervalFn f = fixture("x^2", "12", 1, 3);
    const ConvexityReport r = harmonica::check_svf_setwise(
        f, Interval(1, 1.5), Interval(2, 2.5), p);
    CHECK(r.verdict == Verdict::certified_on_samples);
  }

  SUBCASE("singleton arguments reduce to the pointwise margin") {
    p.grid_t = 3;
    const IntervalFn f = fixture("2*x^2", "3*x^2", 1, 3);
    const ConvexityReport r = harmonica::check_svf_setwise(
        f, Interval::point(1), Interval::point(3), p);
    CHECK(r.verdict == Verdict::falsified);
    CHECK(r.worst_margin == -8.25);
    CHECK(triple_is(r.counterexample, 1.0, 3.0, 0.5));
  }

  SUBCASE("arguments near the lower boundary mostly skip at small weight") {
    p.m = 0.5;
    const IntervalFn f = fixture("x^2", "12", 1, 3);
    const ConvexityReport r = harmonica::check_svf_setwise(
        f, Interval(1, 1.2), Interval(1, 1.2), p);
    CHECK(r.samples_skipped > 0);
    CHECK(r.coverage_warning);
  }
}

TEST_CASE("generated certified functions certify across weights") {
  harmonica::Rng rng(777);
  HarmonicParams p;
  p.samples = 9;
  p.trials = 32;
  const double ms[] = {1.0, 0.75, 0.5};
  for (int it = 0; it < 12; ++it) {
    p.m = ms[it % 3];
    p.seed = 1000 + static_cast<std::uint64_t>(it);
    const ts::CertifiedFn cf =
        ts::gen_certified_fn(rng, 1.0, 3.0, it % 2 == 0);
    const ConvexityReport r = check_svf(cf.fn, p);
    CAPTURE(cf.lo_q.c2);
    CAPTURE(cf.lo_q.c1);
    CAPTURE(cf.lo_q.c0);
    CAPTURE(cf.upper_c);
    CAPTURE(p.m);
    CHECK(r.verdict == Verdict::certified_on_samples);
  }
}
