#pragma once

// Shared generators and fixture builders for the test suites. Everything
// here is deterministic given the Rng passed in.

#include <cmath>
#include <stdexcept>

#include "harmonica/convexity.hpp"
#include "harmonica/expr.hpp"
#include "harmonica/interval.hpp"
#include "harmonica/sampling.hpp"
#include "harmonica/setfn.hpp"

namespace ts {

struct QuadCoeffs {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  // Mirrors the evaluation order of the tree built by quad_expr: the two
  // products are summed left to right, then the offset is added.
  double operator()(double x) const {
    return (c2 * std::pow(x, 2.0) + c1 * x) + c0;
  }
};

// c2*x^2 + c1*x + c0 as an expression tree.
inline harmonica::Expr quad_expr(double c2, double c1, double c0) {
  using harmonica::Expr;
  const Expr x = Expr::variable();
  const Expr sq = harmonica::expr_pow(x, Expr::constant(2.0));
  return harmonica::expr_add(
      harmonica::expr_add(harmonica::expr_mul(Expr::constant(c2), sq),
                          harmonica::expr_mul(Expr::constant(c1), x)),
      Expr::constant(c0));
}

inline harmonica::Expr quad_expr(const QuadCoeffs& q) {
  return quad_expr(q.c2, q.c1, q.c0);
}

// Lower endpoint that certifies for every m in (0,1]: nonnegative
// curvature and slope plus a nonpositive offset. Each summand satisfies
// the weighted-interpolation bound, so the sum does too.
inline QuadCoeffs gen_certified_lower(harmonica::Rng& rng) {
  QuadCoeffs q;
  q.c2 = rng.uniform(0.0, 2.0);
  q.c1 = rng.uniform(0.0, 2.0);
  q.c0 = -rng.uniform(0.0, 3.0);
  return q;
}

// Same family, but arranged to stay strictly positive on [lo, inf): the
// offset eats at most 90% of the value at lo, and the slope is bounded
// away from zero so the function is strictly increasing.
inline QuadCoeffs gen_positive_certified_lower(harmonica::Rng& rng,
                                               double lo) {
  QuadCoeffs q;
  q.c2 = rng.uniform(0.1, 2.0);
  q.c1 = rng.uniform(0.1, 2.0);
  const double at_lo = q.c2 * std::pow(lo, 2.0) + q.c1 * lo;
  q.c0 = -rng.uniform(0.0, 0.9) * at_lo;
  return q;
}

// A certified interval function [quad, const] on [lo, hi]: the lower
// endpoint certifies for every m in (0,1], the constant upper endpoint is
// nonnegative and sits above the lower endpoint's maximum.
struct CertifiedFn {
  QuadCoeffs lo_q;
  double upper_c = 0.0;
  harmonica::IntervalFn fn;
};

inline CertifiedFn gen_certified_fn(harmonica::Rng& rng, double lo, double hi,
                                    bool positive_lower) {
  CertifiedFn out;
  out.lo_q = positive_lower ? gen_positive_certified_lower(rng, lo)
                            : gen_certified_lower(rng);
  // The lower endpoint is nondecreasing, so its maximum on [lo, hi] is at
  // hi.
  out.upper_c = out.lo_q(hi) + rng.uniform(0.5, 3.0);
  if (out.upper_c < 0.0) out.upper_c = 0.0;
  out.fn = harmonica::from_endpoints(
      quad_expr(out.lo_q), harmonica::Expr::constant(out.upper_c),
      harmonica::Interval(lo, hi));
  return out;
}

// Random expression tree. for_eval biases toward small nonnegative
// constants and constant exponents so that interval evaluation mostly
// stays in-domain; with for_eval == false the tree exercises the full
// grammar for print/parse round-trips. Constants are always nonnegative,
// negativity enters through explicit negation nodes.
inline harmonica::Expr gen_ast(harmonica::Rng& rng, int depth,
                               bool for_eval) {
  using harmonica::Expr;
  const int roll = rng.index(100);
  if (depth <= 0 || roll < 22) {
    if (rng.index(2) == 0) return Expr::variable();
    if (rng.index(3) == 0)
      return Expr::constant(static_cast<double>(rng.index(10)));
    return Expr::constant(rng.uniform(0.0, for_eval ? 2.5 : 40.0));
  }
  const auto sub = [&]() { return gen_ast(rng, depth - 1, for_eval); };
  if (roll < 32) return harmonica::expr_neg(sub());
  if (roll < 47) return harmonica::expr_add(sub(), sub());
  if (roll < 59) return harmonica::expr_sub(sub(), sub());
  if (roll < 71) return harmonica::expr_mul(sub(), sub());
  if (roll < 79) return harmonica::expr_div(sub(), sub());
  if (roll < 91) {
    const Expr base = sub();
    if (!for_eval && rng.index(4) == 0) return harmonica::expr_pow(base, sub());
    const double e = (rng.index(3) == 0)
                         ? 0.25 * static_cast<double>(rng.index(9))
                         : static_cast<double>(rng.index(4));
    return harmonica::expr_pow(base, Expr::constant(e));
  }
  const auto f = static_cast<harmonica::FuncId>(rng.index(4));
  return harmonica::expr_call(f, sub());
}

// Dyadic rationals with few mantissa bits; sums and small products of
// these are exact in double precision, which lets property tests assert
// bitwise equality instead of approximate containment.
inline double dyadic(harmonica::Rng& rng) {
  return (static_cast<double>(rng.index(257)) - 128.0) / 16.0;
}

inline harmonica::Interval dyadic_interval(harmonica::Rng& rng) {
  const double a = dyadic(rng);
  const double b = dyadic(rng);
  return harmonica::Interval(std::min(a, b), std::max(a, b));
}

// An exactly representable point of iv: lo + (k/16) * width.
inline double dyadic_point_in(harmonica::Rng& rng,
                              const harmonica::Interval& iv) {
  const double lam = static_cast<double>(rng.index(17)) / 16.0;
  return iv.lo + lam * (iv.hi - iv.lo);
}

}  // namespace ts
