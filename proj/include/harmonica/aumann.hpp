#pragma once

#include "harmonica/interval.hpp"
#include "harmonica/quadrature.hpp"
#include "harmonica/setfn.hpp"

namespace harmonica {

// Normalized integral average of an interval function over [a, b]:
//   (a*b / (b-a)) * [ integral of f1(x)/x^2, integral of f2(x)/x^2 ].
// Endpoints are integrated independently at the given quadrature tolerance.
// Requires 0 < a < b and [a, b] inside F's domain.
Interval aumann_mean(const IntervalFn& f, double a, double b,
                     double tol = default_quad_tol);

// Same computation with the per-endpoint quadrature diagnostics exposed.
struct AumannResult {
  Interval mean;
  QuadResult lower;
  QuadResult upper;
};
AumannResult aumann_mean_detail(const IntervalFn& f, double a, double b,
                                double tol = default_quad_tol);

enum class HHVerdict { holds_within_tol, violated };

// Stable report strings: "HOLDS_WITHIN_TOL" / "VIOLATED".
const char* to_string(HHVerdict v);

// Two-sided midpoint/endpoint comparison for an interval function under
// harmonic m-interpolation on [a, b]:
//   half_sum_ab = (F(a) + m*F(b/m)) / 2
//   half_sum_ba = (m*F(a/m) + F(b)) / 2
// Both must be contained in the integral average within tol, and the
// smaller of the two half-sum lower bounds (min_inf_point) must be a member
// of the integral average within tol. margin_ab / margin_ba are inclusion
// depths; the verdict is holds_within_tol exactly when both margins are
// >= -tol and the membership holds.
struct HHReport {
  Interval integral_mean{0.0, 0.0};
  Interval half_sum_ab{0.0, 0.0};
  Interval half_sum_ba{0.0, 0.0};
  double margin_ab = 0.0;
  double margin_ba = 0.0;
  double min_inf_point = 0.0;
  bool min_inf_member = false;
  HHVerdict verdict = HHVerdict::violated;
};

// Requires 0 < a < b, m in (0, 1], and a, b, a/m, b/m all inside F's
// domain; OutOfDomain names the offending point otherwise.
HHReport check_hh_setvalued(const IntervalFn& f, double a, double b, double m,
                            double tol);

// Scalar form: lhs = (a*b/(b-a)) * integral of f(x)/x^2,
// rhs = min( (f(a) + m*f(b/m))/2, (m*f(a/m) + f(b))/2 ); holds when
// lhs <= rhs + tol.
struct ScalarHHReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};
ScalarHHReport check_hh_scalar(const Expr& f, double a, double b, double m,
                               double tol);

}  // namespace harmonica
