#include "harmonica/aumann.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "harmonica/errors.hpp"

namespace harmonica {

namespace {

std::string num_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void require_bounds(double a, double b, const char* who) {
  if (!(0.0 < a && a < b))
    throw std::invalid_argument(std::string(who) + ": requires 0 < a < b");
}

void require_point(const IntervalFn& f, double x, const char* which) {
  if (!f.in_domain(x))
    throw OutOfDomain(x, which,
                      std::string(which) + " = " + num_str(x) +
                          " falls outside the function domain [" +
                          num_str(f.domain().lo) + ", " +
                          num_str(f.domain().hi) + "]");
}

}  // namespace

AumannResult aumann_mean_detail(const IntervalFn& f, double a, double b,
                                double tol) {
  require_bounds(a, b, "aumann_mean");
  require_point(f, a, "a");
  require_point(f, b, "b");
  const double weight = a * b / (b - a);
  const QuadResult lo_q = adaptive_simpson(
      [&f](double x) { return f.lower_value(x) / (x * x); }, a, b, tol);
  const QuadResult hi_q = adaptive_simpson(
      [&f](double x) { return f.upper_value(x) / (x * x); }, a, b, tol);
  const double lo = weight * lo_q.value;
  const double hi = weight * hi_q.value;
  // Quadrature noise can invert a degenerate interval's endpoints.
  return {Interval(std::min(lo, hi), std::max(lo, hi)), lo_q, hi_q};
}

Interval aumann_mean(const IntervalFn& f, double a, double b, double tol) {
  return aumann_mean_detail(f, a, b, tol).mean;
}

const char* to_string(HHVerdict v) {
  return v == HHVerdict::holds_within_tol ? "HOLDS_WITHIN_TOL" : "VIOLATED";
}

HHReport check_hh_setvalued(const IntervalFn& f, double a, double b, double m,
                            double tol) {
  require_bounds(a, b, "check_hh_setvalued");
  if (!(m > 0.0 && m <= 1.0))
    throw std::invalid_argument("check_hh_setvalued: m must be in (0, 1]");
  if (!(tol >= 0.0))
    throw std::invalid_argument("check_hh_setvalued: tol must be >= 0");
  require_point(f, a, "a");
  require_point(f, b, "b");
  require_point(f, a / m, "a/m");
  require_point(f, b / m, "b/m");

  HHReport rep;
  rep.integral_mean = aumann_mean(f, a, b, default_quad_tol);
  rep.half_sum_ab = scale(0.5, add(f(a), scale(m, f(b / m))));
  rep.half_sum_ba = scale(0.5, add(scale(m, f(a / m)), f(b)));
  rep.margin_ab = subset_within(rep.half_sum_ab, rep.integral_mean, 0.0).margin;
  rep.margin_ba = subset_within(rep.half_sum_ba, rep.integral_mean, 0.0).margin;
  rep.min_inf_point = std::min(rep.half_sum_ab.lo, rep.half_sum_ba.lo);
  const double member_margin =
      std::min(rep.min_inf_point - rep.integral_mean.lo,
               rep.integral_mean.hi - rep.min_inf_point);
  rep.min_inf_member = member_margin >= -tol;
  const bool contained =
      std::min(rep.margin_ab, rep.margin_ba) >= -tol;
  rep.verdict = (contained && rep.min_inf_member)
                    ? HHVerdict::holds_within_tol
                    : HHVerdict::violated;
  return rep;
}

ScalarHHReport check_hh_scalar(const Expr& f, double a, double b, double m,
                               double tol) {
  require_bounds(a, b, "check_hh_scalar");
  if (!(m > 0.0 && m <= 1.0))
    throw std::invalid_argument("check_hh_scalar: m must be in (0, 1]");
  if (!(tol >= 0.0))
    throw std::invalid_argument("check_hh_scalar: tol must be >= 0");
  if (f.empty())
    throw std::invalid_argument("check_hh_scalar: empty expression");
  ScalarHHReport rep;
  const double weight = a * b / (b - a);
  rep.lhs = weight * integrate_weighted(f, a, b).value;
  const double cand_ab = 0.5 * (f.eval(a) + m * f.eval(b / m));
  const double cand_ba = 0.5 * (m * f.eval(a / m) + f.eval(b));
  rep.rhs = std::min(cand_ab, cand_ba);
  rep.holds = rep.lhs <= rep.rhs + tol;
  return rep;
}

}  // namespace harmonica
