#include "harmonica/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "harmonica/errors.hpp"

namespace harmonica {

namespace {

struct SimpsonCtx {
  const std::function<double(double)>& g;
  long long budget;
  long long evals = 0;
  double err_acc = 0.0;

  double fetch(double x) {
    if (evals >= budget)
      throw NonConvergence(evals,
                           "quadrature exhausted its evaluation budget of " +
                               std::to_string(budget));
    ++evals;
    const double v = g(x);
    if (!std::isfinite(v))
      throw DomainError("integrand produced a non-finite value at x = " +
                        std::to_string(x));
    return v;
  }

  double recurse(double a, double fa, double m, double fm, double b,
                 double fb, double whole, double tol) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    // Subintervals too narrow to split further are accepted as is; the
    // midpoints have collided with the endpoints in floating point.
    if (lm <= a || lm >= m || rm <= m || rm >= b) return whole;
    const double flm = fetch(lm);
    const double frm = fetch(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = (left + right - whole) / 15.0;
    if (std::fabs(err) <= tol) {
      err_acc += std::fabs(err);
      return left + right + err;
    }
    const double half_tol = 0.5 * tol;
    return recurse(a, fa, lm, flm, m, fm, left, half_tol) +
           recurse(m, fm, rm, frm, b, fb, right, half_tol);
  }
};

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& g, double a,
                            double b, double tol, long long max_evals) {
  if (!(a < b))
    throw std::invalid_argument("adaptive_simpson: requires a < b");
  if (!(tol >= 0.0))
    throw std::invalid_argument("adaptive_simpson: tol must be >= 0");
  if (max_evals < 5)
    throw std::invalid_argument("adaptive_simpson: max_evals must be >= 5");
  SimpsonCtx ctx{g, max_evals};
  const double m = 0.5 * (a + b);
  const double fa = ctx.fetch(a);
  const double fm = ctx.fetch(m);
  const double fb = ctx.fetch(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double value = ctx.recurse(a, fa, m, fm, b, fb, whole, tol);
  return {value, ctx.err_acc, ctx.evals};
}

QuadResult integrate_weighted(const Expr& f, double a, double b, double tol) {
  if (!(0.0 < a && a < b))
    throw std::invalid_argument("integrate_weighted: requires 0 < a < b");
  if (f.empty())
    throw std::invalid_argument("integrate_weighted: empty expression");
  return adaptive_simpson([&f](double x) { return f.eval(x) / (x * x); }, a,
                          b, tol);
}

}  // namespace harmonica
