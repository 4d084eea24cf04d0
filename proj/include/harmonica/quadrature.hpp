#pragma once

#include <functional>

#include "harmonica/expr.hpp"

namespace harmonica {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long long evaluations = 0;
};

inline constexpr double default_quad_tol = 1e-10;
inline constexpr long long default_quad_max_evals = 1 << 20;

// Adaptive Simpson quadrature with Richardson acceptance: a panel is
// accepted when |(S_left + S_right - S)/15| <= tol, contributing
// S_left + S_right plus that correction. Each accepted panel's estimate is
// accumulated into abs_error_estimate. Throws NonConvergence when more than
// max_evals integrand evaluations would be needed. Requires a < b and a
// finite integrand on [a, b].
QuadResult adaptive_simpson(const std::function<double(double)>& g, double a,
                            double b, double tol = default_quad_tol,
                            long long max_evals = default_quad_max_evals);

// Integral of f(x) / x^2 over [a, b] with 0 < a < b. This weight turns
// averages over the interpolation parameter into integrals in x.
QuadResult integrate_weighted(const Expr& f, double a, double b,
                              double tol = default_quad_tol);

}  // namespace harmonica
