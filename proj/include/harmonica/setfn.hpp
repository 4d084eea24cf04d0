#pragma once

#include <memory>
#include <vector>

#include "harmonica/expr.hpp"
#include "harmonica/interval.hpp"

namespace harmonica {

// Interval-valued function F(x) = [f1(x), f2(x)] on a positive domain.
// Endpoint functions are expression ASTs, or a shared uniform-grid table
// with linear interpolation for combinations that have no closed endpoint
// form. Ordering f1 <= f2 is validated on a sample grid at construction;
// between samples it is enforced at call time up to the stored tolerance.
class IntervalFn {
 public:
  static constexpr int default_validation_samples = 257;
  static constexpr int default_table_samples = 1025;

  struct Table {
    Interval domain;
    std::vector<double> lo;
    std::vector<double> hi;
  };

  IntervalFn() = default;

  const Interval& domain() const { return domain_; }
  double order_tol() const { return order_tol_; }
  bool tabulated() const { return table_ != nullptr; }

  // Endpoint ASTs; empty when tabulated.
  const Expr& lower() const { return lower_; }
  const Expr& upper() const { return upper_; }

  // Raw endpoint evaluation at a clamped in-domain point, without the
  // ordering repair applied by operator().
  double lower_value(double x) const;
  double upper_value(double x) const;

  // Full evaluation. Throws OutOfDomain when x falls outside the domain
  // beyond the boundary slack, OrderViolation when the endpoints cross by
  // more than order_tol(); crossings within tolerance are repaired by
  // swapping.
  Interval operator()(double x) const;

  // Domain membership with a relative slack band (see domain_slack), so
  // points produced by floating-point arithmetic that land a few ulps past
  // a boundary still count as boundary values.
  bool in_domain(double x) const;
  double clamp_to_domain(double x) const;

  // Internal factory used by the free-function constructors.
  static IntervalFn symbolic(Expr lower, Expr upper, const Interval& domain,
                             double order_tol);
  static IntervalFn from_table(std::shared_ptr<const Table> table,
                               double order_tol);

 private:
  Interval domain_{1.0, 1.0};
  double order_tol_ = 1e-9;
  Expr lower_;
  Expr upper_;
  std::shared_ptr<const Table> table_;
};

// Width of the boundary slack band for a domain: 1e-12 relative to the
// larger endpoint magnitude, at least 1e-12 absolute.
double domain_slack(const Interval& domain);

// Builds [f1, f2] on the given positive domain (domain.lo > 0 required).
// Both endpoints are evaluated on a uniform grid of `samples` points;
// f1 > f2 + tol anywhere on the grid raises OrderViolation with the first
// offending grid point as witness. Degenerate f1 == f2 is valid.
IntervalFn from_endpoints(const Expr& f1, const Expr& f2,
                          const Interval& domain,
                          int samples = IntervalFn::default_validation_samples,
                          double tol = 1e-9);

// Builds x -> f(x) * H for a scaling function f of uniform sign. The sign
// is established on the default validation grid; if f takes both strict
// signs, SignChange is raised with one witness of each sign.
IntervalFn from_scaled_set(const Expr& f, const Interval& h,
                           const Interval& domain);

Interval eval_fn(const IntervalFn& f, double x);

// Pointwise union when one operand contains the other uniformly on the
// grid: returns the outer function. Raises NestingViolation when neither
// contains the other within tol, with the grid point where the better
// direction fails worst. Domains must match exactly.
IntervalFn union_fn(const IntervalFn& f1, const IntervalFn& f2,
                    int samples = IntervalFn::default_validation_samples,
                    double tol = 1e-9);

// lambda * F + G with interval scaling semantics (endpoints swap for
// lambda < 0). lambda == 0 returns G unchanged. Symbolic when both inputs
// are symbolic, tabulated otherwise.
IntervalFn linear_combo(double lambda, const IntervalFn& f,
                        const IntervalFn& g);

// Pair of interval functions on a common domain, evaluated jointly.
struct BoxFn {
  IntervalFn first;
  IntervalFn second;

  const Interval& domain() const { return first.domain(); }
  bool in_domain(double x) const { return first.in_domain(x); }
  Box2 operator()(double x) const { return {first(x), second(x)}; }
};

BoxFn cartesian(const IntervalFn& f1, const IntervalFn& f2);

// Pointwise interval product. When each endpoint of both factors keeps a
// uniform sign on the sampling grid, the product endpoints are picked
// symbolically from the factor endpoints; otherwise the product is
// tabulated on default_table_samples points.
IntervalFn product_fn(const IntervalFn& f, const IntervalFn& g,
                      int samples = IntervalFn::default_validation_samples);

}  // namespace harmonica
