#include "harmonica/setfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

#include "harmonica/errors.hpp"
#include "harmonica/sampling.hpp"

namespace harmonica {

namespace {

std::string num_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double finite_eval(const Expr& e, double x) {
  const double v = e.eval(x);
  if (!std::isfinite(v))
    throw DomainError("non-finite endpoint value at x = " + num_str(x));
  return v;
}

double interp(const std::vector<double>& v, const Interval& d, double xc) {
  const std::size_t n = v.size();
  if (n == 1 || d.hi == d.lo) return v[0];
  const double pos = (xc - d.lo) / (d.hi - d.lo) * static_cast<double>(n - 1);
  if (pos <= 0.0) return v[0];
  if (pos >= static_cast<double>(n - 1)) return v[n - 1];
  std::size_t i = static_cast<std::size_t>(pos);
  if (i > n - 2) i = n - 2;
  const double frac = pos - static_cast<double>(i);
  return v[i] + frac * (v[i + 1] - v[i]);
}

void require_positive_domain(const Interval& domain, const char* who) {
  if (!(domain.lo > 0.0))
    throw std::invalid_argument(std::string(who) +
                                ": domain must satisfy lo > 0");
}

void require_same_domain(const IntervalFn& a, const IntervalFn& b,
                         const char* who) {
  if (!(a.domain() == b.domain()))
    throw std::invalid_argument(std::string(who) +
                                ": operands must share an identical domain");
}

IntervalFn tabulate_product(const IntervalFn& f, const IntervalFn& g) {
  auto table = std::make_shared<IntervalFn::Table>();
  table->domain = f.domain();
  const auto xs =
      sample_grid(f.domain(), IntervalFn::default_table_samples);
  table->lo.reserve(xs.size());
  table->hi.reserve(xs.size());
  for (const double x : xs) {
    const Interval p = mul(f(x), g(x));
    table->lo.push_back(p.lo);
    table->hi.push_back(p.hi);
  }
  return IntervalFn::from_table(std::move(table),
                                std::max(f.order_tol(), g.order_tol()));
}

enum class Sign { nonneg, nonpos, mixed };

Sign classify(const Expr& e, const std::vector<double>& xs) {
  bool has_pos = false;
  bool has_neg = false;
  for (const double x : xs) {
    const double v = finite_eval(e, x);
    if (v > 0.0) has_pos = true;
    if (v < 0.0) has_neg = true;
    if (has_pos && has_neg) return Sign::mixed;
  }
  return has_neg ? Sign::nonpos : Sign::nonneg;
}

// Which factor endpoints form a product endpoint: F endpoint then G endpoint.
enum class PickPair { LL, LU, UL, UU };

Expr pick_expr(PickPair p, const IntervalFn& f, const IntervalFn& g) {
  switch (p) {
    case PickPair::LL:
      return expr_mul(f.lower(), g.lower());
    case PickPair::LU:
      return expr_mul(f.lower(), g.upper());
    case PickPair::UL:
      return expr_mul(f.upper(), g.lower());
    case PickPair::UU:
      return expr_mul(f.upper(), g.upper());
  }
  throw std::logic_error("pick_expr: bad pair");
}

}  // namespace

double domain_slack(const Interval& domain) {
  const double scale =
      std::max(1.0, std::max(std::fabs(domain.lo), std::fabs(domain.hi)));
  return 1e-12 * scale;
}

IntervalFn IntervalFn::symbolic(Expr lower, Expr upper, const Interval& domain,
                                double order_tol) {
  IntervalFn f;
  f.domain_ = domain;
  f.order_tol_ = order_tol;
  f.lower_ = std::move(lower);
  f.upper_ = std::move(upper);
  return f;
}

IntervalFn IntervalFn::from_table(std::shared_ptr<const Table> table,
                                  double order_tol) {
  if (!table || table->lo.empty() || table->lo.size() != table->hi.size())
    throw std::invalid_argument("IntervalFn::from_table: malformed table");
  IntervalFn f;
  f.domain_ = table->domain;
  f.order_tol_ = order_tol;
  f.table_ = std::move(table);
  return f;
}

bool IntervalFn::in_domain(double x) const {
  const double slack = domain_slack(domain_);
  return x >= domain_.lo - slack && x <= domain_.hi + slack;
}

double IntervalFn::clamp_to_domain(double x) const {
  return std::min(std::max(x, domain_.lo), domain_.hi);
}

double IntervalFn::lower_value(double x) const {
  if (!in_domain(x))
    throw OutOfDomain(x, "x",
                      "evaluation point " + num_str(x) +
                          " outside domain [" + num_str(domain_.lo) + ", " +
                          num_str(domain_.hi) + "]");
  const double xc = clamp_to_domain(x);
  if (table_) return interp(table_->lo, domain_, xc);
  return finite_eval(lower_, xc);
}

double IntervalFn::upper_value(double x) const {
  if (!in_domain(x))
    throw OutOfDomain(x, "x",
                      "evaluation point " + num_str(x) +
                          " outside domain [" + num_str(domain_.lo) + ", " +
                          num_str(domain_.hi) + "]");
  const double xc = clamp_to_domain(x);
  if (table_) return interp(table_->hi, domain_, xc);
  return finite_eval(upper_, xc);
}

Interval IntervalFn::operator()(double x) const {
  double l = lower_value(x);
  double u = upper_value(x);
  if (l > u) {
    if (l - u <= order_tol_) {
      std::swap(l, u);
    } else {
      throw OrderViolation(clamp_to_domain(x), l, u,
                           "endpoints cross at x = " +
                               num_str(clamp_to_domain(x)) + ": lower " +
                               num_str(l) + " > upper " + num_str(u));
    }
  }
  return Interval(l, u);
}

IntervalFn from_endpoints(const Expr& f1, const Expr& f2,
                          const Interval& domain, int samples, double tol) {
  require_positive_domain(domain, "from_endpoints");
  if (f1.empty() || f2.empty())
    throw std::invalid_argument("from_endpoints: empty endpoint expression");
  if (samples < 2)
    throw std::invalid_argument("from_endpoints: samples must be >= 2");
  if (!(tol >= 0.0))
    throw std::invalid_argument("from_endpoints: tol must be >= 0");
  for (const double x : sample_grid(domain, samples)) {
    const double l = finite_eval(f1, x);
    const double u = finite_eval(f2, x);
    if (l - u > tol)
      throw OrderViolation(x, l, u,
                           "lower endpoint exceeds upper at x = " +
                               num_str(x) + ": " + num_str(l) + " > " +
                               num_str(u) + " + tol");
  }
  return IntervalFn::symbolic(f1, f2, domain, tol);
}

IntervalFn from_scaled_set(const Expr& f, const Interval& h,
                           const Interval& domain) {
  require_positive_domain(domain, "from_scaled_set");
  if (f.empty())
    throw std::invalid_argument("from_scaled_set: empty expression");
  bool has_pos = false;
  bool has_neg = false;
  double pos_witness = 0.0;
  double neg_witness = 0.0;
  for (const double x :
       sample_grid(domain, IntervalFn::default_validation_samples)) {
    const double v = finite_eval(f, x);
    if (v > 0.0 && !has_pos) {
      has_pos = true;
      pos_witness = x;
    }
    if (v < 0.0 && !has_neg) {
      has_neg = true;
      neg_witness = x;
    }
    if (has_pos && has_neg)
      throw SignChange(neg_witness, pos_witness,
                       "scaling function changes sign: negative at x = " +
                           num_str(neg_witness) + ", positive at x = " +
                           num_str(pos_witness));
  }
  // f(x) * [h.lo, h.hi]; endpoint order flips where f is nonpositive.
  Expr lower, upper;
  if (has_neg) {
    lower = expr_mul(f, Expr::constant(h.hi));
    upper = expr_mul(f, Expr::constant(h.lo));
  } else {
    lower = expr_mul(f, Expr::constant(h.lo));
    upper = expr_mul(f, Expr::constant(h.hi));
  }
  return IntervalFn::symbolic(std::move(lower), std::move(upper), domain,
                              1e-9);
}

Interval eval_fn(const IntervalFn& f, double x) { return f(x); }

IntervalFn union_fn(const IntervalFn& f1, const IntervalFn& f2, int samples,
                    double tol) {
  require_same_domain(f1, f2, "union_fn");
  if (samples < 2)
    throw std::invalid_argument("union_fn: samples must be >= 2");
  if (!(tol >= 0.0)) throw std::invalid_argument("union_fn: tol must be >= 0");
  double worst12 = std::numeric_limits<double>::infinity();
  double worst21 = worst12;
  double arg12 = f1.domain().lo;
  double arg21 = arg12;
  for (const double x : sample_grid(f1.domain(), samples)) {
    const Interval a = f1(x);
    const Interval b = f2(x);
    const double m12 = subset_within(a, b, 0.0).margin;
    const double m21 = subset_within(b, a, 0.0).margin;
    if (m12 < worst12) {
      worst12 = m12;
      arg12 = x;
    }
    if (m21 < worst21) {
      worst21 = m21;
      arg21 = x;
    }
  }
  if (worst12 >= -tol) return f2;
  if (worst21 >= -tol) return f1;
  const bool dir12 = worst12 >= worst21;
  const double witness = dir12 ? arg12 : arg21;
  throw NestingViolation(
      witness, "neither operand contains the other: containment fails by " +
                   num_str(-(dir12 ? worst12 : worst21)) + " at x = " +
                   num_str(witness));
}

IntervalFn linear_combo(double lambda, const IntervalFn& f,
                        const IntervalFn& g) {
  require_same_domain(f, g, "linear_combo");
  if (!std::isfinite(lambda))
    throw std::invalid_argument("linear_combo: lambda must be finite");
  if (lambda == 0.0) return g;
  if (!f.tabulated() && !g.tabulated()) {
    const Expr lam = Expr::constant(lambda);
    Expr lower, upper;
    if (lambda > 0.0) {
      lower = expr_add(expr_mul(lam, f.lower()), g.lower());
      upper = expr_add(expr_mul(lam, f.upper()), g.upper());
    } else {
      lower = expr_add(expr_mul(lam, f.upper()), g.lower());
      upper = expr_add(expr_mul(lam, f.lower()), g.upper());
    }
    return IntervalFn::symbolic(std::move(lower), std::move(upper), f.domain(),
                                std::max(f.order_tol(), g.order_tol()));
  }
  auto table = std::make_shared<IntervalFn::Table>();
  table->domain = f.domain();
  const auto xs = sample_grid(f.domain(), IntervalFn::default_table_samples);
  table->lo.reserve(xs.size());
  table->hi.reserve(xs.size());
  for (const double x : xs) {
    const Interval v = add(scale(lambda, f(x)), g(x));
    table->lo.push_back(v.lo);
    table->hi.push_back(v.hi);
  }
  return IntervalFn::from_table(std::move(table),
                                std::max(f.order_tol(), g.order_tol()));
}

BoxFn cartesian(const IntervalFn& f1, const IntervalFn& f2) {
  require_same_domain(f1, f2, "cartesian");
  return {f1, f2};
}

IntervalFn product_fn(const IntervalFn& f, const IntervalFn& g, int samples) {
  require_same_domain(f, g, "product_fn");
  if (samples < 2)
    throw std::invalid_argument("product_fn: samples must be >= 2");
  if (f.tabulated() || g.tabulated()) return tabulate_product(f, g);

  const auto xs = sample_grid(f.domain(), samples);
  const Sign sf1 = classify(f.lower(), xs);
  const Sign sf2 = classify(f.upper(), xs);
  const Sign sg1 = classify(g.lower(), xs);
  const Sign sg2 = classify(g.upper(), xs);
  if (sf1 == Sign::mixed || sf2 == Sign::mixed || sg1 == Sign::mixed ||
      sg2 == Sign::mixed)
    return tabulate_product(f, g);

  // P: entirely >= 0, N: entirely <= 0, M: straddles zero.
  enum class Pat { P, N, M };
  const auto pat = [](Sign s1, Sign s2) {
    if (s1 == Sign::nonneg) return Pat::P;
    if (s2 == Sign::nonpos) return Pat::N;
    return Pat::M;
  };
  const Pat pf = pat(sf1, sf2);
  const Pat pg = pat(sg1, sg2);
  if (pf == Pat::M && pg == Pat::M) return tabulate_product(f, g);

  // Product endpoint selection by sign pattern, from the four-product
  // min/max analysis of interval multiplication.
  PickPair lo_pick, hi_pick;
  if (pf == Pat::P && pg == Pat::P) {
    lo_pick = PickPair::LL;
    hi_pick = PickPair::UU;
  } else if (pf == Pat::P && pg == Pat::N) {
    lo_pick = PickPair::UL;
    hi_pick = PickPair::LU;
  } else if (pf == Pat::N && pg == Pat::P) {
    lo_pick = PickPair::LU;
    hi_pick = PickPair::UL;
  } else if (pf == Pat::N && pg == Pat::N) {
    lo_pick = PickPair::UU;
    hi_pick = PickPair::LL;
  } else if (pf == Pat::M && pg == Pat::P) {
    lo_pick = PickPair::LU;
    hi_pick = PickPair::UU;
  } else if (pf == Pat::M && pg == Pat::N) {
    lo_pick = PickPair::UL;
    hi_pick = PickPair::LL;
  } else if (pf == Pat::P && pg == Pat::M) {
    lo_pick = PickPair::UL;
    hi_pick = PickPair::UU;
  } else {  // N, M
    lo_pick = PickPair::LU;
    hi_pick = PickPair::LL;
  }
  return IntervalFn::symbolic(pick_expr(lo_pick, f, g),
                              pick_expr(hi_pick, f, g), f.domain(),
                              std::max(f.order_tol(), g.order_tol()));
}

}  // namespace harmonica
