#include "harmonica/convexity.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "harmonica/errors.hpp"
#include "harmonica/sampling.hpp"

namespace harmonica {

namespace {

std::string num_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v))
    throw DomainError(std::string(what) + " produced a non-finite value");
  return v;
}

bool lex_less(const SampleTriple& a, const SampleTriple& b) {
  return std::tie(a.x, a.y, a.t) < std::tie(b.x, b.y, b.t);
}

// Tracks the minimum margin; ties resolve to the lexicographically
// smallest sample so reruns and reorderings report the same witness.
struct Tracker {
  bool any = false;
  double worst = std::numeric_limits<double>::infinity();
  SampleTriple at{};

  void consider(double margin, const SampleTriple& s) {
    if (!any || margin < worst || (margin == worst && lex_less(s, at))) {
      any = true;
      worst = margin;
      at = s;
    }
  }
};

ConvexityReport finish(const Tracker& tr, long long checked, long long skipped,
                       double tol) {
  ConvexityReport rep;
  rep.samples_checked = checked;
  rep.samples_skipped = skipped;
  rep.coverage_warning = skipped * 2 > checked + skipped;
  rep.worst_margin =
      tr.any ? tr.worst : std::numeric_limits<double>::infinity();
  if (tr.any && tr.worst < -tol) {
    rep.verdict = Verdict::falsified;
    rep.counterexample = tr.at;
  } else {
    rep.verdict = Verdict::certified_on_samples;
  }
  return rep;
}

// Shared driver: full (x, y, t) tensor grid over dom x dom x [0,1], then
// `trials` random triples. margin_of returns the signed margin, or nothing
// when the sample must be skipped.
template <typename MarginFn>
ConvexityReport drive_xyt(const Interval& dom, const HarmonicParams& p,
                          MarginFn&& margin_of) {
  Tracker tr;
  long long checked = 0;
  long long skipped = 0;
  const auto visit = [&](double x, double y, double t) {
    const std::optional<double> mg = margin_of(x, y, t);
    if (!mg) {
      ++skipped;
      return;
    }
    ++checked;
    tr.consider(*mg, {x, y, t});
  };
  const auto xs = sample_grid(dom, p.samples);
  const auto ts = sample_grid(0.0, 1.0, p.grid_t);
  for (const double x : xs)
    for (const double y : xs)
      for (const double t : ts) visit(x, y, t);
  Rng rng(p.seed);
  for (int i = 0; i < p.trials; ++i) {
    const double x = rng.uniform(dom);
    const double y = rng.uniform(dom);
    const double t = rng.unit();
    visit(x, y, t);
  }
  return finish(tr, checked, skipped, p.tol);
}

void require_m(double m, const char* who) {
  if (!(m > 0.0 && m <= 1.0))
    throw std::invalid_argument(std::string(who) + ": m must be in (0, 1]");
}

}  // namespace

void validate(const HarmonicParams& params) {
  require_m(params.m, "HarmonicParams");
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0))
    throw std::invalid_argument("HarmonicParams: alpha must be in [0, 1]");
  if (!(params.tol >= 0.0))
    throw std::invalid_argument("HarmonicParams: tol must be >= 0");
  if (params.samples < 2)
    throw std::invalid_argument("HarmonicParams: samples must be >= 2");
  if (params.grid_t < 3)
    throw std::invalid_argument("HarmonicParams: grid_t must be >= 3");
  if (params.trials < 0)
    throw std::invalid_argument("HarmonicParams: trials must be >= 0");
}

const char* to_string(Verdict v) {
  return v == Verdict::certified_on_samples ? "CERTIFIED_ON_SAMPLES"
                                            : "FALSIFIED";
}

double harmonic_combination(double x, double y, double t, double m) {
  if (!(x > 0.0) || !(y > 0.0))
    throw std::invalid_argument("harmonic_combination: x and y must be > 0");
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("harmonic_combination: t must be in [0, 1]");
  require_m(m, "harmonic_combination");
  const double u = m * x;
  // Exact at the endpoints; the interior form u * (y / d) also returns x
  // exactly when x == y and m == 1 (then u == x, d == x, y/d == 1).
  if (t == 0.0) return u;
  if (t == 1.0) return y;
  const double d = y + t * (u - y);
  if (!(d > 0.0))
    throw std::invalid_argument(
        "harmonic_combination: denominator collapsed to a non-positive value");
  return u * (y / d);
}

ConvexityReport is_m_convex_set(const Interval& s, double m,
                                const HarmonicParams& params) {
  validate(params);
  require_m(m, "is_m_convex_set");
  Tracker tr;
  long long checked = 0;
  const auto visit = [&](double a, double b, double t) {
    const double w = m * (1.0 - t);
    const double p = t * b + w * a;
    const double margin = std::min(p - s.lo, s.hi - p);
    ++checked;
    tr.consider(margin, {a, b, t});
  };
  const auto xs = sample_grid(s, params.samples);
  const auto ts = sample_grid(0.0, 1.0, params.grid_t);
  for (const double a : xs)
    for (const double b : xs)
      for (const double t : ts) visit(a, b, t);
  Rng rng(params.seed);
  for (int i = 0; i < params.trials; ++i) {
    const double a = rng.uniform(s);
    const double b = rng.uniform(s);
    const double t = rng.unit();
    visit(a, b, t);
  }
  return finish(tr, checked, 0, params.tol);
}

ConvexityReport is_starshaped(const Interval& s,
                              const HarmonicParams& params) {
  validate(params);
  Tracker tr;
  long long checked = 0;
  const auto visit = [&](double v, double t) {
    const double tv = t * v;
    const double margin = std::min(tv - s.lo, s.hi - tv);
    ++checked;
    tr.consider(margin, {v, v, t});
  };
  // t*S is an interval for t > 0, so containment of both endpoint images
  // is equivalent to t*S being inside S; t = 0 is excluded by definition.
  const auto ts = sample_grid(0.0, 1.0, params.grid_t);
  for (const double v : {s.lo, s.hi})
    for (const double t : ts) {
      if (t == 0.0) continue;
      visit(v, t);
    }
  Rng rng(params.seed);
  for (int i = 0; i < params.trials; ++i) {
    const double v = rng.uniform(s);
    const double t = 1.0 - rng.unit();
    visit(v, t);
  }
  return finish(tr, checked, 0, params.tol);
}

ConvexityReport check_scalar(const Expr& f, const Interval& domain,
                             const HarmonicParams& params) {
  validate(params);
  if (!(domain.lo > 0.0))
    throw std::invalid_argument("check_scalar: domain must satisfy lo > 0");
  if (f.empty())
    throw std::invalid_argument("check_scalar: empty expression");
  const double slack = domain_slack(domain);
  const bool unit_alpha = params.alpha == 1.0;
  const auto powa = [&](double t) {
    return unit_alpha ? t : std::pow(t, params.alpha);
  };
  return drive_xyt(
      domain, params,
      [&](double x, double y, double t) -> std::optional<double> {
        const double h = harmonic_combination(x, y, t, params.m);
        if (h < domain.lo - slack || h > domain.hi + slack)
          return std::nullopt;
        const double hc = std::min(std::max(h, domain.lo), domain.hi);
        const double fh = finite_or_throw(f.eval(hc), "f(combination)");
        const double fx = finite_or_throw(f.eval(x), "f(x)");
        const double fy = finite_or_throw(f.eval(y), "f(y)");
        const double w = params.m * powa(1.0 - t);
        const double rhs = powa(t) * fy + w * fx;
        return rhs - fh;
      });
}

ConvexityReport check_svf(const IntervalFn& f, const HarmonicParams& params) {
  validate(params);
  return drive_xyt(
      f.domain(), params,
      [&](double x, double y, double t) -> std::optional<double> {
        const double h = harmonic_combination(x, y, t, params.m);
        if (!f.in_domain(h)) return std::nullopt;
        const Interval r = f(h);
        const double w = params.m * (1.0 - t);
        const Interval lhs = add(scale(t, f(y)), scale(w, f(x)));
        return subset_within(lhs, r, 0.0).margin;
      });
}

ConvexityReport check_svf_box(const BoxFn& f, const HarmonicParams& params) {
  validate(params);
  return drive_xyt(
      f.domain(), params,
      [&](double x, double y, double t) -> std::optional<double> {
        const double h = harmonic_combination(x, y, t, params.m);
        if (!f.in_domain(h)) return std::nullopt;
        const Box2 r = f(h);
        const double w = params.m * (1.0 - t);
        const Box2 lhs = add(scale(t, f(y)), scale(w, f(x)));
        return subset_within(lhs, r, 0.0).margin;
      });
}

namespace {

struct HullTrack {
  Interval iv;
  double arg_lo;
  double arg_hi;
};

HullTrack image_hull_tracked(const IntervalFn& f, const Interval& a,
                             int samples, const char* label) {
  if (!(f.in_domain(a.lo) && f.in_domain(a.hi))) {
    const double off = f.in_domain(a.lo) ? a.hi : a.lo;
    throw OutOfDomain(off, label,
                      std::string("argument set ") + label +
                          " leaves the function domain at " + num_str(off));
  }
  const auto xs = sample_grid(f.clamp_to_domain(a.lo),
                              f.clamp_to_domain(a.hi), samples);
  HullTrack h{f(xs[0]), xs[0], xs[0]};
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const Interval v = f(xs[i]);
    if (v.lo < h.iv.lo) h.arg_lo = xs[i];
    if (v.hi > h.iv.hi) h.arg_hi = xs[i];
    h.iv = hull(h.iv, v);
  }
  return h;
}

}  // namespace

Interval image_hull(const IntervalFn& f, const Interval& a, int samples) {
  if (samples < 2)
    throw std::invalid_argument("image_hull: samples must be >= 2");
  return image_hull_tracked(f, a, samples, "A").iv;
}

ConvexityReport check_svf_setwise(const IntervalFn& f, const Interval& a,
                                  const Interval& b,
                                  const HarmonicParams& params) {
  validate(params);
  const HullTrack fa = image_hull_tracked(f, a, params.samples, "A");
  const HullTrack fb = image_hull_tracked(f, b, params.samples, "B");
  Tracker tr;
  long long checked = 0;
  long long skipped = 0;
  const auto visit = [&](double t) {
    // The combination is increasing in both arguments, so its image over
    // A x B spans between the (lo, lo) and (hi, hi) corners.
    const double clo = harmonic_combination(a.lo, b.lo, t, params.m);
    const double chi = harmonic_combination(a.hi, b.hi, t, params.m);
    const Interval img(std::min(clo, chi), std::max(clo, chi));
    if (!(f.in_domain(img.lo) && f.in_domain(img.hi))) {
      ++skipped;
      return;
    }
    const Interval r =
        image_hull(f,
                   Interval(f.clamp_to_domain(img.lo),
                            f.clamp_to_domain(img.hi)),
                   params.samples);
    const double w = params.m * (1.0 - t);
    const Interval lhs = add(scale(t, fb.iv), scale(w, fa.iv));
    const Inclusion inc = subset_within(lhs, r, 0.0);
    const SampleTriple witness =
        (lhs.lo - r.lo) <= (r.hi - lhs.hi)
            ? SampleTriple{fa.arg_lo, fb.arg_lo, t}
            : SampleTriple{fa.arg_hi, fb.arg_hi, t};
    ++checked;
    tr.consider(inc.margin, witness);
  };
  for (const double t : sample_grid(0.0, 1.0, params.grid_t)) visit(t);
  Rng rng(params.seed);
  for (int i = 0; i < params.trials; ++i) visit(rng.unit());
  return finish(tr, checked, skipped, params.tol);
}

}  // namespace harmonica
