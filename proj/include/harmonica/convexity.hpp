#pragma once

#include <cstdint>
#include <optional>

#include "harmonica/expr.hpp"
#include "harmonica/interval.hpp"
#include "harmonica/setfn.hpp"

namespace harmonica {

// Sampling plan shared by all certification checks. The deterministic part
// is a full tensor grid: `samples` points per spatial argument crossed with
// `grid_t` points on [0, 1] (endpoints included). `trials` additional
// pseudo-random samples are drawn from `seed`; trials == 0 keeps the run
// fully grid-based.
struct HarmonicParams {
  double m = 1.0;
  double alpha = 1.0;
  double tol = 1e-9;
  int samples = 17;
  int grid_t = 9;
  int trials = 0;
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument unless m in (0,1], alpha in [0,1], tol >= 0,
// samples >= 2, grid_t >= 3, trials >= 0.
void validate(const HarmonicParams& params);

enum class Verdict { certified_on_samples, falsified };

// Stable report strings: "CERTIFIED_ON_SAMPLES" / "FALSIFIED".
const char* to_string(Verdict v);

struct SampleTriple {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

// Outcome of a sampled certification run. worst_margin is the minimum
// signed slack seen over all evaluated samples (inclusion depth for
// set-valued checks, rhs - lhs for scalar ones); the verdict is falsified
// exactly when worst_margin < -tol, and counterexample is present exactly
// in that case. Ties on the margin resolve to the lexicographically
// smallest (x, y, t). Samples whose combined point leaves the domain are
// skipped, not failed; coverage_warning is set when more than half of all
// attempted samples were skipped.
struct ConvexityReport {
  Verdict verdict = Verdict::certified_on_samples;
  double worst_margin = 0.0;
  std::optional<SampleTriple> counterexample;
  long long samples_checked = 0;
  long long samples_skipped = 0;
  bool coverage_warning = false;
};

// Weighted harmonic interpolation m*x*y / (t*m*x + (1-t)*y) for x, y > 0,
// t in [0, 1], m in (0, 1]. Arranged so that t = 0 gives exactly m*x,
// t = 1 gives exactly y, and x = y with m = 1 gives exactly x for every t.
// Throws std::invalid_argument when the denominator is not positive.
double harmonic_combination(double x, double y, double t, double m);

// Does t*b + m*(1-t)*a stay inside S for a, b in S, t in [0, 1]?
ConvexityReport is_m_convex_set(const Interval& s, double m,
                                const HarmonicParams& params);

// Does t*s stay inside S for s an endpoint of S and t in (0, 1]?
// t = 0 is excluded; params.m is ignored.
ConvexityReport is_starshaped(const Interval& s,
                              const HarmonicParams& params);

// Scalar check: f(harmonic_combination(x,y,t,m)) <= t^alpha * f(y)
//               + m * (1-t)^alpha * f(x). Margin is rhs - lhs.
ConvexityReport check_scalar(const Expr& f, const Interval& domain,
                             const HarmonicParams& params);

// Interval-valued check: t*F(y) + m*(1-t)*F(x) must be contained in
// F(harmonic_combination(x,y,t,m)). Margin is the inclusion depth.
ConvexityReport check_svf(const IntervalFn& f, const HarmonicParams& params);

// Same inclusion, componentwise for a pair of interval functions; the
// margin at a sample is the worse of the two component margins.
ConvexityReport check_svf_box(const BoxFn& f, const HarmonicParams& params);

// Hull of F over all sample points of A. Requires A inside F's domain.
Interval image_hull(const IntervalFn& f, const Interval& a, int samples);

// Set-of-sets check: with FA, FB the sampled image hulls of F over A and B,
// t*FB + m*(1-t)*FA must be contained in the image hull of F over the
// harmonic combination set of A and B. Counterexamples report the sample
// arguments behind the failing side of the inclusion.
ConvexityReport check_svf_setwise(const IntervalFn& f, const Interval& a,
                                  const Interval& b,
                                  const HarmonicParams& params);

}  // namespace harmonica
