#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "harmonica/interval.hpp"

namespace harmonica {

// Deterministic uniform sampling. Doubles are derived from raw engine words
// rather than std::uniform_real_distribution so that a given seed yields the
// same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  double uniform(const Interval& iv) { return uniform(iv.lo, iv.hi); }

  std::uint64_t raw() { return eng_(); }

  // Index in [0, n). Modulo bias is irrelevant for the small n used here.
  int index(int n) {
    return static_cast<int>(eng_() % static_cast<std::uint64_t>(n));
  }

 private:
  std::mt19937_64 eng_;
};

// n equally spaced points with both endpoints hit exactly. n == 1 gives
// {lo}; lo == hi collapses every point onto the common value.
inline std::vector<double> sample_grid(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("sample_grid: n must be >= 1");
  std::vector<double> xs(static_cast<std::size_t>(n));
  if (n == 1) {
    xs[0] = lo;
    return xs;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + step * i;
  xs[static_cast<std::size_t>(n - 1)] = hi;
  return xs;
}

inline std::vector<double> sample_grid(const Interval& iv, int n) {
  return sample_grid(iv.lo, iv.hi, n);
}

}  // namespace harmonica
