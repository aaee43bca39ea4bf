#pragma once

// Quasi-random sequences and a derivative-free box-constrained local search.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace nullsatz {

/// Halton sequence with a seeded Cranley-Patterson shift (dimension <= 8).
class HaltonSequence {
 public:
  explicit HaltonSequence(int dim, std::uint64_t seed) : dim_(dim) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int d = 0; d < dim_; ++d) shift_[static_cast<std::size_t>(d)] = seed == 0 ? 0.0 : u(rng);
  }

  /// Coordinate d of point i, in [0, 1).
  double at(std::uint64_t i, int d) const {
    static constexpr std::array<unsigned, 8> primes{2, 3, 5, 7, 11, 13, 17, 19};
    const unsigned base = primes[static_cast<std::size_t>(d)];
    double f = 1.0, r = 0.0;
    for (std::uint64_t n = i + 1; n > 0; n /= base) {
      f /= base;
      r += f * static_cast<double>(n % base);
    }
    double v = r + shift_[static_cast<std::size_t>(d)];
    return v >= 1.0 ? v - 1.0 : v;
  }

  int dim() const noexcept { return dim_; }

 private:
  int dim_;
  std::array<double, 8> shift_{};
};

struct CompassResult {
  std::vector<double> x;
  double value = 0;
  int evaluations = 0;
};

/// Maximizes f over the box [lo, hi] by compass (pattern) search.
inline CompassResult compass_maximize(const std::function<double(const std::vector<double>&)>& f,
                                      std::vector<double> x, const std::vector<double>& lo,
                                      const std::vector<double>& hi, double step,
                                      double min_step = 1e-10, int max_evals = 4000) {
  CompassResult out;
  double best = f(x);
  out.evaluations = 1;
  const std::size_t n = x.size();
  while (step > min_step && out.evaluations < max_evals) {
    bool improved = false;
    for (std::size_t k = 0; k < n && !improved; ++k) {
      for (double dir : {1.0, -1.0}) {
        std::vector<double> y = x;
        const double span = hi[k] - lo[k];
        y[k] = std::clamp(y[k] + dir * step * span, lo[k], hi[k]);
        if (y[k] == x[k]) continue;
        const double v = f(y);
        ++out.evaluations;
        if (v > best) {
          best = v;
          x = std::move(y);
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  out.x = std::move(x);
  out.value = best;
  return out;
}

}  // namespace nullsatz
