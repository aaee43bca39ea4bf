#pragma once

// Rotations of the unit ball that move a fiber circle {(a e^{ia}, b e^{ia})} of the
// Hopf map S^3 -> S^2 off V(f), and the one-variable dilation ratio on the ball.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "nullsatz/bergman.hpp"
#include "nullsatz/bipoly.hpp"
#include "nullsatz/errors.hpp"
#include "nullsatz/parallel.hpp"
#include "nullsatz/qmc.hpp"

namespace nullsatz {

struct HopfOptions {
  int trials = 512;
  int alpha_grid = 4096;
  double tol_circle = 1e-6;
  bool refine = true;  // compass search over S^2 from the best trial
  unsigned threads = 1;
};

struct CircleMinimum {
  double value = 0;
  double alpha = 0;
};

/// min over alpha of |f(a e^{i alpha}, b e^{i alpha})|: grid minimum, then a
/// golden-section pass on the bracketing grid cells.
inline CircleMinimum circle_min(const CBiPoly& f, Complex a, Complex b, int grid = 4096) {
  const double step = 2 * std::numbers::pi / grid;
  auto g = [&](double alpha) {
    const Complex e = std::polar(1.0, alpha);
    return std::abs(f.eval(a * e, b * e));
  };
  CircleMinimum out{std::numeric_limits<double>::infinity(), 0};
  for (int k = 0; k < grid; ++k) {
    const double v = g(k * step);
    if (v < out.value) out = {v, k * step};
  }
  double lo = out.alpha - step, hi = out.alpha + step;
  const double ratio = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  double f1 = g(x1), f2 = g(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = g(x2);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double v = g(mid);
  if (v < out.value) out = {v, std::remainder(mid, 2 * std::numbers::pi)};
  if (out.alpha < 0) out.alpha += 2 * std::numbers::pi;
  return out;
}

/// Fiber representative over the point of S^2 with height z and longitude theta:
/// |a|^2 = (1 + z)/2, arg a = theta, b = sqrt((1 - z)/2) >= 0.
inline std::pair<Complex, Complex> hopf_lift(double z, double theta) {
  z = std::clamp(z, -1.0, 1.0);
  Complex a = std::polar(std::sqrt((1 + z) / 2), theta);
  Complex b(std::sqrt((1 - z) / 2), 0.0);
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

struct HopfRotation {
  Complex a;
  Complex b;
  std::array<std::array<Complex, 2>, 2> matrix{};  // [[conj b, a], [-conj a, b]]
  double min_modulus = 0;
  double argmin_alpha = 0;
  int trials = 0;
  std::uint64_t seed = 0;

  static HopfRotation from_pair(Complex a, Complex b) {
    HopfRotation r;
    r.a = a;
    r.b = b;
    r.matrix = {{{std::conj(b), a}, {-std::conj(a), b}}};
    return r;
  }

  /// max entry of |rho^* rho - I| together with |det rho - 1|.
  double unitarity_defect() const {
    double d = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Complex s{};
        for (int k = 0; k < 2; ++k) s += std::conj(matrix[k][i]) * matrix[k][j];
        d = std::max(d, std::abs(s - Complex(i == j ? 1.0 : 0.0)));
      }
    const Complex det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
    return std::max(d, std::abs(det - 1.0));
  }

  Point2 apply(const Point2& w) const {
    return {matrix[0][0] * w.z1 + matrix[0][1] * w.z2, matrix[1][0] * w.z1 + matrix[1][1] * w.z2};
  }

  /// f o rho as a polynomial.
  CBiPoly compose(const CBiPoly& f) const {
    return f.compose_linear(matrix[0][0], matrix[0][1], matrix[1][0], matrix[1][1]);
  }
};

/// Quasi-random search over the base S^2 for a fiber circle on which f stays away
/// from zero; the best trial is refined by compass search.
inline HopfRotation find_rotation(const BiPoly& f, std::uint64_t seed, const HopfOptions& opt = {}) {
  if (f.is_zero()) throw DegreeError("rotation search for the zero polynomial");
  const CBiPoly F(f);
  HaltonSequence h(2, seed);
  const double two_pi = 2 * std::numbers::pi;
  auto score = [&](double z, double theta) {
    auto [a, b] = hopf_lift(z, theta);
    return circle_min(F, a, b, opt.alpha_grid).value;
  };
  auto values = parallel_map<double>(static_cast<std::size_t>(opt.trials), opt.threads, [&](std::size_t i) {
    return score(2 * h.at(i, 0) - 1, two_pi * h.at(i, 1));
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  std::vector<double> x{2 * h.at(best, 0) - 1, two_pi * h.at(best, 1)};
  if (opt.refine) {
    CompassResult cr = compass_maximize(
        [&](const std::vector<double>& y) { return score(y[0], y[1]); }, x, {-1.0, -two_pi},
        {1.0, 2 * two_pi}, 0.05, 1e-12, 2000);
    if (cr.value >= values[best]) x = cr.x;
  }
  auto [a, b] = hopf_lift(x[0], x[1]);
  HopfRotation rot = HopfRotation::from_pair(a, b);
  const CircleMinimum cm = circle_min(F, a, b, opt.alpha_grid);
  rot.min_modulus = cm.value;
  rot.argmin_alpha = cm.alpha;
  rot.trials = opt.trials;
  rot.seed = seed;
  if (!(rot.min_modulus > opt.tol_circle))
    throw HopfError("no fiber circle clears the modulus tolerance", a, b, rot.min_modulus);
  return rot;
}

struct BallRatioReport {
  BiPoly polynomial;
  std::vector<double> r_grid;
  int samples = 0;
  std::uint64_t seed = 0;
  double sup = 0;
  Point2 argmax{};
  double arg_r = 0;
  int flagged = 0;
  std::optional<Point2> first_flagged;
  bool finite = false;  // every denominator stayed above the floor
};

/// Sampled sup over the closed ball and r_grid of |f(z1, z2) / f(r z1, z2)|.
inline BallRatioReport ball_ratio_sup(const CBiPoly& F, const std::vector<double>& r_grid, int samples,
                                      std::uint64_t seed) {
  if (F.is_zero()) throw DegreeError("ratio for the zero polynomial");
  validate_r_grid(r_grid, false);
  BallRatioReport rep;
  rep.r_grid = r_grid;
  rep.samples = samples;
  rep.seed = seed;
  const double floor = 1e-14 * std::max(1.0, F.max_abs());
  auto res = detail::ratio_search(
      DomainSpec::ball(), r_grid, samples, seed, floor, [&](const Point2& z) { return F.eval(z); },
      [&](const Point2& z, double r) { return F.eval(r * z.z1, z.z2); });
  rep.sup = res.sup;
  rep.argmax = res.argmax;
  rep.arg_r = res.arg_r;
  rep.flagged = res.flagged;
  rep.first_flagged = res.first_flagged;
  rep.finite = res.flagged == 0;
  return rep;
}

inline BallRatioReport ball_ratio_sup(const BiPoly& f, const std::vector<double>& r_grid, int samples,
                                      std::uint64_t seed) {
  if (f.is_zero()) throw DegreeError("ratio for the zero polynomial");
  BallRatioReport rep = ball_ratio_sup(CBiPoly(f), r_grid, samples, seed);
  rep.polynomial = f;
  return rep;
}

/// ||1 - f(z) / f(r z1, z2)|| in L^2_a of the ball by quasi-random integration.
inline DilationNorm ball_dilation_norm(const CBiPoly& F, double r, int samples, std::uint64_t seed) {
  const auto ball = DomainSpec::ball();
  const double floor = 1e-14 * std::max(1.0, F.max_abs());
  DilationNorm out;
  out.r = r;
  double acc = 0;
  int used = 0;
  for (const auto& z : detail::interior_samples(ball, samples, seed)) {
    const Complex den = F.eval(r * z.z1, z.z2);
    if (std::abs(den) < floor) {
      ++out.flagged;
      continue;
    }
    const double e = std::abs(1.0 - F.eval(z) / den);
    acc += e * e;
    out.sup = std::max(out.sup, e);
    ++used;
  }
  out.l2 = used > 0 ? std::sqrt(monomial_norm(ball, 0, 0) * acc / used)
                    : std::numeric_limits<double>::infinity();
  return out;
}

inline DilationNorm ball_dilation_norm(const BiPoly& f, double r, int samples, std::uint64_t seed) {
  return ball_dilation_norm(CBiPoly(f), r, samples, seed);
}

}  // namespace nullsatz
