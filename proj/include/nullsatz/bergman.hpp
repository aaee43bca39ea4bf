#pragma once

// Bergman-space geometry of the Reinhardt domains
//   Omega_{p,q} = { |z1|^p + |z2|^q < 1 }:
// monomial norms, inner products, the kernel diagonal, least-squares distances
// dist(1, p * P_N), dilation families p(z)/p(rz) and the 2^{d(p)} ratio bound.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "nullsatz/bipoly.hpp"
#include "nullsatz/errors.hpp"
#include "nullsatz/qmc.hpp"

namespace nullsatz {

class DomainSpec {
 public:
  DomainSpec(double p = 2.0, double q = 2.0) : p_(p), q_(q) {  // NOLINT
    if (!(p > 0) || !(q > 0) || !std::isfinite(p) || !std::isfinite(q))
      throw DomainError("domain exponents must satisfy 0 < p, q < infinity");
  }
  static DomainSpec ball() { return {2.0, 2.0}; }

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  bool is_ball() const noexcept { return p_ == 2.0 && q_ == 2.0; }

  /// |z1|^p + |z2|^q; the domain is phi < 1.
  double phi(Complex z1, Complex z2) const {
    return std::pow(std::abs(z1), p_) + std::pow(std::abs(z2), q_);
  }
  double phi(const Point2& z) const { return phi(z.z1, z.z2); }
  bool contains(const Point2& z) const { return phi(z) < 1.0; }

  /// Point with |z1|^p = lambda*rho, |z2|^q = (1-lambda)*rho and the given angles.
  Point2 point(double rho, double lambda, double theta1, double theta2) const {
    const double m1 = std::pow(lambda * rho, 1.0 / p_);
    const double m2 = std::pow((1.0 - lambda) * rho, 1.0 / q_);
    return {std::polar(m1, theta1), std::polar(m2, theta2)};
  }

 private:
  double p_;
  double q_;
};

/// log ||z1^a z2^b||^2 in L^2_a(Omega_{p,q}):
///   (2 pi)^2 / (p q) * Gamma(alpha) Gamma(beta) / Gamma(alpha + beta + 1),
///   alpha = (2a + 2) / p, beta = (2b + 2) / q.
inline double log_monomial_norm(const DomainSpec& d, int a, int b) {
  if (a < 0 || b < 0) throw DomainError("monomial exponents must be nonnegative");
  const double alpha = (2.0 * a + 2.0) / d.p();
  const double beta = (2.0 * b + 2.0) / d.q();
  return 2.0 * std::log(2.0 * std::numbers::pi) - std::log(d.p() * d.q()) + std::lgamma(alpha) +
         std::lgamma(beta) - std::lgamma(alpha + beta + 1.0);
}

inline double monomial_norm(const DomainSpec& d, int a, int b) {
  return std::exp(log_monomial_norm(d, a, b));
}

/// Squared monomial norms for all total degrees <= max_degree.
class MonomialNormTable {
 public:
  MonomialNormTable(const DomainSpec& domain, int max_degree)
      : domain_(domain), max_degree_(max_degree) {
    if (max_degree < 0) throw DomainError("negative table degree");
    values_.reserve(static_cast<std::size_t>((max_degree + 1) * (max_degree + 2) / 2));
    for (int n = 0; n <= max_degree; ++n)
      for (int a = n; a >= 0; --a) values_.push_back(monomial_norm(domain, a, n - a));
  }

  const DomainSpec& domain() const noexcept { return domain_; }
  int max_degree() const noexcept { return max_degree_; }
  bool covers(int a, int b) const { return a >= 0 && b >= 0 && a + b <= max_degree_; }

  double at(int a, int b) const {
    if (!covers(a, b)) throw MissingNormError(a, b);
    const int n = a + b;
    return values_[static_cast<std::size_t>(n * (n + 1) / 2 + (n - a))];
  }

 private:
  DomainSpec domain_;
  int max_degree_;
  std::vector<double> values_;
};

/// <f, g> = sum over shared exponents of f_e conj(g_e) nu_e.
inline Complex inner(const BiPoly& f, const BiPoly& g, const MonomialNormTable& table) {
  Complex acc{};
  for (const auto& [e, c] : f.terms()) {
    if (!table.covers(e.a, e.b)) throw MissingNormError(e.a, e.b);
    GaussRational other = g.coeff(e.a, e.b);
    if (other.is_zero()) continue;
    acc += c.to_complex() * std::conj(other.to_complex()) * table.at(e.a, e.b);
  }
  for (const auto& [e, c] : g.terms())
    if (!table.covers(e.a, e.b)) throw MissingNormError(e.a, e.b);
  return acc;
}

inline double norm(const BiPoly& f, const MonomialNormTable& table) {
  return std::sqrt(std::max(inner(f, f, table).real(), 0.0));
}

struct KernelDiagonal {
  double value = 0;
  int shells = 0;              // total-degree shells summed
  double last_shell = 0;       // contribution of the final shell
};

/// K(w, w) = sum |w1|^{2a} |w2|^{2b} / nu_ab, summed by total-degree shells until a
/// shell contributes less than tol times the partial sum.
inline KernelDiagonal kernel_diag(const DomainSpec& d, const Point2& w, double tol = 1e-14,
                                  int max_shells = 100000) {
  if (!(d.phi(w) < 1.0)) throw DomainError("kernel diagonal requested outside the domain");
  const double l1 = std::abs(w.z1) > 0 ? 2.0 * std::log(std::abs(w.z1)) : -INFINITY;
  const double l2 = std::abs(w.z2) > 0 ? 2.0 * std::log(std::abs(w.z2)) : -INFINITY;
  KernelDiagonal k;
  for (int n = 0; n < max_shells; ++n) {
    double shell = 0;
    for (int a = 0; a <= n; ++a) {
      const int b = n - a;
      const double la = a == 0 ? 0.0 : a * l1;
      const double lb = b == 0 ? 0.0 : b * l2;
      if (!std::isfinite(la) || !std::isfinite(lb)) continue;
      shell += std::exp(la + lb - log_monomial_norm(d, a, b));
    }
    k.value += shell;
    k.shells = n + 1;
    k.last_shell = shell;
    if (n > 0 && shell < tol * k.value) return k;
  }
  throw DomainError("kernel series did not reach the truncation tolerance");
}

struct ProjectionResult {
  double distance = 0;
  bool rank_deficient = false;
  int rank = 0;
  int unknowns = 0;
};

/// dist(1, p * P_N) in L^2_a, P_N = polynomials of total degree <= N, solved by SVD
/// least squares in the orthonormalized monomial basis.
inline ProjectionResult projection_distance(const BiPoly& p, int N, const MonomialNormTable& table) {
  if (p.is_zero()) throw DegreeError("projection distance for the zero polynomial");
  if (N < 0) throw DomainError("N must be nonnegative");
  const int deg = p.total_degree();
  const int rows_deg = N + deg;
  auto index = [](int a, int b) {
    const int n = a + b;
    return n * (n + 1) / 2 + (n - a);
  };
  const int rows = (rows_deg + 1) * (rows_deg + 2) / 2;
  const int cols = (N + 1) * (N + 2) / 2;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(rows, cols);
  for (int n = 0; n <= N; ++n)
    for (int a = n; a >= 0; --a) {
      const int b = n - a;
      for (const auto& [e, c] : p.terms()) {
        const int ra = a + e.a, rb = b + e.b;
        A(index(ra, rb), index(a, b)) += c.to_complex() * std::sqrt(table.at(ra, rb));
      }
    }
  Eigen::VectorXcd target = Eigen::VectorXcd::Zero(rows);
  target(0) = std::sqrt(table.at(0, 0));

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-12);
  Eigen::VectorXcd x = svd.solve(target);
  ProjectionResult out;
  out.distance = (A * x - target).norm();
  out.rank = static_cast<int>(svd.rank());
  out.unknowns = cols;
  out.rank_deficient = out.rank < cols;
  return out;
}

/// f_r(z) = p(z) / p(r z).
class DilationFamily {
 public:
  DilationFamily(const BiPoly& p, double r) : p_(p), r_(r) {
    if (!(r > 0.5 && r < 1.0)) throw DomainError("dilation parameter must lie in (1/2, 1)");
    scale_ = p_.max_abs();
  }
  double r() const noexcept { return r_; }

  /// nullopt when the denominator is numerically zero.
  std::optional<Complex> operator()(const Point2& z) const {
    const Complex den = p_.eval(r_ * z.z1, r_ * z.z2);
    if (std::abs(den) < 1e-14 * std::max(scale_, 1.0)) return std::nullopt;
    return p_.eval(z) / den;
  }

 private:
  CBiPoly p_;
  double r_;
  double scale_;
};

namespace detail {

/// Quasi-random points of the closed domain; every fourth point lies on the boundary.
inline std::vector<Point2> closure_samples(const DomainSpec& d, int n, std::uint64_t seed) {
  HaltonSequence h(4, seed);
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double two_pi = 2 * std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::uint64_t>(i);
    const double rho = i % 4 == 0 ? 1.0 : h.at(k, 0);
    pts.push_back(d.point(rho, h.at(k, 1), two_pi * h.at(k, 2), two_pi * h.at(k, 3)));
  }
  return pts;
}

/// Quasi-uniform points of the open domain (rejection from the unit polydisk).
inline std::vector<Point2> interior_samples(const DomainSpec& d, int n, std::uint64_t seed) {
  HaltonSequence h(4, seed);
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double two_pi = 2 * std::numbers::pi;
  for (std::uint64_t k = 0; static_cast<int>(pts.size()) < n; ++k) {
    if (k > static_cast<std::uint64_t>(n) * 10000ULL)
      throw DomainError("domain too thin for rejection sampling");
    Point2 z{std::polar(std::sqrt(h.at(k, 0)), two_pi * h.at(k, 2)),
             std::polar(std::sqrt(h.at(k, 1)), two_pi * h.at(k, 3))};
    if (d.contains(z)) pts.push_back(z);
  }
  return pts;
}

struct RatioSearch {
  double sup = 0;
  Point2 argmax{};
  double arg_r = 0;
  int flagged = 0;
  std::optional<Point2> first_flagged;
};

/// sup of |num(z)| / |den(z, r)| over closure samples and r_grid, followed by a compass
/// refinement of the best candidates in (rho, lambda, theta1, theta2).
template <class Num, class Den>
RatioSearch ratio_search(const DomainSpec& d, const std::vector<double>& r_grid, int samples,
                         std::uint64_t seed, double den_floor, Num num, Den den) {
  RatioSearch out;
  HaltonSequence h(4, seed);
  const double two_pi = 2 * std::numbers::pi;
  struct Candidate {
    double value;
    std::vector<double> x;
    double r;
  };
  std::vector<Candidate> best;
  const std::size_t keep = 8;
  for (int i = 0; i < samples; ++i) {
    const auto k = static_cast<std::uint64_t>(i);
    std::vector<double> x{i % 4 == 0 ? 1.0 : h.at(k, 0), h.at(k, 1), two_pi * h.at(k, 2),
                          two_pi * h.at(k, 3)};
    const Point2 z = d.point(x[0], x[1], x[2], x[3]);
    const double top = std::abs(num(z));
    for (double r : r_grid) {
      const double bottom = std::abs(den(z, r));
      if (bottom < den_floor) {
        if (!out.first_flagged) out.first_flagged = z;
        ++out.flagged;
        continue;
      }
      const double v = top / bottom;
      if (v > out.sup) {
        out.sup = v;
        out.argmax = z;
        out.arg_r = r;
      }
      if (best.size() < keep || v > best.back().value) {
        best.push_back({v, x, r});
        std::sort(best.begin(), best.end(),
                  [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
        if (best.size() > keep) best.pop_back();
      }
    }
  }
  if (out.flagged > 0) return out;
  const std::vector<double> lo{0, 0, -two_pi, -two_pi}, hi{1, 1, 2 * two_pi, 2 * two_pi};
  for (const auto& c : best) {
    auto objective = [&](const std::vector<double>& x) {
      const Point2 z = d.point(x[0], x[1], x[2], x[3]);
      const double bottom = std::abs(den(z, c.r));
      if (bottom < den_floor) return std::numeric_limits<double>::infinity();
      return std::abs(num(z)) / bottom;
    };
    CompassResult res = compass_maximize(objective, c.x, lo, hi, 0.02);
    if (res.value > out.sup) {
      out.sup = res.value;
      out.argmax = d.point(res.x[0], res.x[1], res.x[2], res.x[3]);
      out.arg_r = c.r;
    }
  }
  return out;
}

}  // namespace detail

struct RatioBoundReport {
  BiPoly polynomial;
  DomainSpec domain;
  std::vector<double> r_grid;
  int samples = 0;
  std::uint64_t seed = 0;
  double sup = 0;
  Point2 argmax{};
  double arg_r = 0;
  int degree_sum = 0;  // d(p)
  double bound = 0;    // 2^{d(p)}
  int flagged = 0;     // samples whose denominator vanished numerically
  std::optional<Point2> first_flagged;
  bool pass = false;
};

inline void validate_r_grid(const std::vector<double>& r_grid, bool closed_left) {
  if (r_grid.empty()) throw DomainError("empty r grid");
  for (double r : r_grid)
    if (!(closed_left ? r >= 0.5 : r > 0.5) || !(r < 1.0))
      throw DomainError("r grid values must lie in " + std::string(closed_left ? "[" : "(") +
                        "1/2, 1)");
}

/// Sampled sup over the closure of Omega and r_grid of |p(z) / p(rz)|, checked
/// against 2^{d(p)}. r = 1/2 is admitted since the bound extends to it by continuity.
inline RatioBoundReport ratio_sup(const BiPoly& p, const DomainSpec& domain,
                                  const std::vector<double>& r_grid, int samples,
                                  std::uint64_t seed) {
  validate_r_grid(r_grid, true);
  RatioBoundReport rep;
  rep.polynomial = p;
  rep.domain = domain;
  rep.r_grid = r_grid;
  rep.samples = samples;
  rep.seed = seed;
  rep.degree_sum = total_d(p);
  rep.bound = std::ldexp(1.0, rep.degree_sum);
  const CBiPoly f(p);
  const double floor = 1e-14 * std::max(1.0, f.max_abs());
  auto res = detail::ratio_search(
      domain, r_grid, samples, seed, floor, [&](const Point2& z) { return f.eval(z); },
      [&](const Point2& z, double r) { return f.eval(r * z.z1, r * z.z2); });
  rep.sup = res.sup;
  rep.argmax = res.argmax;
  rep.arg_r = res.arg_r;
  rep.flagged = res.flagged;
  rep.first_flagged = res.first_flagged;
  rep.pass = res.flagged == 0 && rep.sup <= rep.bound + 1e-9;
  return rep;
}

struct DilationNorm {
  double r = 0;
  double l2 = 0;    // ||1 - f_r|| in L^2_a
  double sup = 0;   // max |1 - f_r| over the samples
  int flagged = 0;  // samples where p(rz) vanished numerically
};

/// ||1 - f_r|| by quasi-random integration over Omega, normalized by the exact volume.
inline DilationNorm dilation_norm(const BiPoly& p, const DomainSpec& domain, double r, int samples,
                                  std::uint64_t seed) {
  DilationFamily fam(p, r);
  DilationNorm out{r};
  const double volume = monomial_norm(domain, 0, 0);
  double acc = 0;
  int used = 0;
  for (const auto& z : detail::interior_samples(domain, samples, seed)) {
    auto v = fam(z);
    if (!v) {
      ++out.flagged;
      continue;
    }
    const double e = std::abs(1.0 - *v);
    acc += e * e;
    out.sup = std::max(out.sup, e);
    ++used;
  }
  out.l2 = used > 0 ? std::sqrt(volume * acc / used) : std::numeric_limits<double>::infinity();
  return out;
}

enum class DensityAssessment { Dense, NotDense, Inconclusive };

inline const char* to_string(DensityAssessment a) {
  switch (a) {
    case DensityAssessment::Dense:
      return "DENSE";
    case DensityAssessment::NotDense:
      return "NOT_DENSE";
    case DensityAssessment::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

struct DensityOptions {
  int n_max = 20;
  std::vector<double> r_grid{0.51, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
  int samples = 100000;
  std::uint64_t seed = 1;
  double lower_bound_tol = 1e-9;
  /// DENSE needs ||1 - f_r|| at the largest r (or d_{N_max}) below this fraction of ||1||.
  double dense_fraction = 0.05;
};

struct DensityCertificate {
  BiPoly polynomial;
  DomainSpec domain;
  std::vector<std::pair<int, double>> profile;  // (N, d_N)
  bool profile_rank_deficient = false;
  std::vector<DilationNorm> dilation;
  std::optional<Point2> zero;
  std::optional<double> kernel_lower_bound;  // K(w, w)^{-1/2}
  bool profile_nonincreasing = true;
  DensityAssessment assessment = DensityAssessment::Inconclusive;
  DensityOptions options;
};

/// Evidence for density of p * L^2_a(Omega): the distance profile d_N, dilation-family
/// norms and, when a zero w of p inside Omega is supplied, the lower bound K(w,w)^{-1/2}.
inline DensityCertificate density_certificate(const BiPoly& p, const DomainSpec& domain,
                                              const DensityOptions& opt = {},
                                              std::optional<Point2> zero = std::nullopt) {
  if (p.is_zero()) throw DegreeError("density certificate for the zero polynomial");
  validate_r_grid(opt.r_grid, false);
  DensityCertificate cert;
  cert.polynomial = p;
  cert.domain = domain;
  cert.options = opt;
  MonomialNormTable table(domain, opt.n_max + p.total_degree());
  double prev = std::numeric_limits<double>::infinity();
  for (int N = 0; N <= opt.n_max; ++N) {
    ProjectionResult pr = projection_distance(p, N, table);
    cert.profile.emplace_back(N, pr.distance);
    cert.profile_rank_deficient = cert.profile_rank_deficient || pr.rank_deficient;
    if (pr.distance > prev * (1 + 1e-12) + 1e-15) cert.profile_nonincreasing = false;
    prev = std::min(prev, pr.distance);
  }
  const double unit_norm = std::sqrt(table.at(0, 0));
  if (zero) {
    if (!domain.contains(*zero)) throw DomainError("supplied zero lies outside the domain");
    const double residual = std::abs(CBiPoly(p).eval(*zero));
    if (residual > 1e-8 * std::max(1.0, CBiPoly(p).max_abs()))
      throw DomainError("supplied point is not a zero of the polynomial");
    cert.zero = zero;
    cert.kernel_lower_bound = 1.0 / std::sqrt(kernel_diag(domain, *zero).value);
  }

  const bool constant = p.is_constant();
  if (!constant)
    for (double r : opt.r_grid) cert.dilation.push_back(dilation_norm(p, domain, r, opt.samples, opt.seed));

  const double last_d = cert.profile.back().second;
  if (cert.kernel_lower_bound) {
    bool bounded = true;
    for (const auto& [N, dn] : cert.profile)
      if (dn < *cert.kernel_lower_bound - opt.lower_bound_tol) bounded = false;
    cert.assessment = bounded ? DensityAssessment::NotDense : DensityAssessment::Inconclusive;
    return cert;
  }
  bool dilation_ok = !cert.dilation.empty();
  for (std::size_t k = 0; k < cert.dilation.size(); ++k) {
    if (cert.dilation[k].flagged > 0) dilation_ok = false;
    if (k > 0 && cert.dilation[k].l2 > cert.dilation[k - 1].l2) dilation_ok = false;
  }
  const double threshold = opt.dense_fraction * unit_norm;
  if (last_d <= 1e-12 * unit_norm ||
      (cert.profile_nonincreasing && dilation_ok &&
       std::min(last_d, cert.dilation.back().l2) <= threshold))
    cert.assessment = DensityAssessment::Dense;
  return cert;
}

}  // namespace nullsatz
