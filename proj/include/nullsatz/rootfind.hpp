#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

#include "nullsatz/bipoly.hpp"
#include "nullsatz/errors.hpp"
#include "nullsatz/unipoly.hpp"

namespace nullsatz {

struct RootOptions {
  double tol_res = 1e-10;        // relative residual acceptance
  int max_sweeps = 200;
  double cluster_radius = 1e-7;  // roots closer than this are one multiple root
  double degenerate_lead = 1e-14;
};

struct RootCluster {
  Complex center;
  int multiplicity = 1;
};

/// All roots of a univariate polynomial, sorted by (Re, Im).
struct RootSet {
  std::vector<Complex> roots;
  std::vector<double> residuals;
  std::vector<RootCluster> clusters;
  int degree = 0;
  int sweeps = 0;
};

namespace detail {

inline double coeff_norm_inf(const std::vector<Complex>& c) {
  double m = 0;
  for (const auto& x : c) m = std::max(m, std::abs(x));
  return m;
}

/// Acceptance threshold for |p(z)|: tol * (1 + ||c||_inf) * max(1, |z|)^n.
inline double residual_threshold(const std::vector<Complex>& c, Complex z, double tol) {
  const int n = static_cast<int>(c.size()) - 1;
  return tol * (1.0 + coeff_norm_inf(c)) * std::pow(std::max(1.0, std::abs(z)), n);
}

inline void eval_with_derivative(const std::vector<Complex>& c, Complex z, Complex& p, Complex& dp,
                                 double& magnitude) {
  p = 0;
  dp = 0;
  magnitude = 0;
  const double az = std::abs(z);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
    magnitude = magnitude * az + std::abs(*it);
  }
}

/// Sort key that ignores sub-1e-9 noise in the real part.
inline bool lex_less(const Complex& x, const Complex& y) {
  const double qx = std::round(x.real() * 1e9), qy = std::round(y.real() * 1e9);
  return qx != qy ? qx < qy : x.imag() < y.imag();
}

inline std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double radius) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) < radius) parent[find(i)] = find(j);
  std::vector<RootCluster> out;
  std::vector<std::size_t> rep;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    auto it = std::find(rep.begin(), rep.end(), r);
    if (it == rep.end()) {
      rep.push_back(r);
      out.push_back({roots[i], 1});
    } else {
      auto& c = out[static_cast<std::size_t>(it - rep.begin())];
      c.center = (c.center * static_cast<double>(c.multiplicity) + roots[i]) /
                 static_cast<double>(c.multiplicity + 1);
      ++c.multiplicity;
    }
  }
  return out;
}

}  // namespace detail

/// Aberth-Ehrlich simultaneous iteration. `guess`, when given, must hold
/// exactly `degree` starting points (used for warm starts along paths).
inline RootSet all_roots(const std::vector<Complex>& coeffs, const RootOptions& opt = {},
                         const std::vector<Complex>* guess = nullptr) {
  std::vector<Complex> c(coeffs);
  while (!c.empty() && c.back() == Complex{}) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) throw DegreeError("root finding needs a polynomial of degree >= 1");
  if (std::abs(c.back()) < opt.degenerate_lead * detail::coeff_norm_inf(c))
    throw DegreeError("leading coefficient below the degeneracy threshold");

  RootSet out;
  out.degree = n;
  int zeros = 0;
  while (c[static_cast<std::size_t>(zeros)] == Complex{}) ++zeros;
  std::vector<Complex> reduced(c.begin() + zeros, c.end());
  const int m = n - zeros;

  std::vector<Complex> z;
  if (m == 1) {
    z.push_back(-reduced[0] / reduced[1]);
  } else if (m > 1) {
    if (guess && static_cast<int>(guess->size()) == n) {
      // drop the guesses closest to zero when exact zero roots were factored out
      std::vector<Complex> g(*guess);
      std::sort(g.begin(), g.end(),
                [](const Complex& x, const Complex& y) { return std::abs(x) < std::abs(y); });
      z.assign(g.begin() + zeros, g.end());
    } else {
      const double radius = std::pow(std::abs(reduced[0] / reduced.back()), 1.0 / m);
      const double r = radius > 0 && std::isfinite(radius) ? radius : 1.0;
      for (int k = 0; k < m; ++k)
        z.push_back(std::polar(r, 2 * std::numbers::pi * k / m + 0.4));
    }
    std::vector<bool> done(static_cast<std::size_t>(m), false);
    const double eps = std::numeric_limits<double>::epsilon();
    int sweep = 0;
    for (; sweep < opt.max_sweeps; ++sweep) {
      bool all_done = true;
      for (int i = 0; i < m; ++i) {
        if (done[static_cast<std::size_t>(i)]) continue;
        Complex p, dp;
        double mag;
        detail::eval_with_derivative(reduced, z[static_cast<std::size_t>(i)], p, dp, mag);
        if (std::abs(p) <= 4 * eps * m * mag) {
          done[static_cast<std::size_t>(i)] = true;
          continue;
        }
        Complex ratio = p / dp;
        Complex sum{};
        for (int j = 0; j < m; ++j)
          if (j != i) sum += 1.0 / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
        Complex w = ratio / (1.0 - ratio * sum);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
        z[static_cast<std::size_t>(i)] -= w;
        if (std::abs(w) <= 2 * eps * std::abs(z[static_cast<std::size_t>(i)]))
          done[static_cast<std::size_t>(i)] = true;
        else
          all_done = false;
      }
      if (all_done) break;
    }
    out.sweeps = sweep;
  }
  z.insert(z.begin(), static_cast<std::size_t>(zeros), Complex{});

  std::sort(z.begin(), z.end(), detail::lex_less);
  for (const auto& root : z) {
    const double res = std::abs(UniPoly<Complex>(c).eval(root));
    if (!(res <= detail::residual_threshold(c, root, opt.tol_res)))
      throw RootFindError("root iteration did not reach the residual tolerance", z);
    out.residuals.push_back(res);
  }
  out.roots = std::move(z);
  out.clusters = detail::cluster_roots(out.roots, opt.cluster_radius);
  return out;
}

inline RootSet all_roots(const CPoly& p, const RootOptions& opt = {}) {
  return all_roots(p.coeffs(), opt);
}

/// Smallest pairwise distance in a set of points (infinity for fewer than two).
inline double min_separation(const std::vector<Complex>& pts) {
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) s = std::min(s, std::abs(pts[i] - pts[j]));
  return s;
}

/// Matches each point of `from` to its nearest point of `to`. Returns nullopt unless
/// the matching is a bijection whose largest move is below half the separation.
inline std::optional<std::vector<int>> nearest_matching(const std::vector<Complex>& from,
                                                        const std::vector<Complex>& to) {
  if (from.size() != to.size()) return std::nullopt;
  const double sep = std::min(min_separation(from), min_separation(to));
  std::vector<int> match(from.size(), -1);
  std::vector<bool> used(to.size(), false);
  for (std::size_t i = 0; i < from.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (std::size_t j = 0; j < to.size(); ++j) {
      double d = std::abs(from[i] - to[j]);
      if (d < best) {
        best = d;
        arg = static_cast<int>(j);
      }
    }
    if (arg < 0 || used[static_cast<std::size_t>(arg)] || !(best < 0.5 * sep)) return std::nullopt;
    used[static_cast<std::size_t>(arg)] = true;
    match[i] = arg;
  }
  return match;
}

/// Piecewise path in the z1-plane; each piece is parametrized over [0, 1].
class Path {
 public:
  using Piece = std::function<Complex(double)>;

  static Piece segment(Complex from, Complex to) {
    return [=](double s) { return from + s * (to - from); };
  }
  /// Full counter-clockwise turn around `center` starting at `start`.
  static Piece circle(Complex center, Complex start) {
    const double radius = std::abs(start - center);
    const double angle0 = std::arg(start - center);
    return [=](double s) {
      if (s >= 1.0) return start;
      return center + std::polar(radius, angle0 + 2 * std::numbers::pi * s);
    };
  }

  Path& then(Piece p) {
    pieces_.push_back(std::move(p));
    return *this;
  }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  Complex start() const { return pieces_.front()(0.0); }
  Complex end() const { return pieces_.back()(1.0); }

  /// Same path traversed backwards.
  Path reversed() const {
    Path r;
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
      Piece p = *it;
      r.then([p](double s) { return p(1.0 - s); });
    }
    return r;
  }

 private:
  std::vector<Piece> pieces_;
};

struct TrackOptions {
  double max_step = 1.0 / 64;  // per piece, in the piece parameter
  double min_step = 1e-10;
  std::vector<Complex> branch_points;
  double clearance = 0.0;
  RootOptions roots;
};

/// Fiber roots carried continuously along a path; fibers[k][i] is sheet i at samples[k].
struct TrackedPath {
  std::vector<Complex> samples;
  std::vector<std::vector<Complex>> fibers;
  int refinements = 0;

  /// For a closed path: sheet i ends on the start position of sheet permutation[i].
  std::vector<int> permutation() const {
    auto m = nearest_matching(fibers.back(), fibers.front());
    if (!m) throw TrackingError("end fiber cannot be matched to the start fiber");
    return *m;
  }
};

/// Transports the fiber of f over path.start() along the path.
inline TrackedPath track(const CBiPoly& f, const Path& path, const std::vector<Complex>& fiber0,
                         const TrackOptions& opt = {}) {
  if (path.pieces().empty()) throw TrackingError("empty path");
  const Complex start = path.start();
  {
    auto slice = f.slice_z1(start);
    for (const auto& y : fiber0) {
      Complex v = UniPoly<Complex>(slice).eval(y);
      if (!(std::abs(v) <= detail::residual_threshold(slice, y, 1e-8)))
        throw TrackingError("initial fiber does not solve f(path(0), .)");
    }
  }
  auto check_clearance = [&](Complex u) {
    for (const auto& b : opt.branch_points)
      if (std::abs(u - b) < opt.clearance)
        throw TrackingError("path violates the branch-point clearance");
  };
  check_clearance(start);

  TrackedPath out;
  out.samples.push_back(start);
  out.fibers.push_back(fiber0);
  std::vector<Complex> current = fiber0;
  for (const auto& piece : path.pieces()) {
    double s = 0.0;
    double h = opt.max_step;
    while (s < 1.0) {
      const double s_next = std::min(1.0, s + h);
      const Complex u = piece(s_next);
      bool ok = false;
      std::vector<Complex> next;
      try {
        RootSet rs = all_roots(f.slice_z1(u), opt.roots, &current);
        if (auto m = nearest_matching(current, rs.roots)) {
          next.resize(current.size());
          for (std::size_t i = 0; i < current.size(); ++i)
            next[i] = rs.roots[static_cast<std::size_t>((*m)[i])];
          ok = true;
        }
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) {
        h *= 0.5;
        ++out.refinements;
        if (h < opt.min_step)
          throw TrackingError("fiber pairing stayed ambiguous below the minimum step");
        continue;
      }
      check_clearance(u);
      s = s_next;
      current = std::move(next);
      out.samples.push_back(u);
      out.fibers.push_back(current);
      h = std::min(opt.max_step, h * 1.5);
    }
  }
  return out;
}

}  // namespace nullsatz
