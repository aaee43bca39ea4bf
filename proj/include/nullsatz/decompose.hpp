#pragma once

// Numerical irreducible decomposition of V(I) in C^2. The curve part comes from
// the gcd of the generators, split exactly into square-free factors and then into
// monodromy orbits of fiber sheets; the point part comes from resultant elimination.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nullsatz/bipoly.hpp"
#include "nullsatz/errors.hpp"
#include "nullsatz/polyalg.hpp"
#include "nullsatz/rootfind.hpp"

namespace nullsatz {

/// Working coordinates (u, v) of a factor. With w = z, or w = (z2, z1) when swapped,
/// w1 = u + shear * v and w2 = v.
struct CoordinateChange {
  bool swapped = false;
  GaussRational shear;

  bool is_identity() const { return !swapped && shear.is_zero(); }

  Point2 to_original(Complex u, Complex v) const {
    const Complex w1 = u + shear.to_complex() * v;
    return swapped ? Point2{v, w1} : Point2{w1, v};
  }
  /// (u, v) as z1, z2 of the returned pair.
  Point2 to_working(const Point2& z) const {
    const Complex w1 = swapped ? z.z2 : z.z1;
    const Complex w2 = swapped ? z.z1 : z.z2;
    return {w1 - shear.to_complex() * w2, w2};
  }
  BiPoly apply(const BiPoly& f) const { return sheared(swapped ? f.swapped() : f, shear); }
  /// A polynomial in working coordinates rewritten in the original ones.
  CBiPoly pull_back(const CBiPoly& g) const {
    CBiPoly h = g.compose_linear(1.0, -shear.to_complex(), 0.0, 1.0);
    return swapped ? h.swapped() : h;
  }

 private:
  static BiPoly sheared(const BiPoly& f, const GaussRational& t) {
    return t.is_zero() ? f : nullsatz::shear(f, t);
  }
};

struct DecomposeOptions {
  std::uint64_t seed = 1;
  double max_step = 1.0 / 64;       // tracking step per path piece
  double tol_res = 1e-10;           // root acceptance on fiber slices
  double tol_point = 1e-8;          // residual tolerance for witnesses and points
  double node_radius = 2.0;         // interpolation circle around the base point
  int reconstruction_points = 20;
  double reconstruction_tol = 1e-6;
  int max_base_attempts = 200;
};

struct CurveComponent {
  BiPoly parent;                  // square-free factor, normalized
  int factor_index = 0;
  std::vector<int> orbit;         // sheet indices over the base point
  int degree = 0;                 // orbit size = degree of the component in the fiber variable
  CBiPoly defining;               // interpolated defining polynomial, original coordinates
  std::vector<Point2> witnesses;  // one per sheet of the orbit
  double max_witness_residual = 0;

  CoordinateChange coords;
  BiPoly working_parent;          // parent in working coordinates (monic in v up to a unit)
  CBiPoly working_defining;       // monic in v
  Complex base_point;
};

/// Per-factor monodromy record.
struct FactorMonodromy {
  BiPoly factor;
  int multiplicity = 1;
  CoordinateChange coords;
  BiPoly working;
  std::vector<Complex> branch_points;
  Complex base_point;
  std::vector<Complex> base_fiber;
  std::vector<std::vector<int>> permutations;  // one per branch-point loop
  std::vector<std::vector<int>> orbits;
  double reconstruction_error = 0;
  int tracking_refinements = 0;
};

struct IsolatedPoint {
  Point2 location;
  std::vector<double> residuals;  // |g_i(location)|
};

struct VarietyDecomposition {
  std::vector<CurveComponent> curves;
  std::vector<IsolatedPoint> points;
  BiPoly gcd;
  std::vector<BiPoly> residual_generators;
  std::vector<FactorMonodromy> factors;
  bool point_part_solved = false;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed * 0x9E3779B97F4A7C15ULL + salt + 0x632BE59BD9B4E019ULL;
  x ^= x >> 31;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  return x;
}

/// Newton steps on a univariate polynomial given by ascending coefficients.
inline Complex polish_root(const std::vector<Complex>& c, Complex z, int steps = 8) {
  for (int k = 0; k < steps; ++k) {
    Complex p{}, dp{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      dp = dp * z + p;
      p = p * z + *it;
    }
    if (dp == Complex{}) break;
    const Complex dz = p / dp;
    z -= dz;
    if (std::abs(dz) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

inline bool has_constant_lead(const BiPoly& f) {
  return f.deg_z2() >= 0 && f.coeff_in_z2(f.deg_z2()).is_constant();
}

/// Swap if z2 is absent, then shear with a seeded rational t until the leading
/// coefficient in v is constant.
inline CoordinateChange choose_coordinates(const BiPoly& f, std::mt19937_64& rng) {
  CoordinateChange cc;
  cc.swapped = f.deg_z2() == 0;
  if (has_constant_lead(cc.apply(f))) return cc;
  std::uniform_int_distribution<long> num(-6, 6);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const long a = num(rng), b = num(rng);
    if (a == 0 && b == 0) continue;
    cc.shear = GaussRational(Rational(a, 7), Rational(b, 7));
    const BiPoly g = cc.apply(f);
    if (has_constant_lead(g) && g.deg_z2() == f.total_degree()) return cc;
  }
  throw StructuralError("no shear made the factor monic in the fiber variable");
}

inline double min_pairwise(const std::vector<Complex>& pts) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::min(d, std::abs(pts[i] - pts[j]));
  return d;
}

inline double segment_distance(Complex a, Complex b, Complex p) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  double s = len2 > 0 ? std::real((p - a) * std::conj(d)) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(a + s * d - p);
}

struct LoopGeometry {
  std::vector<double> radii;
  std::vector<Complex> entries;
};

inline LoopGeometry loop_geometry(const std::vector<Complex>& branch, Complex base) {
  LoopGeometry g;
  for (std::size_t k = 0; k < branch.size(); ++k) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < branch.size(); ++j)
      if (j != k) nearest = std::min(nearest, std::abs(branch[k] - branch[j]));
    const double r = std::isfinite(nearest) ? std::min(0.3 * nearest, 0.5) : 0.5;
    g.radii.push_back(r);
    g.entries.push_back(branch[k] + r * (base - branch[k]) / std::abs(base - branch[k]));
  }
  return g;
}

/// The straight segments from base to each loop entry must stay clear of every other
/// loop disk, and base must sit well outside all of them.
inline bool base_point_admissible(const std::vector<Complex>& branch, Complex base,
                                  const LoopGeometry& g) {
  for (std::size_t k = 0; k < branch.size(); ++k) {
    if (std::abs(base - branch[k]) < 1.5 * g.radii[k]) return false;
    for (std::size_t j = 0; j < branch.size(); ++j) {
      if (j == k) continue;
      if (segment_distance(base, g.entries[k], branch[j]) < 1.1 * g.radii[j]) return false;
    }
  }
  return true;
}

inline std::vector<std::vector<int>> orbits_from(const std::vector<std::vector<int>>& perms, int n) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  for (const auto& p : perms)
    for (int i = 0; i < n; ++i) {
      const int a = find(i), b = find(p[static_cast<std::size_t>(i)]);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::vector<std::vector<int>> out;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(i);
  }
  return out;
}

/// Coefficients of prod (x - r_i), ascending, highest = 1.
inline std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const auto& r : roots) {
    std::vector<Complex> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace detail

/// Exact splitting of one square-free factor into monodromy orbits over a base point.
inline FactorMonodromy factor_monodromy(const BiPoly& factor, const DecomposeOptions& opt,
                                        std::uint64_t salt = 0) {
  if (factor.is_constant()) throw DegreeError("monodromy of a constant factor");
  std::mt19937_64 rng(detail::mix_seed(opt.seed, salt));
  FactorMonodromy fm;
  fm.factor = factor;
  fm.coords = detail::choose_coordinates(factor, rng);
  fm.working = fm.coords.apply(factor);
  const CBiPoly F(fm.working);
  const int m = fm.working.deg_z2();

  if (m > 1) {
    QPoly disc = squarefree_part(discriminant_z2(fm.working));
    if (disc.degree() > 0) fm.branch_points = all_roots(to_numeric(disc)).roots;
  }
  const double dmin = detail::min_pairwise(fm.branch_points);
  const double clearance = std::isfinite(dmin) ? 0.05 * dmin : 0.05;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double spread = 1.0;
  for (const auto& b : fm.branch_points) spread = std::max(spread, std::abs(b));
  detail::LoopGeometry geom;
  bool placed = false;
  for (int attempt = 0; attempt < opt.max_base_attempts && !placed; ++attempt) {
    const double grow = std::min(1.5, 0.5 + attempt / 100.0);
    const Complex b = std::polar(grow * spread * std::sqrt(unit(rng)), 2 * std::numbers::pi * unit(rng));
    geom = detail::loop_geometry(fm.branch_points, b);
    if (detail::base_point_admissible(fm.branch_points, b, geom)) {
      fm.base_point = b;
      placed = true;
    }
  }
  if (!placed) throw StructuralError("no admissible base point avoids the branch set");

  RootOptions ropt;
  ropt.tol_res = opt.tol_res;
  fm.base_fiber = all_roots(F.slice_z1(fm.base_point), ropt).roots;
  if (static_cast<int>(fm.base_fiber.size()) != m)
    throw StructuralError("base fiber has the wrong number of sheets");

  TrackOptions topt;
  topt.max_step = opt.max_step;
  topt.roots = ropt;
  topt.branch_points = fm.branch_points;
  topt.clearance = clearance;
  for (std::size_t k = 0; k < fm.branch_points.size(); ++k) {
    Path loop;
    loop.then(Path::segment(fm.base_point, geom.entries[k]))
        .then(Path::circle(fm.branch_points[k], geom.entries[k]))
        .then(Path::segment(geom.entries[k], fm.base_point));
    TrackedPath tp = track(F, loop, fm.base_fiber, topt);
    fm.tracking_refinements += tp.refinements;
    fm.permutations.push_back(tp.permutation());
  }
  fm.orbits = detail::orbits_from(fm.permutations, m);
  return fm;
}

namespace detail {

/// Sheets of the base fiber transported to nodes b + R e^{i(theta0 + 2 pi k / n)}.
inline std::vector<std::vector<Complex>> node_fibers(const FactorMonodromy& fm, const CBiPoly& F,
                                                     int n, double radius, double theta0,
                                                     const DecomposeOptions& opt, int& refinements) {
  TrackOptions topt;
  topt.max_step = opt.max_step;
  topt.roots.tol_res = opt.tol_res;
  std::vector<std::vector<Complex>> out;
  for (int k = 0; k < n; ++k) {
    const Complex node = fm.base_point + std::polar(radius, theta0 + 2 * std::numbers::pi * k / n);
    Path p;
    p.then(Path::segment(fm.base_point, node));
    TrackedPath tp = track(F, p, fm.base_fiber, topt);
    refinements += tp.refinements;
    out.push_back(tp.fibers.back());
  }
  return out;
}

inline double choose_node_offset(const FactorMonodromy& fm, int n, double radius, double clearance,
                                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 2 * std::numbers::pi / n);
  double theta = unit(rng);
  for (int attempt = 0; attempt < 64; ++attempt) {
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      const Complex node = fm.base_point + std::polar(radius, theta + 2 * std::numbers::pi * k / n);
      for (const auto& b : fm.branch_points)
        if (segment_distance(fm.base_point, node, b) < clearance) ok = false;
    }
    if (ok) return theta;
    theta = unit(rng);
  }
  return theta;
}

/// sum_j c_j ((u - b) / R)^j expanded in powers of u.
inline std::vector<Complex> expand_shifted(const std::vector<Complex>& c, Complex b, double R) {
  std::vector<Complex> out(c.size());
  std::vector<Complex> power{1.0};  // ((u - b) / R)^j, ascending in u
  for (std::size_t j = 0; j < c.size(); ++j) {
    for (std::size_t k = 0; k < power.size(); ++k) out[k] += c[j] * power[k];
    std::vector<Complex> next(power.size() + 1);
    for (std::size_t k = 0; k < power.size(); ++k) {
      next[k + 1] += power[k] / R;
      next[k] -= power[k] * b / R;
    }
    power = std::move(next);
  }
  return out;
}

}  // namespace detail

/// Orbit-wise decomposition of one square-free factor into curve components.
inline std::vector<CurveComponent> factor_components(FactorMonodromy& fm, int factor_index,
                                                     const DecomposeOptions& opt,
                                                     std::uint64_t salt = 0) {
  std::mt19937_64 rng(detail::mix_seed(opt.seed, salt ^ 0xA5A5A5A5ULL));
  const CBiPoly F(fm.working);
  const int m = fm.working.deg_z2();
  const int n = fm.working.total_degree() + 1;
  const double R = opt.node_radius;
  const double dmin = detail::min_pairwise(fm.branch_points);
  const double clearance = std::isfinite(dmin) ? 0.05 * dmin : 0.05;
  const double theta0 = detail::choose_node_offset(fm, n, R, clearance, rng);
  auto fibers = detail::node_fibers(fm, F, n, R, theta0, opt, fm.tracking_refinements);
  const Complex lead = fm.working.coeff_in_z2(m).coeff(0).to_complex();

  std::vector<CurveComponent> out;
  CBiPoly product;
  product.at(0, 0) = 1.0;
  for (const auto& orbit : fm.orbits) {
    const int k = static_cast<int>(orbit.size());
    // per node: coefficients of prod over the orbit of (v - sheet)
    std::vector<std::vector<Complex>> node_coeffs;
    for (int j = 0; j < n; ++j) {
      std::vector<Complex> sheets;
      for (int i : orbit) sheets.push_back(fibers[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
      node_coeffs.push_back(detail::poly_from_roots(sheets));
    }
    CBiPoly G(n - 1, k);
    for (int d = 0; d <= k; ++d) {
      // discrete Fourier interpolation on the node circle
      std::vector<Complex> c(static_cast<std::size_t>(n));
      for (int p = 0; p < n; ++p) {
        Complex acc{};
        for (int j = 0; j < n; ++j) {
          const double ang = -(theta0 + 2 * std::numbers::pi * j / n) * p;
          acc += node_coeffs[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)] * std::polar(1.0, ang);
        }
        c[static_cast<std::size_t>(p)] = acc / static_cast<double>(n);
      }
      auto mono = detail::expand_shifted(c, fm.base_point, R);
      for (int a = 0; a < n; ++a) G.at(a, d) = mono[static_cast<std::size_t>(a)];
    }
    G = G.cleaned(1e-13);

    CurveComponent cc;
    cc.parent = fm.factor;
    cc.factor_index = factor_index;
    cc.orbit = orbit;
    cc.degree = k;
    cc.coords = fm.coords;
    cc.working_parent = fm.working;
    cc.working_defining = G;
    cc.defining = fm.coords.pull_back(G).cleaned(1e-13);
    cc.base_point = fm.base_point;
    const CBiPoly parent(fm.factor);
    const auto slice = F.slice_z1(fm.base_point);
    for (int i : orbit) {
      const Complex v = detail::polish_root(slice, fm.base_fiber[static_cast<std::size_t>(i)]);
      const Point2 w = fm.coords.to_original(fm.base_point, v);
      cc.witnesses.push_back(w);
      cc.max_witness_residual = std::max(cc.max_witness_residual, std::abs(parent.eval(w)));
    }
    product = product * G;
    out.push_back(std::move(cc));
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  fm.reconstruction_error = 0;
  for (int s = 0; s < opt.reconstruction_points; ++s) {
    const Complex u = fm.base_point + std::polar(R * std::sqrt(unit(rng)), 2 * std::numbers::pi * unit(rng));
    const Complex v = std::polar(2.0 * std::sqrt(unit(rng)), 2 * std::numbers::pi * unit(rng));
    const Complex exact = F.eval(u, v) / lead;
    const double err = std::abs(product.eval(u, v) - exact) / std::max(1.0, std::abs(exact));
    fm.reconstruction_error = std::max(fm.reconstruction_error, err);
  }
  return out;
}

/// Irreducible components of V(g) for a nonconstant g.
inline std::vector<CurveComponent> decompose_curve(const BiPoly& g, const DecomposeOptions& opt = {},
                                                   std::vector<FactorMonodromy>* record = nullptr) {
  if (g.is_zero() || g.is_constant()) throw DegreeError("curve decomposition needs a nonconstant polynomial");
  SquarefreeDecomposition sq = squarefree(g);
  std::vector<CurveComponent> out;
  for (std::size_t i = 0; i < sq.factors.size(); ++i) {
    FactorMonodromy fm = factor_monodromy(sq.factors[i].factor, opt, i);
    fm.multiplicity = sq.factors[i].multiplicity;
    auto comps = factor_components(fm, static_cast<int>(i), opt, i);
    for (auto& c : comps) out.push_back(std::move(c));
    if (record) record->push_back(std::move(fm));
  }
  return out;
}

namespace detail {

inline std::vector<double> residuals_at(const std::vector<CBiPoly>& gens, const Point2& z) {
  std::vector<double> r;
  for (const auto& g : gens) r.push_back(std::abs(g.eval(z)));
  return r;
}

inline double max_of(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, x);
  return m;
}

/// Newton on (f, g) = 0 from z.
inline Point2 newton2(const CBiPoly& f, const CBiPoly& g, Point2 z, int steps = 20) {
  const CBiPoly f1 = f.derivative_z1(), f2 = f.derivative_z2();
  const CBiPoly g1 = g.derivative_z1(), g2 = g.derivative_z2();
  for (int k = 0; k < steps; ++k) {
    const Complex a = f1.eval(z), b = f2.eval(z), c = g1.eval(z), d = g2.eval(z);
    const Complex det = a * d - b * c;
    if (std::abs(det) < 1e-300) break;
    const Complex fv = f.eval(z), gv = g.eval(z);
    const Complex dz1 = (d * fv - b * gv) / det;
    const Complex dz2 = (a * gv - c * fv) / det;
    z.z1 -= dz1;
    z.z2 -= dz2;
    if (std::abs(dz1) + std::abs(dz2) < 1e-16 * (1 + std::abs(z.z1) + std::abs(z.z2))) break;
  }
  return z;
}

/// Common zeros, eliminating z2 with the pair (i, j).
inline std::vector<IsolatedPoint> solve_by_pair(const std::vector<BiPoly>& gens, std::size_t i,
                                                std::size_t j, const QPoly& res, double tol) {
  std::vector<IsolatedPoint> out;
  if (res.degree() <= 0) return out;
  std::vector<CBiPoly> cg;
  for (const auto& g : gens) cg.push_back(CBiPoly(g));
  const auto xs = all_roots(to_numeric(squarefree_part(res))).roots;
  for (const auto& x : xs) {
    std::vector<Complex> ys;
    bool inconsistent = false;
    std::vector<Complex> best;
    for (const auto& g : cg) {
      auto s = g.slice_z1(x);
      const double scale = std::max(1.0, g.max_abs());
      double mx = 0;
      for (const auto& c : s) mx = std::max(mx, std::abs(c));
      if (mx < 1e-9 * scale) continue;
      while (s.size() > 1 && std::abs(s.back()) < 1e-12 * mx) s.pop_back();
      if (s.size() == 1) {
        inconsistent = true;
        break;
      }
      if (best.empty() || s.size() < best.size()) best = s;
    }
    if (inconsistent) continue;
    if (best.empty())
      throw StructuralError("every generator vanishes on the line z1 = const: positive-dimensional "
                            "residual, extract the gcd first");
    for (const auto& y : all_roots(best).roots) {
      Point2 z = newton2(cg[i], cg[j], {x, y});
      auto r = residuals_at(cg, z);
      if (max_of(r) >= tol) {
        z = {x, y};
        r = residuals_at(cg, z);
      }
      if (max_of(r) >= tol) continue;
      bool dup = false;
      for (const auto& p : out)
        if (std::abs(p.location.z1 - z.z1) + std::abs(p.location.z2 - z.z2) < 1e-6) dup = true;
      if (!dup) out.push_back({z, r});
    }
  }
  return out;
}

}  // namespace detail

/// Isolated common zeros of generators with trivial gcd.
inline std::vector<IsolatedPoint> zero_dim_solve(const std::vector<BiPoly>& generators,
                                                 double tol_point = 1e-8) {
  if (generators.size() < 2) throw DegreeError("zero-dimensional solve needs two generators");
  for (const auto& g : generators)
    if (g.is_zero()) throw DegreeError("zero generator in zero-dimensional solve");
  for (const auto& g : generators)
    if (g.is_constant()) return {};
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      for (bool swap : {false, true}) {
        const BiPoly a = swap ? generators[i].swapped() : generators[i];
        const BiPoly b = swap ? generators[j].swapped() : generators[j];
        if (a.deg_z2() < 1 && b.deg_z2() < 1) continue;
        QPoly res = resultant_z2(a, b);
        if (res.is_zero()) continue;
        if (res.degree() == 0) return {};
        std::vector<BiPoly> gens;
        for (const auto& g : generators) gens.push_back(swap ? g.swapped() : g);
        auto pts = detail::solve_by_pair(gens, i, j, res, tol_point);
        if (swap)
          for (auto& p : pts) std::swap(p.location.z1, p.location.z2);
        std::sort(pts.begin(), pts.end(), [](const IsolatedPoint& x, const IsolatedPoint& y) {
          if (x.location.z1 != y.location.z1) return detail::lex_less(x.location.z1, y.location.z1);
          return detail::lex_less(x.location.z2, y.location.z2);
        });
        return pts;
      }
    }
  throw StructuralError(
      "every pairwise resultant vanishes identically: the generators share a curve; "
      "extract their gcd first");
}

/// Curve part from the gcd of the generators, point part from the cofactors.
inline VarietyDecomposition decompose_ideal(const std::vector<BiPoly>& generators,
                                            const DecomposeOptions& opt = {}) {
  std::vector<BiPoly> gens;
  for (const auto& g : generators)
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) throw DegreeError("every generator is zero");
  VarietyDecomposition out;
  BiPoly g = normalized(gens[0]);
  for (std::size_t i = 1; i < gens.size(); ++i) g = gcd2(g, gens[i]);
  out.gcd = g;
  if (!g.is_constant()) out.curves = decompose_curve(g, opt, &out.factors);
  if (gens.size() == 1) return out;

  bool any_constant = false;
  for (const auto& x : gens) {
    BiPoly q = *divide_exact(x, g);
    any_constant = any_constant || q.is_constant();
    out.residual_generators.push_back(std::move(q));
  }
  if (any_constant) return out;
  out.point_part_solved = true;
  const CBiPoly cg(g);
  std::vector<CBiPoly> cgens;
  for (const auto& x : gens) cgens.push_back(CBiPoly(x));
  for (auto& p : zero_dim_solve(out.residual_generators, opt.tol_point)) {
    if (!g.is_constant() && std::abs(cg.eval(p.location)) < opt.tol_point) continue;
    p.residuals = detail::residuals_at(cgens, p.location);
    out.points.push_back(std::move(p));
  }
  return out;
}

}  // namespace nullsatz
