#pragma once

// Closure classifier for polynomial ideals in the Bergman space of Omega_{p,q}: an
// ideal is closed when every irreducible component of V(I) meets Omega, dense when
// none does, and neither otherwise.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nullsatz/bergman.hpp"
#include "nullsatz/decompose.hpp"
#include "nullsatz/parallel.hpp"
#include "nullsatz/qmc.hpp"
#include "nullsatz/rootfind.hpp"

namespace nullsatz {

enum class Intersection { Intersects, Misses, Inconclusive };
enum class Closure { Closed, Dense, Neither, Inconclusive };

inline const char* to_string(Intersection v) {
  switch (v) {
    case Intersection::Intersects:
      return "INTERSECTS";
    case Intersection::Misses:
      return "MISSES";
    case Intersection::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

inline const char* to_string(Closure v) {
  switch (v) {
    case Closure::Closed:
      return "CLOSED";
    case Closure::Dense:
      return "DENSE";
    case Closure::Neither:
      return "NEITHER";
    case Closure::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

struct ClassifyOptions {
  double delta = 1e-6;        // band around phi = 1
  double grid_pitch = 0.01;   // spacing of the z1 search grid
  double tol_point = 1e-8;
  int refine_candidates = 8;
  unsigned threads = 1;
  bool attach_certificate = true;
  DecomposeOptions decompose;
  DensityOptions density;
};

struct IntersectionResult {
  std::string component;        // "curve k" or "point k"
  double min_phi = std::numeric_limits<double>::infinity();
  Point2 argmin{};
  Intersection verdict = Intersection::Inconclusive;
  bool verified = false;        // argmin passed the residual check
  double residual = 0;          // |parent(argmin)| or max generator residual
  int grid_points = 0;
  int refinement_evaluations = 0;
  double pitch = 0;
  double radius = 0;
  std::string note;
};

struct ClosureVerdict {
  std::vector<IntersectionResult> components;
  Closure overall = Closure::Inconclusive;
  std::string justification;
  std::optional<Point2> witness;  // w with I contained in the maximal ideal M_w
  double witness_residual = 0;
  double witness_phi = 0;
  std::optional<DensityCertificate> certificate;
  std::optional<VarietyDecomposition> decomposition;
  std::string diagnostics;
};

/// Verdict table: any INCONCLUSIVE wins, then all-in / all-out / mixed.
inline Closure aggregate(const std::vector<Intersection>& parts) {
  bool any_in = false, any_out = false;
  for (auto v : parts) {
    if (v == Intersection::Inconclusive) return Closure::Inconclusive;
    any_in = any_in || v == Intersection::Intersects;
    any_out = any_out || v == Intersection::Misses;
  }
  if (any_in && any_out) return Closure::Neither;
  return any_in ? Closure::Closed : Closure::Dense;
}

inline Intersection band_verdict(double phi, bool verified, double delta) {
  if (verified && phi <= 1.0 - delta) return Intersection::Intersects;
  if (phi >= 1.0 + delta) return Intersection::Misses;
  return Intersection::Inconclusive;
}

inline IntersectionResult intersect_point(const IsolatedPoint& pt, const DomainSpec& domain,
                                          double delta = 1e-6) {
  IntersectionResult r;
  r.component = "point";
  r.argmin = pt.location;
  r.min_phi = domain.phi(pt.location);
  r.verified = true;
  for (double x : pt.residuals) r.residual = std::max(r.residual, x);
  r.verdict = band_verdict(r.min_phi, true, delta);
  return r;
}

namespace detail {

/// Roots of the monic-in-v slice, closed forms up to degree 2.
inline std::vector<Complex> fiber_roots(const std::vector<Complex>& c, std::vector<Complex>* warm) {
  const std::size_t m = c.size() - 1;
  if (m == 1) return {-c[0] / c[1]};
  if (m == 2) {
    const Complex a = c[2], b = c[1], cc = c[0];
    const Complex s = std::sqrt(b * b - 4.0 * a * cc);
    const Complex q = -0.5 * (std::real(std::conj(b) * s) >= 0 ? b + s : b - s);
    if (q == Complex{}) return {Complex{}, Complex{}};
    return {q / a, cc / q};
  }
  RootSet rs = all_roots(c, {}, warm && warm->size() == m ? warm : nullptr);
  if (warm) *warm = rs.roots;
  return rs.roots;
}

struct CurveCandidate {
  double phi;
  Complex u;
  Complex v;
};

}  // namespace detail

/// Minimizes phi over one curve component: a grid over the fiber parameter u covering
/// every point with |z1|, |z2| <= 1.01, then compass refinement of the best candidates
/// and a Newton polish of the minimizer on the exact parent factor.
inline IntersectionResult intersect_curve(const CurveComponent& c, const DomainSpec& domain,
                                          const ClassifyOptions& opt = {}) {
  IntersectionResult res;
  res.component = "curve";
  const CBiPoly& G = c.working_defining;
  const CBiPoly F(c.working_parent);
  const double t = std::abs(c.coords.shear.to_complex());
  const double R = 1.01 * (1.0 + t);
  const double h = opt.grid_pitch;
  res.pitch = h;
  res.radius = R;

  auto phi_at = [&](Complex u, Complex v) { return domain.phi(c.coords.to_original(u, v)); };
  std::vector<detail::CurveCandidate> best;
  const std::size_t keep = static_cast<std::size_t>(std::max(1, opt.refine_candidates));
  auto offer = [&](double phi, Complex u, Complex v) {
    for (auto& b : best)
      if (std::abs(b.u - u) < 5 * h) {
        if (phi < b.phi) b = {phi, u, v};
        std::sort(best.begin(), best.end(), [](auto& x, auto& y) { return x.phi < y.phi; });
        return;
      }
    if (best.size() < keep || phi < best.back().phi) {
      best.push_back({phi, u, v});
      std::sort(best.begin(), best.end(), [](auto& x, auto& y) { return x.phi < y.phi; });
      if (best.size() > keep) best.pop_back();
    }
  };

  try {
    const int n = static_cast<int>(std::ceil(R / h));
    for (int iy = -n; iy <= n; ++iy) {
      std::vector<Complex> warm;
      for (int ix = -n; ix <= n; ++ix) {
        const Complex u(ix * h, iy * h);
        if (std::abs(u) > R) continue;
        ++res.grid_points;
        for (const auto& v : detail::fiber_roots(G.slice_z1(u), &warm)) offer(phi_at(u, v), u, v);
      }
    }

    auto objective = [&](const std::vector<double>& x) {
      const Complex u(x[0], x[1]);
      double m = std::numeric_limits<double>::infinity();
      for (const auto& v : detail::fiber_roots(G.slice_z1(u), nullptr)) m = std::min(m, phi_at(u, v));
      return -m;
    };
    const std::vector<double> lo{-R, -R}, hi{R, R};
    detail::CurveCandidate top{std::numeric_limits<double>::infinity(), {}, {}};
    for (const auto& cand : best) {
      CompassResult cr = compass_maximize(objective, {cand.u.real(), cand.u.imag()}, lo, hi,
                                          h / (2 * R), 1e-13);
      res.refinement_evaluations += cr.evaluations;
      const Complex u(cr.x[0], cr.x[1]);
      detail::CurveCandidate here = cand;
      for (const auto& v : detail::fiber_roots(G.slice_z1(u), nullptr)) {
        const double p = phi_at(u, v);
        if (p < here.phi) here = {p, u, v};
      }
      if (here.phi < top.phi) top = here;
    }
    if (!std::isfinite(top.phi)) throw TrackingError("no candidate point on the component");

    const Complex v = detail::polish_root(F.slice_z1(top.u), top.v);
    const Point2 z = c.coords.to_original(top.u, v);
    res.argmin = z;
    res.residual = std::abs(CBiPoly(c.parent).eval(z));
    res.verified = res.residual < opt.tol_point && std::abs(v - top.v) < 1e-6 * (1 + std::abs(v));
    res.min_phi = top.phi;
    if (res.verified) res.min_phi = domain.phi(z);
    res.verdict = band_verdict(res.min_phi, res.verified, opt.delta);
  } catch (const Error& e) {
    res.verdict = Intersection::Inconclusive;
    res.note = std::string("search failed: ") + e.what();
  }
  return res;
}

/// Closed / dense / neither for the ideal generated by `generators`.
inline ClosureVerdict classify(const std::vector<BiPoly>& generators, const DomainSpec& domain,
                               const ClassifyOptions& opt = {}) {
  ClosureVerdict out;
  VarietyDecomposition dec;
  try {
    dec = decompose_ideal(generators, opt.decompose);
  } catch (const Error& e) {
    out.overall = Closure::Inconclusive;
    out.justification = "decomposition failed";
    out.diagnostics = e.what();
    return out;
  }

  const std::size_t nc = dec.curves.size();
  out.components = parallel_map<IntersectionResult>(nc + dec.points.size(), opt.threads, [&](std::size_t i) {
    IntersectionResult r = i < nc ? intersect_curve(dec.curves[i], domain, opt)
                                  : intersect_point(dec.points[i - nc], domain, opt.delta);
    r.component = (i < nc ? "curve " + std::to_string(i) : "point " + std::to_string(i - nc));
    return r;
  });
  std::vector<Intersection> parts;
  for (const auto& r : out.components) parts.push_back(r.verdict);
  out.overall = aggregate(parts);
  out.decomposition = std::move(dec);

  switch (out.overall) {
    case Closure::Closed: {
      out.justification = "every irreducible component of V(I) meets the domain";
      const IntersectionResult* w = nullptr;
      for (const auto& r : out.components)
        if (!w || r.min_phi < w->min_phi) w = &r;
      std::vector<CBiPoly> gens;
      for (const auto& g : generators) gens.push_back(CBiPoly(g));
      out.witness = w->argmin;
      out.witness_phi = w->min_phi;
      out.witness_residual = detail::max_of(detail::residuals_at(gens, w->argmin));
      if (!(out.witness_residual < opt.tol_point && out.witness_phi < 1.0 - opt.delta)) {
        out.overall = Closure::Inconclusive;
        out.diagnostics = "witness point failed the residual check on the generators";
      }
      break;
    }
    case Closure::Dense:
      out.justification = parts.empty() ? "V(I) is empty"
                                        : "no irreducible component of V(I) meets the domain";
      break;
    case Closure::Neither:
      out.justification = "some components of V(I) meet the domain and some do not";
      break;
    case Closure::Inconclusive:
      out.justification = "a component grazes the boundary or its search failed";
      break;
  }

  std::vector<BiPoly> nonzero;
  for (const auto& g : generators)
    if (!g.is_zero()) nonzero.push_back(g);
  if (out.overall == Closure::Dense && opt.attach_certificate && nonzero.size() == 1)
    out.certificate = density_certificate(nonzero[0], domain, opt.density);
  return out;
}

}  // namespace nullsatz
