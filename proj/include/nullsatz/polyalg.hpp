#pragma once

// Exact structural algebra on bivariate polynomials over Q(i): gcd, exact
// division, square-free decomposition and the Sylvester resultant in z2.

#include <optional>
#include <utility>
#include <vector>

#include "nullsatz/bipoly.hpp"
#include "nullsatz/errors.hpp"
#include "nullsatz/unipoly.hpp"

namespace nullsatz {

/// Scale f so its leading coefficient (lex, z2 before z1) is 1.
inline BiPoly normalized(const BiPoly& f) {
  if (f.is_zero()) return f;
  return f.scaled(GaussRational(1) / f.leading_term().second);
}

/// f / g when g divides f exactly, otherwise nullopt.
inline std::optional<BiPoly> divide_exact(BiPoly f, const BiPoly& g) {
  if (g.is_zero()) throw Error("bivariate division by zero");
  auto [lead_e, lead_c] = g.leading_term();
  BiPoly q;
  while (!f.is_zero()) {
    auto [e, c] = f.leading_term();
    if (e.a < lead_e.a || e.b < lead_e.b) return std::nullopt;
    BiPoly t = BiPoly::monomial(e.a - lead_e.a, e.b - lead_e.b, c / lead_c);
    q += t;
    f -= t * g;
  }
  return q;
}

namespace detail {

using ZPoly = std::vector<QPoly>;  // polynomial in z2 over Q(i)[z1]

inline void trim(ZPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline QPoly content(const ZPoly& p) {
  QPoly g;
  for (const auto& c : p) g = gcd(g, c);
  return g;
}

inline ZPoly primitive_part(const ZPoly& p) {
  QPoly c = content(p);
  ZPoly out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(exact_quotient(x, c));
  return out;
}

/// A := lc(B)*A - lc(A)*z2^k*B until deg A < deg B.
inline ZPoly pseudo_remainder(ZPoly a, const ZPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int da = static_cast<int>(a.size()) - 1;
    QPoly la = a.back();
    const QPoly& lb = b.back();
    for (auto& x : a) x = lb * x;
    for (int j = 0; j <= db; ++j)
      a[static_cast<std::size_t>(da - db + j)] -= la * b[static_cast<std::size_t>(j)];
    trim(a);
  }
  return a;
}

/// gcd of two primitive polynomials via the primitive remainder sequence.
inline ZPoly primitive_gcd(ZPoly a, ZPoly b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a;
  while (true) {
    if (b.size() == 1) return {QPoly::constant(GaussRational(1))};
    ZPoly r = pseudo_remainder(a, b);
    if (r.empty()) return b;
    if (r.size() == 1) return {QPoly::constant(GaussRational(1))};
    a = std::move(b);
    b = primitive_part(r);
  }
}

}  // namespace detail

/// Exact gcd, normalized to leading coefficient 1 (lex, z2 before z1).
inline BiPoly gcd2(const BiPoly& f, const BiPoly& g) {
  if (f.is_zero() && g.is_zero()) throw DegreeError("gcd of two zero polynomials");
  if (f.is_zero()) return normalized(g);
  if (g.is_zero()) return normalized(f);
  detail::ZPoly pf = f.as_z2_poly(), pg = g.as_z2_poly();
  QPoly cont = gcd(detail::content(pf), detail::content(pg));
  detail::ZPoly pp = detail::primitive_gcd(detail::primitive_part(pf), detail::primitive_part(pg));
  for (auto& c : pp) c = cont * c;
  return normalized(BiPoly::from_z2_poly(pp));
}

struct SquarefreeFactor {
  BiPoly factor;
  int multiplicity = 1;
};

struct SquarefreeDecomposition {
  GaussRational unit;
  std::vector<SquarefreeFactor> factors;
};

/// f = unit * prod factor_i^multiplicity_i, each factor square-free, normalized and
/// pairwise coprime.
inline SquarefreeDecomposition squarefree(const BiPoly& f) {
  if (f.is_constant()) throw DegreeError("square-free decomposition of a constant");
  SquarefreeDecomposition out;
  out.unit = f.leading_term().second;
  BiPoly c = gcd2(f, gcd2(f.derivative_z1(), f.derivative_z2()));
  BiPoly w = *divide_exact(f, c);
  w = normalized(w);
  for (int i = 1; !w.is_constant(); ++i) {
    BiPoly y = gcd2(w, c);
    BiPoly z = *divide_exact(w, y);
    if (!z.is_constant()) out.factors.push_back({normalized(z), i});
    w = y;
    c = *divide_exact(c, y);
  }
  return out;
}

namespace detail {

/// Determinant over Q(i) by Gaussian elimination.
inline GaussRational determinant(std::vector<std::vector<GaussRational>> m) {
  const std::size_t n = m.size();
  GaussRational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return GaussRational();
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      GaussRational factor = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= factor * m[col][k];
    }
  }
  return det;
}

/// Sylvester matrix of two univariate coefficient lists (ascending) with formal degrees.
inline std::vector<std::vector<GaussRational>> sylvester(const std::vector<GaussRational>& f,
                                                         const std::vector<GaussRational>& g) {
  const int m = static_cast<int>(f.size()) - 1;
  const int n = static_cast<int>(g.size()) - 1;
  const int size = m + n;
  std::vector<std::vector<GaussRational>> s(static_cast<std::size_t>(size),
                                            std::vector<GaussRational>(static_cast<std::size_t>(size)));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k)
      s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = f[static_cast<std::size_t>(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k)
      s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = g[static_cast<std::size_t>(n - k)];
  return s;
}

/// Newton interpolation through (x_k, y_k), exact.
inline QPoly interpolate(const std::vector<GaussRational>& xs, std::vector<GaussRational> ys) {
  const std::size_t n = xs.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t k = n - 1; k >= level; --k)
      ys[k] = (ys[k] - ys[k - 1]) / (xs[k] - xs[k - level]);
  QPoly result;
  for (std::size_t k = n; k-- > 0;)
    result = result * QPoly{-xs[k], GaussRational(1)} + QPoly::constant(ys[k]);
  return result;
}

}  // namespace detail

/// Sylvester resultant of f and g with respect to z2, a polynomial in z1.
/// Rows of f come first, so Res(z2 - z1, z2 + z1) = 2 z1.
inline QPoly resultant_z2(const BiPoly& f, const BiPoly& g) {
  const int m = f.deg_z2(), n = g.deg_z2();
  if (m < 1 && n < 1) throw DegreeError("resultant in z2 of two z2-free polynomials");
  if (f.is_zero() || g.is_zero()) return {};
  const int bound = std::max(f.deg_z1(), 0) * n + std::max(g.deg_z1(), 0) * m;
  auto fz = f.as_z2_poly(), gz = g.as_z2_poly();
  std::vector<GaussRational> xs, ys;
  for (int k = 0; k <= bound; ++k) {
    GaussRational x(static_cast<long>(k));
    std::vector<GaussRational> fv, gv;
    for (const auto& c : fz) fv.push_back(c.eval(x));
    for (const auto& c : gz) gv.push_back(c.eval(x));
    xs.push_back(x);
    ys.push_back(detail::determinant(detail::sylvester(fv, gv)));
  }
  return detail::interpolate(xs, std::move(ys));
}

/// Discriminant-type polynomial Res_z2(f, df/dz2).
inline QPoly discriminant_z2(const BiPoly& f) { return resultant_z2(f, f.derivative_z2()); }

/// f(z1 + t*z2, z2), exact.
inline BiPoly shear(const BiPoly& f, const GaussRational& t) {
  BiPoly lin = BiPoly::z1() + BiPoly::z2().scaled(t);
  std::vector<BiPoly> powers{BiPoly(1)};
  for (int k = 1; k <= f.deg_z1(); ++k) powers.push_back(powers.back() * lin);
  BiPoly out;
  for (const auto& [e, c] : f.terms())
    out += (powers[static_cast<std::size_t>(e.a)] * BiPoly::monomial(0, e.b)).scaled(c);
  return out;
}

}  // namespace nullsatz
