#pragma once

#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

#include "nullsatz/errors.hpp"
#include "nullsatz/gauss_rational.hpp"

namespace nullsatz {

/// Dense univariate polynomial, coefficient index = power.
/// The zero polynomial has no coefficients and degree -1.
template <class C>
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(std::initializer_list<C> coeffs) : c_(coeffs) { trim(); }
  explicit UniPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly constant(C c) { return UniPoly(std::vector<C>{std::move(c)}); }
  /// x^k
  static UniPoly monomial(int k, C c = C(1)) {
    std::vector<C> v(static_cast<std::size_t>(k) + 1, C(0));
    v.back() = std::move(c);
    return UniPoly(std::move(v));
  }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  const std::vector<C>& coeffs() const noexcept { return c_; }
  const C& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  C coeff(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : C(0);
  }
  const C& leading() const { return c_.back(); }

  template <class T>
  T eval(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<C> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = C(static_cast<long>(k)) * c_[k];
    return UniPoly(std::move(d));
  }

  UniPoly monic() const {
    if (is_zero()) return {};
    C lc = leading();
    std::vector<C> v(c_);
    for (auto& x : v) x = x / lc;
    return UniPoly(std::move(v));
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(const UniPoly& a) {
    std::vector<C> v(a.c_);
    for (auto& x : v) x = -x;
    return UniPoly(std::move(v));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> v(a.c_.size() + b.c_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(v));
  }
  friend UniPoly operator*(const C& s, const UniPoly& a) {
    std::vector<C> v(a.c_);
    for (auto& x : v) x = s * x;
    return UniPoly(std::move(v));
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  /// Euclidean division over a field: *this = q*d + r with deg r < deg d.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw Error("polynomial division by zero");
    std::vector<C> r(c_);
    int dd = d.degree();
    int dr = degree();
    if (dr < dd) return {UniPoly{}, *this};
    std::vector<C> q(static_cast<std::size_t>(dr - dd + 1), C(0));
    const C& lc = d.leading();
    for (int k = dr; k >= dd; --k) {
      C factor = r[static_cast<std::size_t>(k)] / lc;
      q[static_cast<std::size_t>(k - dd)] = factor;
      if (coeff_is_zero(factor)) continue;
      for (int j = 0; j <= dd; ++j)
        r[static_cast<std::size_t>(k - dd + j)] -= factor * d.c_[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(dd));
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
  }

 private:
  void trim() {
    while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
  }
  std::vector<C> c_;
};

using QPoly = UniPoly<GaussRational>;
using CPoly = UniPoly<std::complex<double>>;

/// Monic gcd over Q(i); gcd(0, 0) = 0.
inline QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Exact quotient; throws if d does not divide p.
inline QPoly exact_quotient(const QPoly& p, const QPoly& d) {
  auto [q, r] = p.divmod(d);
  if (!r.is_zero()) throw Error("inexact univariate division");
  return q;
}

/// p / gcd(p, p'): the product of the distinct irreducible factors, monic.
inline QPoly squarefree_part(const QPoly& p) {
  if (p.degree() <= 0) return p.monic();
  return exact_quotient(p, gcd(p, p.derivative())).monic();
}

inline CPoly to_numeric(const QPoly& p) {
  std::vector<std::complex<double>> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(c.to_complex());
  return CPoly(std::move(v));
}

}  // namespace nullsatz
