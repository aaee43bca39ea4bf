#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "nullsatz/errors.hpp"
#include "nullsatz/gauss_rational.hpp"
#include "nullsatz/unipoly.hpp"

namespace nullsatz {

using Complex = std::complex<double>;

/// A point of C^2.
struct Point2 {
  Complex z1;
  Complex z2;
};

/// Exponent pair of z1^a z2^b. Ordered lexicographically with z2 first, so the
/// last element of an ordered term map is the leading term.
struct Exponent {
  int a = 0;
  int b = 0;
  friend bool operator<(const Exponent& x, const Exponent& y) {
    return x.b != y.b ? x.b < y.b : x.a < y.a;
  }
  friend bool operator==(const Exponent& x, const Exponent& y) { return x.a == y.a && x.b == y.b; }
};

/// Exact sparse bivariate polynomial over Q(i). No zero coefficient is ever stored.
class BiPoly {
 public:
  using TermMap = std::map<Exponent, GaussRational>;

  BiPoly() = default;
  BiPoly(const GaussRational& c) { add_term(0, 0, c); }  // NOLINT
  BiPoly(long c) { add_term(0, 0, GaussRational(c)); }   // NOLINT

  static BiPoly z1() { return monomial(1, 0); }
  static BiPoly z2() { return monomial(0, 1); }
  static BiPoly monomial(int a, int b, const GaussRational& c = GaussRational(1)) {
    BiPoly p;
    p.add_term(a, b, c);
    return p;
  }

  void add_term(int a, int b, const GaussRational& c) {
    if (a < 0 || b < 0) throw InputError("negative exponent");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(Exponent{a, b}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const TermMap& terms() const noexcept { return terms_; }
  GaussRational coeff(int a, int b) const {
    auto it = terms_.find(Exponent{a, b});
    return it == terms_.end() ? GaussRational() : it->second;
  }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0});
  }

  /// Degree in z1; -1 for the zero polynomial.
  int deg_z1() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.a);
    return d;
  }
  int deg_z2() const { return terms_.empty() ? -1 : terms_.rbegin()->first.b; }
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.a + e.b);
    return d;
  }

  /// Leading term in the lexicographic order (z2 before z1).
  std::pair<Exponent, GaussRational> leading_term() const {
    if (terms_.empty()) throw DegreeError("leading term of the zero polynomial");
    return *terms_.rbegin();
  }

  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e.a, e.b, c);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e.a, e.b, -c);
    return *this;
  }
  friend BiPoly operator+(BiPoly f, const BiPoly& g) { return f += g; }
  friend BiPoly operator-(BiPoly f, const BiPoly& g) { return f -= g; }
  friend BiPoly operator-(const BiPoly& f) {
    BiPoly r;
    for (const auto& [e, c] : f.terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend BiPoly operator*(const BiPoly& f, const BiPoly& g) {
    BiPoly r;
    for (const auto& [e1, c1] : f.terms_)
      for (const auto& [e2, c2] : g.terms_) r.add_term(e1.a + e2.a, e1.b + e2.b, c1 * c2);
    return r;
  }
  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
  friend bool operator==(const BiPoly& f, const BiPoly& g) { return f.terms_ == g.terms_; }
  friend bool operator!=(const BiPoly& f, const BiPoly& g) { return !(f == g); }

  BiPoly pow(int k) const {
    BiPoly r(1);
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
  }

  BiPoly scaled(const GaussRational& s) const {
    BiPoly r;
    for (const auto& [e, c] : terms_) r.add_term(e.a, e.b, s * c);
    return r;
  }

  GaussRational eval(const GaussRational& x1, const GaussRational& x2) const {
    GaussRational acc;
    for (int b = deg_z2(); b >= 0; --b) acc = acc * x2 + coeff_in_z2(b).eval(x1);
    return acc;
  }

  /// Floating evaluation, Horner in z1 inside Horner in z2.
  Complex eval(Complex x1, Complex x2) const {
    Complex acc{};
    auto it = terms_.rbegin();
    for (int b = deg_z2(); b >= 0; --b) {
      Complex inner{};
      int a_prev = -1;
      for (; it != terms_.rend() && it->first.b == b; ++it) {
        int a = it->first.a;
        if (a_prev >= 0) inner *= std::pow(x1, a_prev - a);
        inner += it->second.to_complex();
        a_prev = a;
      }
      if (a_prev > 0) inner *= std::pow(x1, a_prev);
      acc = acc * x2 + inner;
    }
    return acc;
  }

  BiPoly derivative_z1() const {
    BiPoly r;
    for (const auto& [e, c] : terms_)
      if (e.a > 0) r.add_term(e.a - 1, e.b, GaussRational(static_cast<long>(e.a)) * c);
    return r;
  }
  BiPoly derivative_z2() const {
    BiPoly r;
    for (const auto& [e, c] : terms_)
      if (e.b > 0) r.add_term(e.a, e.b - 1, GaussRational(static_cast<long>(e.b)) * c);
    return r;
  }

  /// f(z2, z1).
  BiPoly swapped() const {
    BiPoly r;
    for (const auto& [e, c] : terms_) r.add_term(e.b, e.a, c);
    return r;
  }

  /// Coefficient of z2^b as a polynomial in z1.
  QPoly coeff_in_z2(int b) const {
    std::vector<GaussRational> v;
    for (const auto& [e, c] : terms_) {
      if (e.b != b) continue;
      if (static_cast<int>(v.size()) <= e.a) v.resize(static_cast<std::size_t>(e.a) + 1);
      v[static_cast<std::size_t>(e.a)] = c;
    }
    return QPoly(std::move(v));
  }

  /// View as a polynomial in z2 with coefficients in Q(i)[z1].
  std::vector<QPoly> as_z2_poly() const {
    std::vector<QPoly> out(static_cast<std::size_t>(std::max(deg_z2() + 1, 0)));
    for (int b = 0; b <= deg_z2(); ++b) out[static_cast<std::size_t>(b)] = coeff_in_z2(b);
    return out;
  }
  static BiPoly from_z2_poly(const std::vector<QPoly>& coeffs) {
    BiPoly r;
    for (std::size_t b = 0; b < coeffs.size(); ++b)
      for (int a = 0; a <= coeffs[b].degree(); ++a)
        r.add_term(a, static_cast<int>(b), coeffs[b][a]);
    return r;
  }
  static BiPoly from_z1_poly(const QPoly& p) { return from_z2_poly({p}); }

  friend std::ostream& operator<<(std::ostream& os, const BiPoly& f) {
    if (f.is_zero()) return os << "0";
    bool first = true;
    for (auto it = f.terms_.rbegin(); it != f.terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << it->second;
      if (it->first.a) os << "*z1^" << it->first.a;
      if (it->first.b) os << "*z2^" << it->first.b;
    }
    return os;
  }

 private:
  TermMap terms_;
};

/// d(f): the sum of the degrees of f in each variable.
inline int total_d(const BiPoly& f) {
  if (f.is_zero()) throw DegreeError("d(f) is undefined for the zero polynomial");
  return f.deg_z1() + f.deg_z2();
}

/// Dense floating-point bivariate polynomial, c(a, b) is the coefficient of z1^a z2^b.
class CBiPoly {
 public:
  CBiPoly() = default;
  CBiPoly(int deg1, int deg2)
      : n1_(deg1 + 1), n2_(deg2 + 1), c_(static_cast<std::size_t>(n1_ * n2_)) {}

  explicit CBiPoly(const BiPoly& f) : CBiPoly(std::max(f.deg_z1(), 0), std::max(f.deg_z2(), 0)) {
    for (const auto& [e, c] : f.terms()) at(e.a, e.b) = c.to_complex();
  }

  int rows() const noexcept { return n1_; }
  int cols() const noexcept { return n2_; }
  Complex& at(int a, int b) { return c_[static_cast<std::size_t>(a * n2_ + b)]; }
  Complex at(int a, int b) const {
    return a < n1_ && b < n2_ && a >= 0 && b >= 0 ? c_[static_cast<std::size_t>(a * n2_ + b)]
                                                  : Complex{};
  }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Complex& c) { return c == Complex{}; });
  }

  int deg_z1() const {
    for (int a = n1_ - 1; a >= 0; --a)
      for (int b = 0; b < n2_; ++b)
        if (at(a, b) != Complex{}) return a;
    return -1;
  }
  int deg_z2() const {
    for (int b = n2_ - 1; b >= 0; --b)
      for (int a = 0; a < n1_; ++a)
        if (at(a, b) != Complex{}) return b;
    return -1;
  }
  double max_abs() const {
    double m = 0;
    for (const auto& c : c_) m = std::max(m, std::abs(c));
    return m;
  }

  Complex eval(Complex x1, Complex x2) const {
    Complex acc{};
    for (int a = n1_ - 1; a >= 0; --a) {
      Complex inner{};
      for (int b = n2_ - 1; b >= 0; --b) inner = inner * x2 + at(a, b);
      acc = acc * x1 + inner;
    }
    return acc;
  }
  Complex eval(const Point2& p) const { return eval(p.z1, p.z2); }

  /// Coefficients in z2 of f(x1, .), ascending.
  std::vector<Complex> slice_z1(Complex x1) const {
    std::vector<Complex> out(static_cast<std::size_t>(n2_));
    for (int b = 0; b < n2_; ++b) {
      Complex acc{};
      for (int a = n1_ - 1; a >= 0; --a) acc = acc * x1 + at(a, b);
      out[static_cast<std::size_t>(b)] = acc;
    }
    return out;
  }

  CBiPoly derivative_z2() const {
    CBiPoly d(n1_ - 1, std::max(n2_ - 2, 0));
    for (int a = 0; a < n1_; ++a)
      for (int b = 1; b < n2_; ++b) d.at(a, b - 1) = static_cast<double>(b) * at(a, b);
    return d;
  }
  CBiPoly derivative_z1() const {
    CBiPoly d(std::max(n1_ - 2, 0), n2_ - 1);
    for (int a = 1; a < n1_; ++a)
      for (int b = 0; b < n2_; ++b) d.at(a - 1, b) = static_cast<double>(a) * at(a, b);
    return d;
  }

  friend CBiPoly operator*(const CBiPoly& f, const CBiPoly& g) {
    CBiPoly r(f.n1_ + g.n1_ - 2, f.n2_ + g.n2_ - 2);
    for (int a = 0; a < f.n1_; ++a)
      for (int b = 0; b < f.n2_; ++b) {
        Complex c = f.at(a, b);
        if (c == Complex{}) continue;
        for (int x = 0; x < g.n1_; ++x)
          for (int y = 0; y < g.n2_; ++y) r.at(a + x, b + y) += c * g.at(x, y);
      }
    return r;
  }
  friend CBiPoly operator*(Complex s, CBiPoly f) {
    for (auto& c : f.c_) c *= s;
    return f;
  }
  friend CBiPoly operator+(const CBiPoly& f, const CBiPoly& g) {
    CBiPoly r(std::max(f.n1_, g.n1_) - 1, std::max(f.n2_, g.n2_) - 1);
    for (int a = 0; a < r.n1_; ++a)
      for (int b = 0; b < r.n2_; ++b) r.at(a, b) = f.at(a, b) + g.at(a, b);
    return r;
  }

  /// f(m00*w1 + m01*w2, m10*w1 + m11*w2).
  CBiPoly compose_linear(Complex m00, Complex m01, Complex m10, Complex m11) const {
    int d = n1_ + n2_ - 2;
    CBiPoly l1(1, 1), l2(1, 1);
    l1.at(1, 0) = m00;
    l1.at(0, 1) = m01;
    l2.at(1, 0) = m10;
    l2.at(0, 1) = m11;
    std::vector<CBiPoly> p1{CBiPoly(0, 0)}, p2{CBiPoly(0, 0)};
    p1[0].at(0, 0) = 1;
    p2[0].at(0, 0) = 1;
    for (int k = 1; k < n1_; ++k) p1.push_back(p1.back() * l1);
    for (int k = 1; k < n2_; ++k) p2.push_back(p2.back() * l2);
    CBiPoly r(d, d);
    for (int a = 0; a < n1_; ++a)
      for (int b = 0; b < n2_; ++b) {
        Complex c = at(a, b);
        if (c == Complex{}) continue;
        CBiPoly t = p1[static_cast<std::size_t>(a)] * p2[static_cast<std::size_t>(b)];
        for (int x = 0; x < t.n1_; ++x)
          for (int y = 0; y < t.n2_; ++y) r.at(x, y) += c * t.at(x, y);
      }
    return r.trimmed();
  }

  /// Zero every coefficient below rel * max|c| and shrink to the true degrees.
  CBiPoly cleaned(double rel) const {
    CBiPoly r = *this;
    double cut = rel * max_abs();
    for (auto& c : r.c_) {
      if (std::abs(c.real()) <= cut) c.real(0);
      if (std::abs(c.imag()) <= cut) c.imag(0);
    }
    return r.trimmed();
  }

  CBiPoly trimmed() const {
    int d1 = std::max(deg_z1(), 0), d2 = std::max(deg_z2(), 0);
    CBiPoly r(d1, d2);
    for (int a = 0; a <= d1; ++a)
      for (int b = 0; b <= d2; ++b) r.at(a, b) = at(a, b);
    return r;
  }

  CBiPoly swapped() const {
    CBiPoly r(n2_ - 1, n1_ - 1);
    for (int a = 0; a < n1_; ++a)
      for (int b = 0; b < n2_; ++b) r.at(b, a) = at(a, b);
    return r;
  }

 private:
  int n1_ = 1;
  int n2_ = 1;
  std::vector<Complex> c_ = std::vector<Complex>(1);
};

}  // namespace nullsatz
