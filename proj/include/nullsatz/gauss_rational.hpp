#pragma once

#include <gmpxx.h>

#include <cctype>
#include <complex>
#include <ostream>
#include <string>
#include <string_view>

#include "nullsatz/errors.hpp"

namespace nullsatz {

using Rational = mpq_class;

/// Parse "num/den", "int" or a decimal such as "-1.25e-3" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t first = 0;
  while (first < s.size() && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
  s = s.substr(first);
  if (s.empty()) throw InputError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational r;
    mpz_class num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
      throw InputError("malformed rational literal '" + s + "'");
    if (den == 0) throw InputError("zero denominator in '" + s + "'");
    r = Rational(num, den);
    r.canonicalize();
    return r;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw InputError("malformed numeric literal '" + s + "'");
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw InputError("malformed numeric literal '" + s + "'");
    ++i;
    std::string exp_text = s.substr(i);
    if (exp_text.empty()) throw InputError("malformed exponent in '" + s + "'");
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw InputError("malformed exponent in '" + s + "'");
    }
    if (used != exp_text.size()) throw InputError("malformed exponent in '" + s + "'");
  }
  mpz_class num(digits, 10);
  if (negative) num = -num;
  long shift = exponent - scale;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift < 0 ? Rational(num, pow10) : Rational(num * pow10);
  r.canonicalize();
  return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(10); }

/// Element of Q(i), kept in canonical reduced form.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long re) : re_(re) {}  // NOLINT: integers promote implicitly
  GaussRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRational parse(std::string_view re, std::string_view im) {
    return {parse_rational(re), parse_rational(im)};
  }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  Rational norm2() const { return Rational(re_ * re_ + im_ * im_); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    if (o.is_zero()) throw Error("division by zero in Q(i)");
    Rational n = o.norm2();
    Rational r = (re_ * o.re_ + im_ * o.im_) / n;
    Rational i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const GaussRational& g) {
    if (sgn(g.im_) == 0) return os << g.re_.get_str();
    if (sgn(g.re_) == 0) return os << g.im_.get_str() << "*i";
    return os << "(" << g.re_.get_str() << (sgn(g.im_) > 0 ? "+" : "") << g.im_.get_str() << "*i)";
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline bool coeff_is_zero(const GaussRational& c) { return c.is_zero(); }
inline bool coeff_is_zero(const std::complex<double>& c) { return c == std::complex<double>{}; }

}  // namespace nullsatz
