#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nullsatz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (polynomial text, ideal files, flags).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Degree of the zero polynomial requested, or a constant where a curve is required.
class DegreeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// A monomial norm table was asked for an exponent it does not cover.
class MissingNormError : public Error {
 public:
  MissingNormError(int a, int b)
      : Error("monomial norm table has no entry for exponent (" + std::to_string(a) + "," +
              std::to_string(b) + ")"),
        a_(a),
        b_(b) {}
  int a() const noexcept { return a_; }
  int b() const noexcept { return b_; }

 private:
  int a_;
  int b_;
};

/// Simultaneous iteration failed; carries the best iterate.
class RootFindError : public Error {
 public:
  RootFindError(const std::string& what, std::vector<std::complex<double>> best)
      : Error(what), best_(std::move(best)) {}
  const std::vector<std::complex<double>>& best_iterate() const noexcept { return best_; }

 private:
  std::vector<std::complex<double>> best_;
};

class TrackingError : public Error {
 public:
  using Error::Error;
};

/// The residual system of an ideal still has a common curve.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class HopfError : public Error {
 public:
  HopfError(const std::string& what, std::complex<double> a, std::complex<double> b, double best)
      : Error(what), a_(a), b_(b), best_(best) {}
  std::complex<double> a() const noexcept { return a_; }
  std::complex<double> b() const noexcept { return b_; }
  double best_min_modulus() const noexcept { return best_; }

 private:
  std::complex<double> a_;
  std::complex<double> b_;
  double best_;
};

}  // namespace nullsatz
