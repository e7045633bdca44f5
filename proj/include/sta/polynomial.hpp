#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sta {

/// Dense real polynomial, coefficients in ascending powers of its variable.
///
/// The representation is canonical: trailing zero coefficients are dropped,
/// so the zero polynomial has no coefficients and degree() == -1. All calculus
/// is done in coefficient space; nothing is sampled.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs);
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial monomial(int power, double coefficient = 1.0);

  std::span<const double> coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of x^k, zero beyond the degree.
  double operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

  /// Horner evaluation.
  double operator()(double x) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double scale);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  void trim();

  std::vector<double> coeffs_;
};

double eval(const Polynomial& p, double x);

/// Exact k-th derivative; the zero polynomial once k exceeds the degree.
Polynomial derivative(const Polynomial& p, int k = 1);

/// Antiderivative that vanishes at `anchor`.
Polynomial antiderivative(const Polynomial& p, double anchor = 0.0);

/// Exact integral of p over [a, b].
double definite_integral(const Polynomial& p, double a, double b);

/// q(y) = p(shift + scale * y), expanded in powers of y.
Polynomial compose_affine(const Polynomial& p, double shift, double scale);

/// p^n by repeated multiplication.
Polynomial power(const Polynomial& p, int n);

/// Elementary symmetric polynomials P_0..P_N of the squared frequencies.
///
/// prod_i (X + w_i^2) = sum_j P_j X^(N-j); P_0 = 1 and P_N = prod w_i^2.
class SymmetricCoefficients {
 public:
  SymmetricCoefficients() = default;
  explicit SymmetricCoefficients(std::vector<double> values) : values_(std::move(values)) {}

  int order() const { return static_cast<int>(values_.size()) - 1; }
  double operator[](std::size_t j) const { return values_.at(j); }
  std::span<const double> values() const { return values_; }

  /// prod_i (w_i^2 - x2) evaluated through the P_j expansion.
  double product_at(double x2) const;

  friend bool operator==(const SymmetricCoefficients&, const SymmetricCoefficients&) = default;

 private:
  std::vector<double> values_;
};

/// Throws InvalidSpec on an empty list or a non-positive frequency.
SymmetricCoefficients symmetric_coefficients(std::span<const double> frequencies);

}  // namespace sta
