#include "sta/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sta/errors.hpp"

namespace sta {

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(int power, double coefficient) {
  std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
  c.back() = coefficient;
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double scale) {
  for (double& c : coeffs_) c *= scale;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

double eval(const Polynomial& p, double x) { return p(x); }

Polynomial derivative(const Polynomial& p, int k) {
  if (k < 0) throw InvalidArgument("derivative order must be non-negative");
  auto c = p.coeffs();
  if (k > p.degree()) return {};
  std::vector<double> out(c.size() - static_cast<std::size_t>(k));
  for (std::size_t j = 0; j < out.size(); ++j) {
    // falling factorial (j+k)!/j!
    double factor = 1.0;
    for (int m = 1; m <= k; ++m) factor *= static_cast<double>(j + static_cast<std::size_t>(m));
    out[j] = c[j + static_cast<std::size_t>(k)] * factor;
  }
  return Polynomial(std::move(out));
}

Polynomial antiderivative(const Polynomial& p, double anchor) {
  auto c = p.coeffs();
  std::vector<double> out(c.size() + 1, 0.0);
  for (std::size_t j = 0; j < c.size(); ++j) out[j + 1] = c[j] / static_cast<double>(j + 1);
  Polynomial q(std::move(out));
  if (anchor != 0.0) q -= Polynomial{q(anchor)};
  return q;
}

double definite_integral(const Polynomial& p, double a, double b) {
  const Polynomial q = antiderivative(p);
  return q(b) - q(a);
}

Polynomial compose_affine(const Polynomial& p, double shift, double scale) {
  const Polynomial linear{shift, scale};
  Polynomial acc;
  auto c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * linear + Polynomial{*it};
  return acc;
}

Polynomial power(const Polynomial& p, int n) {
  if (n < 0) throw InvalidArgument("negative polynomial power");
  Polynomial acc{1.0};
  for (int i = 0; i < n; ++i) acc = acc * p;
  return acc;
}

double SymmetricCoefficients::product_at(double x2) const {
  double acc = 0.0;
  for (double pj : values_) acc = acc * (-x2) + pj;
  return acc;
}

SymmetricCoefficients symmetric_coefficients(std::span<const double> frequencies) {
  if (frequencies.empty()) throw InvalidSpec("frequency list is empty");
  std::vector<double> pj{1.0};
  for (double w : frequencies) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw InvalidSpec("trap frequencies must be finite and positive, got " + std::to_string(w));
    const double w2 = w * w;
    pj.push_back(0.0);
    for (std::size_t j = pj.size() - 1; j >= 1; --j) pj[j] += w2 * pj[j - 1];
  }
  return SymmetricCoefficients(std::move(pj));
}

}  // namespace sta
