#include "sta/oscillatory.hpp"

#include <quadmath.h>

#include <cmath>
#include <limits>
#include <vector>

namespace sta {

namespace {

using quad = __float128;

template <class T>
struct Route {
  std::complex<T> value;
  T magnitude = 0;  // sum of the moduli of everything that was added up
};

inline double abs_of(double x) { return std::abs(x); }
inline quad abs_of(quad x) { return fabsq(x); }
inline std::complex<double> unit_phase(double th) { return {std::cos(th), std::sin(th)}; }
inline std::complex<quad> unit_phase(quad th) { return {cosq(th), sinq(th)}; }

template <class T>
T modulus(const std::complex<T>& z) {
  return abs_of(z.real()) + abs_of(z.imag());
}

template <class T>
std::vector<T> widen(const Polynomial& p) {
  return std::vector<T>(p.coeffs().begin(), p.coeffs().end());
}

// Antiderivative of p(u) e^{cu}:  e^{cu} sum_k (-1)^k p^(k)(u) / c^(k+1),  c = -i kappa.
template <class T>
Route<T> by_parts(std::vector<T> q, T kappa) {
  const std::complex<T> c(0, -kappa);
  std::complex<T> upper = 0, lower = 0, cpow = c;
  T magnitude = 0;
  T sign = 1;
  while (!q.empty()) {
    T at_plus = 0, at_minus = 0, mag = 0;
    for (std::size_t j = q.size(); j-- > 0;) {
      at_plus += q[j];
      at_minus = -at_minus + q[j];
      mag += abs_of(q[j]);
    }
    upper += sign * at_plus / cpow;
    lower += sign * at_minus / cpow;
    magnitude += 2 * mag / modulus(cpow);
    cpow *= c;
    sign = -sign;
    // differentiate
    for (std::size_t j = 1; j < q.size(); ++j) q[j - 1] = q[j] * static_cast<T>(j);
    q.pop_back();
  }
  const std::complex<T> e = unit_phase(-kappa);
  return {e * upper - std::conj(e) * lower, magnitude};
}

// sum_m (-i kappa)^m / m! * int_{-1}^{1} u^m p(u) du
template <class T>
Route<T> by_series(const std::vector<T>& coeffs, T kappa) {
  std::complex<T> total = 0, factor = 1;  // (-i kappa)^m / m!
  T magnitude = 0, peak = 0, coeff_sum = 0;
  for (const T& c : coeffs) coeff_sum += abs_of(c);
  const double k = static_cast<double>(abs_of(kappa));
  for (int m = 0;; ++m) {
    T moment = 0, mag = 0;
    for (std::size_t j = (m % 2 == 0) ? 0 : 1; j < coeffs.size(); j += 2) {
      const T w = T(2) / static_cast<T>(static_cast<int>(j) + m + 1);
      moment += coeffs[j] * w;
      mag += abs_of(coeffs[j]) * w;
    }
    const std::complex<T> term = factor * moment;
    total += term;
    magnitude += modulus(factor) * mag;
    peak = std::max(peak, modulus(term));
    // Terms decay monotonically once m > |kappa|.
    if (m > k + 2 && modulus(factor) * 2 * coeff_sum <= T(1e-36) * std::max(peak, T(1e-300))) break;
    if (m > 600) break;
    factor *= std::complex<T>(0, -kappa / static_cast<T>(m + 1));
  }
  return {total, magnitude};
}

template <class T>
Route<T> best_route(const Polynomial& p, double kappa) {
  const bool series =
      detail::series_error_bound(p, kappa) <= detail::by_parts_error_bound(p, kappa);
  const auto c = widen<T>(p);
  return series ? by_series<T>(c, static_cast<T>(kappa)) : by_parts<T>(c, static_cast<T>(kappa));
}

double abs_coeff_sum(const Polynomial& p) {
  double s = 0.0;
  for (double c : p.coeffs()) s += std::abs(c);
  return s;
}

}  // namespace

namespace detail {

std::complex<double> fourier_by_parts(const Polynomial& p, double kappa) {
  return by_parts<double>(widen<double>(p), kappa).value;
}

std::complex<double> fourier_by_series(const Polynomial& p, double kappa) {
  return by_series<double>(widen<double>(p), kappa).value;
}

double by_parts_error_bound(const Polynomial& p, double kappa) {
  const double k = std::abs(kappa);
  if (k == 0.0) return std::numeric_limits<double>::infinity();
  double bound = 0.0, kpow = k;
  for (Polynomial q = p; !q.is_zero(); q = derivative(q)) {
    bound += abs_coeff_sum(q) / kpow;
    kpow *= k;
  }
  return bound;
}

double series_error_bound(const Polynomial& p, double kappa) {
  // Largest series term is bounded by sum|c_j| * 2 * max_m |kappa|^m / m! <= 2 sum|c_j| e^|kappa|.
  return 2.0 * abs_coeff_sum(p) * std::exp(std::abs(kappa));
}

std::complex<double> fourier_reference(const Polynomial& p, double kappa) {
  const auto r = best_route<quad>(p, kappa);
  return {static_cast<double>(r.value.real()), static_cast<double>(r.value.imag())};
}

}  // namespace detail

std::complex<double> fourier_integral(const Polynomial& p, double kappa, double a, double b) {
  if (p.is_zero() || a == b) return 0.0;
  // Map [a, b] onto [-1, 1]: u = mid + half * v.
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Polynomial q = (mid == 0.0 && half == 1.0) ? p : compose_affine(p, mid, half);
  const double lambda = kappa * half;

  std::complex<double> core;
  const auto fast = best_route<double>(q, lambda);
  // Cancellation beyond ~1e-12 relative: repeat the same sums in quad precision.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (64.0 * eps * fast.magnitude <= 1e-12 * modulus(fast.value)) {
    core = fast.value;
  } else {
    core = detail::fourier_reference(q, lambda);
  }
  return unit_phase(-kappa * mid) * half * core;
}

}  // namespace sta
