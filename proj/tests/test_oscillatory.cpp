#include <cmath>
#include <random>

#include "doctest.h"
#include "quadrature_oracle.hpp"
#include "sta/designer.hpp"
#include "sta/oscillatory.hpp"

using sta::Polynomial;
using cplx = std::complex<double>;

namespace {

double magnitude(const Polynomial& p) {
  double m = 0.0;
  for (double c : p.coeffs()) m += std::abs(c);
  return m;
}

cplx quadrature(const Polynomial& p, double kappa, double a = -1.0, double b = 1.0) {
  return oracle::composite_gauss(
      [&](double u) { return p(u) * std::exp(cplx(0.0, -kappa * u)); }, a, b);
}

}  // namespace

TEST_CASE("constant and zero-frequency cases") {
  const Polynomial one{1.0};
  for (double kappa : {0.3, 1.0, 7.5, 60.0}) {
    const cplx got = sta::fourier_integral(one, kappa);
    CHECK(got.real() == doctest::Approx(2.0 * std::sin(kappa) / kappa).epsilon(1e-14));
    CHECK(std::abs(got.imag()) <= 1e-15);
  }
  const Polynomial p{1.0, -2.0, 0.5, 3.0};
  const cplx at_zero = sta::fourier_integral(p, 0.0);
  CHECK(at_zero.real() == doctest::Approx(sta::definite_integral(p, -1.0, 1.0)).epsilon(1e-15));
  CHECK(at_zero.imag() == 0.0);
  CHECK(sta::fourier_integral(Polynomial{}, 3.0) == cplx(0.0, 0.0));
}

TEST_CASE("closed form matches brute-force quadrature") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(0, 40);
  std::uniform_real_distribution<double> logk(-3.0, std::log10(150.0));

  for (int trial = 0; trial < 150; ++trial) {
    std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : c) v = coef(rng);
    const Polynomial p(c);
    const double kappa = std::pow(10.0, logk(rng)) * (trial % 2 ? 1.0 : -1.0);
    const cplx want = quadrature(p, kappa);
    const cplx got = sta::fourier_integral(p, kappa);
    CHECK(std::abs(got - want) <= 1e-12 * magnitude(p));
  }
}

TEST_CASE("the two routes agree where both are well conditioned") {
  const auto g = sta::in_centered_time(sta::polynomial_shape(2));
  for (double kappa : {2.0, 4.0, 6.0, 9.0}) {
    const cplx a = sta::detail::fourier_by_parts(g, kappa);
    const cplx b = sta::detail::fourier_by_series(g, kappa);
    CHECK(std::abs(a - b) <= 1e-13 * magnitude(g) * 1e3);
  }
}

TEST_CASE("route selection prefers the smaller bound") {
  const auto g = sta::in_centered_time(sta::polynomial_shape(3));
  CHECK(sta::detail::series_error_bound(g, 0.05) < sta::detail::by_parts_error_bound(g, 0.05));
  CHECK(sta::detail::by_parts_error_bound(g, 80.0) < sta::detail::series_error_bound(g, 80.0));
}

TEST_CASE("shape transform at small and large frequency") {
  for (int n = 1; n <= sta::kMaxProtocolOrder; ++n) {
    const auto g = sta::in_centered_time(sta::polynomial_shape(n));
    for (double kappa : {1e-4, 0.05, 0.8, 3.0, 12.0, 45.0, 140.0}) {
      const cplx want = quadrature(g, kappa);
      const cplx got = sta::fourier_integral(g, kappa);
      CHECK(std::abs(got - want) <= 1e-13 * magnitude(g));
    }
  }
}

TEST_CASE("general interval") {
  const Polynomial p{0.5, -1.0, 2.0, 0.25, -0.75};
  for (double kappa : {0.0, 0.4, 3.3, 25.0}) {
    const cplx want = quadrature(p, kappa, 0.0, 7.0);
    const cplx got = sta::fourier_integral(p, kappa, 0.0, 7.0);
    CHECK(std::abs(got - want) <= 1e-12 * std::abs(want) + 1e-12);
  }
}

TEST_CASE("relative accuracy next to a transform zero") {
  // q and q' vanish at +-1, so the transform of q'' + k0^2 q is (k0^2 - k^2) times that of q.
  const sta::Polynomial q = sta::power(sta::Polynomial{1.0, 0.0, -1.0}, 4);
  const double k0 = 3.0;
  const sta::Polynomial p = sta::derivative(q, 2) + q * (k0 * k0);
  for (double rel : {1e-2, 1e-4, 1e-6, 1e-8, -1e-5}) {
    const double k = k0 * (1.0 + rel);
    const auto want = (k0 - k) * (k0 + k) * sta::fourier_integral(q, k);
    const auto got = sta::fourier_integral(p, k);
    CHECK(std::abs(got - want) <= 1e-11 * std::abs(want));
  }
  CHECK(std::abs(sta::fourier_integral(p, k0)) <= 1e-15);
}
