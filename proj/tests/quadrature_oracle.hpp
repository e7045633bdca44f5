#pragma once

// Brute-force oscillatory quadrature used as an independent check on the
// closed-form transforms.

#include <boost/math/quadrature/gauss.hpp>
#include <complex>

namespace oracle {

/// Composite 16-point Gauss-Legendre of f over [a, b] with `panels` panels.
template <class F>
std::complex<double> composite_gauss(F f, double a, double b, int panels = 128) {
  using boost::math::quadrature::gauss;
  std::complex<double> acc = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h, hi = lo + h;
    const double re = gauss<double, 16>::integrate([&](double x) { return f(x).real(); }, lo, hi);
    const double im = gauss<double, 16>::integrate([&](double x) { return f(x).imag(); }, lo, hi);
    acc += std::complex<double>(re, im);
  }
  return acc;
}

}  // namespace oracle
