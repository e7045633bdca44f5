#pragma once

#include <complex>

#include "sta/polynomial.hpp"

namespace sta {

/// Closed-form oscillatory integral  int_a^b p(u) exp(-i kappa u) du.
///
/// Two exact expansions are available: repeated integration by parts, which
/// is well conditioned once |kappa| exceeds the degree scale, and the
/// Maclaurin series in kappa of the polynomial moments, which is well
/// conditioned for small |kappa|. Both are rearrangements of the same exact
/// antiderivative; the one with the smaller rounding bound is used. When the
/// sums cancel by more than about four digits (near a zero of the transform)
/// they are repeated in quad precision, so the result carries ~1e-12 relative
/// accuracy with respect to the double coefficients of p.
std::complex<double> fourier_integral(const Polynomial& p, double kappa, double a = -1.0,
                                      double b = 1.0);

namespace detail {

// Individual routes on the reference interval [-1, 1], exposed for tests.
std::complex<double> fourier_by_parts(const Polynomial& p, double kappa);
std::complex<double> fourier_by_series(const Polynomial& p, double kappa);

// The selected route evaluated in quad precision.
std::complex<double> fourier_reference(const Polynomial& p, double kappa);

// Rounding bounds (in units of machine epsilon) used to pick a route.
double by_parts_error_bound(const Polynomial& p, double kappa);
double series_error_bound(const Polynomial& p, double kappa);

}  // namespace detail

}  // namespace sta
