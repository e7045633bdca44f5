#pragma once

#include <functional>
#include <vector>

#include "sta/polynomial.hpp"
#include "sta/units.hpp"

namespace sta {

/// Largest supported number of design frequencies. Beyond this the degree-33
/// shape loses too much to coefficient cancellation in double precision.
inline constexpr int kMaxProtocolOrder = 8;

/// Design input. Values are dimensionless (see UnitMode); `units` only
/// records how results should be reported.
struct TransportSpec {
  double distance = 0.0;            // d, in a_ref
  double duration = 1.0;            // t_f, in 1/omega_ref
  std::vector<double> frequencies;  // omega_i, in omega_ref
  UnitMode units{};

  int order() const { return static_cast<int>(frequencies.size()); }

  /// Throws InvalidSpec unless t_f > 0, 1 <= N <= kMaxProtocolOrder and all omega_i > 0.
  void validate() const;
};

/// Normalized shape g~(s) on s = t/t_f in [0, 1] for a protocol of order N.
///
/// A shape must vanish at both ends together with its first 2N-1
/// derivatives, integrate to zero over [0, 1], and have a non-zero
/// normalization integral int_0^1 (1 - s) g~(s) ds.
using ShapeFamily = std::function<Polynomial(int order)>;

/// s^(2N) (1 - s)^(2N) (1 - 2s), expanded with integer coefficients.
Polynomial polynomial_shape(int order);

/// g(t) = norm * g~(t / t_f).
struct AuxiliaryFunction {
  int order = 0;
  Polynomial shape;           // g~ in s = t/t_f
  Polynomial shape_centered;  // the same function in u = 2s - 1
  double delta = 0.0;         // int_0^1 (1 - s) g~(s) ds
  double norm = 0.0;          // d / (P_N t_f^2 delta)
};

/// Trap trajectory x0(t) with its first two derivatives.
///
/// The polynomials are expanded in the centered time u = 2 t / t_f - 1, which
/// keeps the coefficients well scaled up to N = kMaxProtocolOrder. Use
/// in_normalized_time() for the s = t / t_f expansion.
struct TransportProtocol {
  TransportSpec spec;
  AuxiliaryFunction aux;
  SymmetricCoefficients pj;
  Polynomial x0;
  Polynomial v0;
  Polynomial a0;
  /// Rounding remainder of a0: a0 + a0_tail is the acceleration to quad
  /// precision. Only the spectrum uses it, where ~eps relative errors in the
  /// coefficients would otherwise swamp values near the designed zeros.
  Polynomial a0_tail;

  double centered_time(double t) const { return 2.0 * t / spec.duration - 1.0; }
  double position(double t) const { return x0(centered_time(t)); }
  double velocity(double t) const { return v0(centered_time(t)); }
  double acceleration(double t) const { return a0(centered_time(t)); }
};

/// Re-expands a centered-time polynomial in s = (u + 1) / 2.
Polynomial in_normalized_time(const Polynomial& centered);
/// Inverse of in_normalized_time.
Polynomial in_centered_time(const Polynomial& normalized);

AuxiliaryFunction make_auxiliary(const TransportSpec& spec,
                                 const ShapeFamily& family = polynomial_shape);

/// x0''(t) = sum_j P_j g^(2N-2j)(t), returned in centered time.
Polynomial build_acceleration(const AuxiliaryFunction& aux, const SymmetricCoefficients& pj,
                              double duration);

/// Full protocol. Endpoint conditions are verified, not imposed; a violation
/// beyond 1e-9 max(|d|, sum |c_k|, 1), with c_k the coefficients of x0,
/// raises InternalConsistency.
///
/// The monomial expansion loses accuracy as the smallest omega_i t_f drops
/// and the trajectory overshoots. For N <= 4 and every omega_i t_f in
/// [2 pi * 1.25, 2 pi * 10] the endpoints hold to 1e-10 |d|.
TransportProtocol build_trajectory(const TransportSpec& spec,
                                   const ShapeFamily& family = polynomial_shape);

struct BoundaryResidual {
  int k = 0;
  double at_start = 0.0;  // norm * d^k g~/ds^k at s = 0
  double at_end = 0.0;    // norm * d^k g~/ds^k at s = 1
};

struct BoundaryReport {
  int order = 0;
  double norm = 0.0;
  std::vector<BoundaryResidual> residuals;  // k = 0 .. max_order

  /// True when every required residual (k < 2N) is exactly zero.
  bool required_orders_vanish() const;
};

/// Residuals of the shape's derivatives at both ends, straight from the
/// integer coefficients. max_order < 0 means 2N - 1.
BoundaryReport verify_boundary_conditions(const AuxiliaryFunction& aux, int max_order = -1);

}  // namespace sta
