#include "sta/designer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>
#include <utility>

#include "sta/errors.hpp"

namespace sta {

namespace {

using quad = __float128;

// x0'' = norm sum_j P_j (2/t_f)^k g~^(k)(u), k = 2N - 2j, carried in quad
// precision and split into double-rounded coefficients plus their remainder.
std::pair<Polynomial, Polynomial> acceleration_split(const AuxiliaryFunction& aux,
                                                     const TransportSpec& spec) {
  std::vector<quad> pj{1};
  for (double w : spec.frequencies) {
    const quad w2 = static_cast<quad>(w) * w;
    pj.push_back(0);
    for (std::size_t j = pj.size() - 1; j >= 1; --j) pj[j] += w2 * pj[j - 1];
  }
  const auto& g = aux.shape_centered.coeffs();
  // (1/4) int_{-1}^{1} (1 - u) g~(u) du
  quad delta = 0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const quad moment = (j % 2 == 0) ? quad(2) / static_cast<quad>(j + 1) : quad(-2) / static_cast<quad>(j + 2);
    delta += static_cast<quad>(g[j]) * moment;
  }
  delta /= 4;
  const quad tf = spec.duration;
  const quad norm = static_cast<quad>(spec.distance) / (pj.back() * tf * tf * delta);

  const int n = aux.order;
  std::vector<quad> accel(g.size(), quad(0));
  for (int j = 0; j <= n; ++j) {
    const int k = 2 * n - 2 * j;
    quad factor = norm * pj[static_cast<std::size_t>(j)];
    for (int i = 0; i < k; ++i) factor *= quad(2) / tf;
    for (std::size_t m = static_cast<std::size_t>(k); m < g.size(); ++m) {
      quad falling = 1;
      for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) falling *= static_cast<quad>(m - i);
      accel[m - static_cast<std::size_t>(k)] += factor * falling * static_cast<quad>(g[m]);
    }
  }
  std::vector<double> hi(accel.size()), lo(accel.size());
  for (std::size_t m = 0; m < accel.size(); ++m) {
    hi[m] = static_cast<double>(accel[m]);
    lo[m] = static_cast<double>(accel[m] - static_cast<quad>(hi[m]));
  }
  return {Polynomial(std::move(hi)), Polynomial(std::move(lo))};
}

}  // namespace

void TransportSpec::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration))
    throw InvalidSpec("transport duration must be positive");
  if (!std::isfinite(distance)) throw InvalidSpec("transport distance must be finite");
  if (frequencies.empty()) throw InvalidSpec("at least one design frequency is required");
  if (order() > kMaxProtocolOrder) {
    std::ostringstream msg;
    msg << "protocol order " << order() << " exceeds the supported maximum " << kMaxProtocolOrder;
    throw InvalidSpec(msg.str());
  }
  for (double w : frequencies)
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidSpec("design frequencies must be positive");
  units.validate();
}

Polynomial polynomial_shape(int order) {
  const Polynomial s{0.0, 1.0};
  const Polynomial one_minus_s{1.0, -1.0};
  return power(s, 2 * order) * power(one_minus_s, 2 * order) * Polynomial{1.0, -2.0};
}

Polynomial in_normalized_time(const Polynomial& centered) {
  return compose_affine(centered, -1.0, 2.0);
}

Polynomial in_centered_time(const Polynomial& normalized) {
  return compose_affine(normalized, 0.5, 0.5);
}

AuxiliaryFunction make_auxiliary(const TransportSpec& spec, const ShapeFamily& family) {
  spec.validate();
  AuxiliaryFunction aux;
  aux.order = spec.order();
  aux.shape = family(aux.order);
  // Dyadic affine map: exact for integer-coefficient shapes.
  aux.shape_centered = in_centered_time(aux.shape);

  // int_0^1 (1-s) g~ ds = 1/4 int_{-1}^{1} (1-u) g~(u) du
  aux.delta = 0.25 * definite_integral(Polynomial{1.0, -1.0} * aux.shape_centered, -1.0, 1.0);
  if (aux.delta == 0.0 || !std::isfinite(aux.delta))
    throw DegenerateShape("shape has a vanishing normalization integral");

  double scale = 0.0;
  for (double c : aux.shape_centered.coeffs()) scale = std::max(scale, std::abs(c));
  const double mean = definite_integral(aux.shape_centered, -1.0, 1.0);
  if (std::abs(mean) > 1e-12 * scale) throw DegenerateShape("shape does not integrate to zero");

  const auto pj = symmetric_coefficients(spec.frequencies);
  aux.norm = spec.distance / (pj[static_cast<std::size_t>(aux.order)] * spec.duration *
                              spec.duration * aux.delta);
  return aux;
}

Polynomial build_acceleration(const AuxiliaryFunction& aux, const SymmetricCoefficients& pj,
                              double duration) {
  const int n = aux.order;
  if (pj.order() != n) {
    std::ostringstream msg;
    msg << "symmetric coefficients of order " << pj.order() << " do not match shape order " << n;
    throw InvalidSpec(msg.str());
  }
  if (!(duration > 0.0)) throw InvalidSpec("transport duration must be positive");
  if (aux.norm == 0.0) return {};

  // d/dt = (2 / t_f) d/du
  const double rate = 2.0 / duration;
  Polynomial accel;
  for (int j = 0; j <= n; ++j) {
    const int k = 2 * n - 2 * j;
    accel += derivative(aux.shape_centered, k) *
             (aux.norm * pj[static_cast<std::size_t>(j)] * std::pow(rate, k));
  }
  return accel;
}

TransportProtocol build_trajectory(const TransportSpec& spec, const ShapeFamily& family) {
  TransportProtocol p;
  p.spec = spec;
  p.aux = make_auxiliary(spec, family);
  p.pj = symmetric_coefficients(spec.frequencies);
  if (p.aux.norm != 0.0) std::tie(p.a0, p.a0_tail) = acceleration_split(p.aux, spec);

  const double half = 0.5 * spec.duration;  // dt = (t_f / 2) du
  p.v0 = antiderivative(p.a0, -1.0) * half;
  p.x0 = antiderivative(p.v0, -1.0) * half;

  // Rounding in the monomial expansion scales with the coefficient magnitude,
  // which exceeds |d| when omega_i t_f is small and the trajectory overshoots.
  double coeff_scale = 0.0;
  for (double c : p.x0.coeffs()) coeff_scale += std::abs(c);
  const double tol = 1e-9 * std::max({std::abs(spec.distance), coeff_scale, 1.0});
  const double end_pos = p.x0(1.0) - spec.distance;
  const double end_vel = p.v0(1.0) * spec.duration;
  if (!(std::abs(end_pos) <= tol) || !(std::abs(end_vel) <= tol)) {
    std::ostringstream msg;
    msg << "trajectory misses its endpoint conditions (x0(t_f) - d = " << end_pos
        << ", t_f v0(t_f) = " << end_vel << "); order " << spec.order() << " is too high";
    throw InternalConsistency(msg.str());
  }
  return p;
}

bool BoundaryReport::required_orders_vanish() const {
  for (const auto& r : residuals)
    if (r.k < 2 * order && (r.at_start != 0.0 || r.at_end != 0.0)) return false;
  return true;
}

BoundaryReport verify_boundary_conditions(const AuxiliaryFunction& aux, int max_order) {
  BoundaryReport report;
  report.order = aux.order;
  report.norm = aux.norm;
  const int last = max_order < 0 ? 2 * aux.order - 1 : max_order;

  // Taylor coefficients about s = 1 by repeated synthetic division. For
  // integer-coefficient shapes every intermediate is an integer well below
  // 2^53, so a vanishing derivative comes out as an exact zero.
  std::vector<double> shifted(aux.shape.coeffs().begin(), aux.shape.coeffs().end());
  const int n = static_cast<int>(shifted.size());
  for (int k = 0; k < n; ++k)
    for (int j = n - 2; j >= k; --j) shifted[j] += shifted[j + 1];

  double factorial = 1.0;
  for (int k = 0; k <= last; ++k) {
    if (k > 0) factorial *= k;
    const double start = aux.shape[static_cast<std::size_t>(k)] * factorial;
    const double end = (k < n ? shifted[static_cast<std::size_t>(k)] : 0.0) * factorial;
    report.residuals.push_back({k, aux.norm * start, aux.norm * end});
  }
  return report;
}

}  // namespace sta
