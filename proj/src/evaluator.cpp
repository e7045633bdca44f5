#include "sta/evaluator.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sta/errors.hpp"
#include "sta/kernels.hpp"
#include "sta/oscillatory.hpp"

namespace sta {

namespace {

void require_positive(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw InvalidArgument("probe frequency must be positive");
}

const std::array<double, kGaussNodesPerPanel>& gauss_nodes(bool weights) {
  using rule = boost::math::quadrature::gauss<double, kGaussNodesPerPanel>;
  static const auto table = [] {
    std::array<std::array<double, kGaussNodesPerPanel>, 2> t{};
    const auto& x = rule::abscissa();
    const auto& w = rule::weights();
    const std::size_t half = kGaussNodesPerPanel / 2;
    for (std::size_t i = 0; i < half; ++i) {
      t[0][half - 1 - i] = -x[i];
      t[0][half + i] = x[i];
      t[1][half - 1 - i] = w[i];
      t[1][half + i] = w[i];
    }
    return t;
  }();
  return table[weights ? 1 : 0];
}

double window_average(const TransportProtocol& protocol, double lo, double hi, int panels,
                      double omega0, Execution exec) {
  const auto& x = gauss_nodes(false);
  const auto& w = gauss_nodes(true);
  const double width = (hi - lo) / panels;
  std::vector<double> omegas;
  omegas.reserve(static_cast<std::size_t>(panels) * kGaussNodesPerPanel);
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    for (double xi : x) omegas.push_back(mid + 0.5 * width * xi);
  }
  std::vector<double> energy(omegas.size());
  kernels::excitation_energies(protocol, omegas, energy, exec);

  // Ordered merge keeps the sum independent of the thread count.
  double total = 0.0;
  for (std::size_t i = 0; i < energy.size(); ++i) total += w[i % kGaussNodesPerPanel] * energy[i];
  total *= 0.5 * width;
  return total / omega0 / (hi - lo);
}

}  // namespace

std::complex<double> fourier_accel(const TransportProtocol& protocol, double omega) {
  return kernels::acceleration_spectrum(protocol, omega);
}

double fourier_factorized(const TransportProtocol& protocol, double omega) {
  const double half = 0.5 * protocol.spec.duration;
  const double kappa = omega * half;
  const std::complex<double> g =
      protocol.aux.norm * half * fourier_integral(protocol.aux.shape_centered, kappa);
  double prefactor = 1.0;
  for (double w : protocol.spec.frequencies) prefactor *= (w - omega) * (w + omega);
  return std::abs(prefactor) * std::abs(g);
}

double acceleration_scale(const TransportProtocol& protocol) {
  constexpr int samples = 4000;
  double peak = 0.0;
  for (int i = 0; i <= samples; ++i)
    peak = std::max(peak, std::abs(protocol.a0(-1.0 + 2.0 * i / samples)));
  return peak * protocol.spec.duration;
}

Excitation final_excitation(const TransportProtocol& protocol, double omega) {
  require_positive(omega);
  Excitation e;
  e.energy = 0.5 * std::norm(fourier_accel(protocol, omega));
  e.quanta = e.energy / omega;
  if (protocol.spec.units.is_physical()) e.joules = e.energy * protocol.spec.units.energy_scale();
  return e;
}

int default_rk4_steps(double omega, double duration) {
  const double per_period = std::ceil(200.0 * omega * duration / (2.0 * std::numbers::pi));
  return std::max(1000, static_cast<int>(per_period));
}

ClassicalRun classical_simulate(const TransportProtocol& protocol, double omega, int n_steps,
                                double t_end) {
  require_positive(omega);
  if (t_end < 0.0) t_end = protocol.spec.duration;
  if (n_steps <= 0) n_steps = default_rk4_steps(omega, t_end);
  if (n_steps < 100) throw InvalidArgument("classical integration needs at least 100 steps");

  ClassicalRun run;
  run.omega = omega;
  const double h = t_end / n_steps;
  if (omega * h > 0.1) {
    std::ostringstream msg;
    msg << "RK4 step resolves only " << 2.0 * std::numbers::pi / (omega * h)
        << " steps per oscillation period; increase n_steps";
    run.warnings.push_back(msg.str());
  }
  const double w2 = omega * omega;
  auto accel = [&](double t) { return protocol.acceleration(t); };

  run.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  run.transient_quanta.reserve(static_cast<std::size_t>(n_steps) + 1);
  auto record = [&](double t, double xi, double xi_dot) {
    run.states.push_back({t, xi, xi_dot});
    const double vc = xi_dot + protocol.velocity(t);
    run.transient_quanta.push_back((0.5 * vc * vc + 0.5 * w2 * xi * xi) / omega);
  };

  double xi = 0.0, xd = 0.0;
  record(0.0, xi, xd);
  for (int i = 0; i < n_steps; ++i) {
    const double t = i * h;
    const double a_lo = accel(t), a_mid = accel(t + 0.5 * h), a_hi = accel(t + h);
    const double k1x = xd, k1v = -w2 * xi - a_lo;
    const double k2x = xd + 0.5 * h * k1v, k2v = -w2 * (xi + 0.5 * h * k1x) - a_mid;
    const double k3x = xd + 0.5 * h * k2v, k3v = -w2 * (xi + 0.5 * h * k2x) - a_mid;
    const double k4x = xd + h * k3v, k4v = -w2 * (xi + h * k3x) - a_hi;
    xi += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    xd += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    record((i + 1 == n_steps) ? t_end : (i + 1) * h, xi, xd);
  }
  run.final_quanta = run.transient_quanta.back();
  return run;
}

std::complex<double> complex_amplitude(const TransportProtocol& protocol, double omega, double t) {
  require_positive(omega);
  if (t < 0.0 || t > protocol.spec.duration)
    throw InvalidArgument("complex amplitude is defined on [0, t_f]");
  const double half = 0.5 * protocol.spec.duration;
  const double kappa = omega * half;
  const double u = protocol.centered_time(t);
  const std::complex<double> partial =
      half * std::polar(1.0, -kappa) *
      (fourier_integral(protocol.a0, kappa, -1.0, u) +
       fourier_integral(protocol.a0_tail, kappa, -1.0, u));
  return std::complex<double>(0.0, 1.0 / omega) * std::polar(1.0, omega * t) * partial;
}

LambdaResult lambda_metric(const TransportProtocol& protocol, double omega0, double eta,
                           int n_quad, Execution exec) {
  require_positive(omega0);
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("eta must lie in (0, 1)");
  if (n_quad < kGaussNodesPerPanel)
    throw InvalidArgument("lambda quadrature needs at least 16 nodes");

  const double lo = omega0 * (1.0 - eta), hi = omega0 * (1.0 + eta);
  constexpr int max_panels = 4096;
  int panels = (n_quad + kGaussNodesPerPanel - 1) / kGaussNodesPerPanel;

  LambdaResult result;
  double coarse = window_average(protocol, lo, hi, panels, omega0, exec);
  while (true) {
    const double fine = window_average(protocol, lo, hi, 2 * panels, omega0, exec);
    panels *= 2;
    result.value = fine;
    result.nodes = panels * kGaussNodesPerPanel;
    const double scale = std::max(std::abs(fine), std::abs(coarse));
    if (scale == 0.0 || std::abs(fine - coarse) <= 1e-8 * scale) {
      result.converged = true;
      break;
    }
    if (panels >= max_panels) {
      std::ostringstream msg;
      msg << "lambda quadrature not converged at " << result.nodes << " nodes (relative change "
          << std::abs(fine - coarse) / scale << ")";
      result.warnings.push_back(msg.str());
      break;
    }
    coarse = fine;
  }
  return result;
}

double flatness_order(const TransportProtocol& protocol, double omega0) {
  require_positive(omega0);
  for (double w : protocol.spec.frequencies)
    if (std::abs(w - omega0) > 1e-12 * omega0)
      throw InvalidArgument("flatness order needs all design frequencies equal to omega0");

  constexpr int per_side = 9;
  std::vector<double> xs, ys;
  for (int i = 0; i < per_side; ++i) {
    const double delta = std::pow(10.0, -3.0 + static_cast<double>(i) / (per_side - 1));
    for (double sign : {-1.0, 1.0}) {
      const double omega = omega0 * (1.0 + sign * delta);
      const double e = 0.5 * std::norm(fourier_accel(protocol, omega));
      if (!(e > 0.0)) throw InvalidArgument("excitation vanishes near omega0; cannot fit exponent");
      xs.push_back(std::log(std::abs(omega - omega0)));
      ys.push_back(std::log(e));
    }
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ExcitationCurve excitation_curve(const TransportProtocol& protocol, std::span<const double> omegas,
                                 Execution exec) {
  for (double w : omegas) require_positive(w);
  ExcitationCurve curve;
  curve.omegas.assign(omegas.begin(), omegas.end());
  curve.energies.resize(omegas.size());
  kernels::excitation_energies(protocol, omegas, curve.energies, exec);
  for (std::size_t i = 0; i < omegas.size(); ++i) curve.energies[i] /= omegas[i];
  curve.protocol_id = protocol_id(protocol);
  return curve;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1) throw InvalidArgument("grid needs at least one point");
  std::vector<double> g(static_cast<std::size_t>(points));
  if (points == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  g.back() = hi;
  return g;
}

std::string protocol_id(const TransportProtocol& protocol) {
  std::ostringstream id;
  id.precision(10);
  id << 'N' << protocol.spec.order() << "_tf" << protocol.spec.duration << "_d"
     << protocol.spec.distance;
  return id.str();
}

}  // namespace sta
