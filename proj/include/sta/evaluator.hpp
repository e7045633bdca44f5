#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sta/designer.hpp"
#include "sta/parallel.hpp"

namespace sta {

// Energies below are dimensionless: "energy" is in hbar*omega_ref, "quanta"
// divides by hbar*omega of the oscillator being probed.

/// F(omega) = int_0^tf x0''(t) exp(-i omega t) dt, closed form. V(omega) = |F(omega)|.
std::complex<double> fourier_accel(const TransportProtocol& protocol, double omega);

/// |prod_i (omega_i^2 - omega^2)| * |G(omega)|, G the transform of the auxiliary function.
double fourier_factorized(const TransportProtocol& protocol, double omega);

/// max_t |x0''(t)| * t_f, the natural magnitude of F.
double acceleration_scale(const TransportProtocol& protocol);

struct Excitation {
  double energy = 0.0;  // hbar*omega_ref units
  double quanta = 0.0;  // energy / omega
  std::optional<double> joules;  // physical unit mode only
};

/// Final excess energy |F(omega)|^2 / 2 after transport in a trap of frequency omega > 0.
Excitation final_excitation(const TransportProtocol& protocol, double omega);

/// Oscillation of the fictitious particle in the moving frame, xi = x_c - x0.
struct ClassicalState {
  double t = 0.0;
  double xi = 0.0;
  double xi_dot = 0.0;
};

struct ClassicalRun {
  double omega = 0.0;
  std::vector<ClassicalState> states;      // n_steps + 1 samples, t = 0 .. t_end
  std::vector<double> transient_quanta;    // Delta E(t) / hbar omega per sample
  double final_quanta = 0.0;
  std::vector<std::string> warnings;
};

/// max(1000, ceil(200 omega t_f / 2 pi)).
int default_rk4_steps(double omega, double duration);

/// Fixed-step RK4 for xi'' + omega^2 xi = -x0''(t) from rest.
///
/// n_steps <= 0 picks default_rk4_steps; otherwise n_steps >= 100 is
/// required. t_end < 0 integrates to t_f. A resolution warning is recorded
/// when omega * h exceeds 0.1 rad.
ClassicalRun classical_simulate(const TransportProtocol& protocol, double omega, int n_steps = 0,
                                double t_end = -1.0);

/// a(t) = xi - i xi'/omega = (i/omega) e^{i omega t} int_0^t x0'' e^{-i omega t'} dt'.
std::complex<double> complex_amplitude(const TransportProtocol& protocol, double omega, double t);

struct LambdaResult {
  double value = 0.0;
  int nodes = 0;
  bool converged = false;
  std::vector<std::string> warnings;
};

inline constexpr int kGaussNodesPerPanel = 16;

/// Average excitation (in quanta of the central frequency omega0) over
/// [omega0 (1 - eta), omega0 (1 + eta)].
///
/// Composite 16-point Gauss-Legendre starting from n_quad nodes; the panel
/// count doubles until two successive estimates agree to 1e-8 relative.
LambdaResult lambda_metric(const TransportProtocol& protocol, double omega0, double eta,
                           int n_quad = 8 * kGaussNodesPerPanel,
                           Execution exec = Execution::parallel);

/// Local power-law exponent of Delta E(omega) near omega0 for a coincident
/// protocol (all design frequencies equal omega0): least-squares slope of
/// log Delta E against log |omega - omega0| for |omega/omega0 - 1| in [1e-3, 1e-2].
double flatness_order(const TransportProtocol& protocol, double omega0);

struct ExcitationCurve {
  std::vector<double> omegas;
  std::vector<double> energies;  // quanta of the probed frequency
  std::string protocol_id;
};

ExcitationCurve excitation_curve(const TransportProtocol& protocol, std::span<const double> omegas,
                                 Execution exec = Execution::parallel);

/// `points` evenly spaced frequencies from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int points);

/// Short label such as "N3_tf7.853981634_d30000".
std::string protocol_id(const TransportProtocol& protocol);

}  // namespace sta
