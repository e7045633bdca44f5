#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "sta/designer.hpp"
#include "sta/parallel.hpp"

namespace sta {

/// Periodic grid x_j = x_min + j dx, j = 0 .. n-1, dx = (x_max - x_min) / n.
struct SpatialGrid {
  double x_min = -1.0;
  double x_max = 1.0;
  int n_points = 512;

  double dx() const { return (x_max - x_min) / n_points; }
  double x(int j) const { return x_min + j * dx(); }
  /// Angular wavenumber of FFT bin j (standard FFTW ordering).
  double k(int j) const;

  /// n_points must be a power of two in [512, 16384] and x_max > x_min.
  void validate() const;

  /// Grid spanning the trap sweep and the classical excursion at frequency
  /// omega with a 12 a0 margin on both sides.
  static SpatialGrid covering(const TransportProtocol& protocol, double omega, int n_points);
};

struct WaveFunction {
  SpatialGrid grid;
  std::vector<std::complex<double>> psi;
  double t = 0.0;

  /// sum |psi|^2 dx
  double norm() const;
};

/// <a|b> = sum conj(a) b dx
std::complex<double> overlap(const WaveFunction& a, const WaveFunction& b);

/// n-th harmonic-oscillator eigenstate (m = hbar = 1) centred at `center`,
/// normalized on the grid. Throws ResolutionError if a0 < 4 dx.
WaveFunction harmonic_eigenstate(const SpatialGrid& grid, double omega, int n, double center = 0.0);

WaveFunction ground_state(const SpatialGrid& grid, double omega, double center = 0.0);

/// <H> / (hbar omega) with H = p^2/2 + omega^2 (x - x0)^2 / 2; kinetic term spectral.
double energy_expectation(const WaveFunction& wf, double omega, double x0);

/// Strang split-operator propagator for the moving trap
/// V(x, t) = omega^2 (x - x0(t))^2 / 2: half kinetic, full potential at the
/// step midpoint, half kinetic. Owns its FFT plans.
class Propagator {
 public:
  Propagator(const TransportProtocol& protocol, const SpatialGrid& grid, double omega, double dt,
             Execution exec = Execution::parallel);
  ~Propagator();
  Propagator(const Propagator&) = delete;
  Propagator& operator=(const Propagator&) = delete;

  /// Starts from the ground state of the trap at x0(0).
  void reset();
  void reset(const WaveFunction& initial);

  /// Steps of dt; the final step is shortened to land exactly on t.
  /// Throws BoundaryLeak if the edge amplitude exceeds 1e-8 of the peak.
  void advance_to(double t);

  double time() const { return t_; }
  long steps() const { return steps_; }
  WaveFunction state() const;
  /// Energy in quanta of omega with the trap at x0(time()).
  double energy() const;

 private:
  struct Fft;
  void step(double h);
  void check_boundary() const;

  TransportProtocol protocol_;
  SpatialGrid grid_;
  double omega_;
  double dt_;
  Execution exec_;
  double t_ = 0.0;
  long steps_ = 0;
  std::vector<std::complex<double>> psi_;
  std::vector<std::complex<double>> half_kinetic_;
  double phase_step_ = -1.0;
  std::unique_ptr<Fft> fft_;
};

/// Wave function at t_f starting from the ground state. Requires dt <= 0.02 / omega.
WaveFunction propagate(const TransportProtocol& protocol, const SpatialGrid& grid, double omega,
                       double dt, Execution exec = Execution::parallel);

/// Exact solution: displaced ground state with momentum boost x_c' and the
/// accumulated Lagrangian phase, with x_c from the RK4 classical integrator
/// and int L dt by Simpson's rule on the RK4 samples.
WaveFunction analytic_solution(const TransportProtocol& protocol, const SpatialGrid& grid,
                               double omega, double t, int rk4_steps = 0);

/// int_0^t L dt' with L = x_c'^2 / 2 - omega^2 (x_c - x0)^2 / 2.
double lagrangian_phase(const TransportProtocol& protocol, double omega, double t,
                        int rk4_steps = 0);

struct QuantumReport {
  double omega = 0.0;
  double tf = 0.0;
  double d = 0.0;
  int n_points = 0;
  double dt = 0.0;
  double final_energy_quanta = 0.0;
  double delta_e_quanta = 0.0;
  double classical_delta_e_quanta = 0.0;
  double fidelity_vs_analytic = 0.0;
  double overlap_phase = 0.0;
};

/// Propagates, then compares against the analytic solution and the Fourier
/// prediction of the final excitation.
QuantumReport verify_quantum(const TransportProtocol& protocol, double omega, int n_points,
                             double dt, Execution exec = Execution::parallel);

}  // namespace sta
