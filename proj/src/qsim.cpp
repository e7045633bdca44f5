#include "sta/qsim.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "sta/errors.hpp"
#include "sta/evaluator.hpp"
#include "sta/kernels.hpp"

namespace sta {

namespace {

using cplx = std::complex<double>;

// FFTW planning is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

void require_resolution(const SpatialGrid& grid, double omega) {
  const double a0 = 1.0 / std::sqrt(omega);
  if (a0 < 4.0 * grid.dx()) {
    std::ostringstream msg;
    msg << "grid spacing " << grid.dx() << " too coarse for harmonic length " << a0;
    throw ResolutionError(msg.str());
  }
}

// Even step count for Simpson's rule.
int analytic_steps(double omega, double t, int requested) {
  const int n = std::max(requested > 0 ? requested : 4 * default_rk4_steps(omega, t), 100);
  return n + (n % 2);
}

struct ClassicalEndpoint {
  double xc = 0.0;
  double vc = 0.0;
  double action = 0.0;  // int_0^t L dt'
};

ClassicalEndpoint classical_endpoint(const TransportProtocol& protocol, double omega, double t,
                                     int requested) {
  ClassicalEndpoint out{protocol.position(0.0), 0.0, 0.0};
  if (t <= 0.0) return out;
  const int n = analytic_steps(omega, t, requested);
  const auto run = classical_simulate(protocol, omega, n, t);
  auto lagrangian = [&](const ClassicalState& s) {
    const double vc = s.xi_dot + protocol.velocity(s.t);
    return 0.5 * vc * vc - 0.5 * omega * omega * s.xi * s.xi;
  };
  double sum = lagrangian(run.states.front()) + lagrangian(run.states.back());
  for (int i = 1; i < n; ++i)
    sum += (i % 2 ? 4.0 : 2.0) * lagrangian(run.states[static_cast<std::size_t>(i)]);
  const auto& last = run.states.back();
  out.xc = last.xi + protocol.position(t);
  out.vc = last.xi_dot + protocol.velocity(t);
  out.action = sum * (t / n) / 3.0;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

double SpatialGrid::k(int j) const {
  const int idx = j < n_points / 2 ? j : j - n_points;
  return 2.0 * std::numbers::pi * idx / (x_max - x_min);
}

void SpatialGrid::validate() const {
  if (!(x_max > x_min)) throw InvalidArgument("grid needs x_max > x_min");
  const bool pow2 = n_points > 0 && (n_points & (n_points - 1)) == 0;
  if (!pow2 || n_points < 512 || n_points > (1 << 14))
    throw InvalidArgument("grid size must be a power of two between 512 and 16384");
}

SpatialGrid SpatialGrid::covering(const TransportProtocol& protocol, double omega, int n_points) {
  const auto run = classical_simulate(protocol, omega);
  double lo = 0.0, hi = 0.0, vmax = 0.0;
  for (const auto& s : run.states) {
    const double x0 = protocol.position(s.t);
    const double xc = x0 + s.xi;
    lo = std::min({lo, x0, xc});
    hi = std::max({hi, x0, xc});
    vmax = std::max(vmax, std::abs(s.xi_dot + protocol.velocity(s.t)));
  }
  const double a0 = 1.0 / std::sqrt(omega);
  SpatialGrid grid{lo - 12.0 * a0, hi + 12.0 * a0, n_points};
  grid.validate();
  require_resolution(grid, omega);
  // Largest representable wavenumber must cover the boosted packet.
  const double k_needed = vmax + 10.0 / a0;
  if (std::numbers::pi / grid.dx() < k_needed) {
    std::ostringstream msg;
    msg << "grid of " << n_points << " points resolves k <= " << std::numbers::pi / grid.dx()
        << " but the packet reaches k = " << k_needed;
    throw ResolutionError(msg.str());
  }
  return grid;
}

double WaveFunction::norm() const {
  double s = 0.0;
  for (const auto& v : psi) s += std::norm(v);
  return s * grid.dx();
}

std::complex<double> overlap(const WaveFunction& a, const WaveFunction& b) {
  if (a.psi.size() != b.psi.size()) throw InvalidArgument("overlap of wave functions on different grids");
  cplx s = 0.0;
  for (std::size_t j = 0; j < a.psi.size(); ++j) s += std::conj(a.psi[j]) * b.psi[j];
  return s * a.grid.dx();
}

WaveFunction harmonic_eigenstate(const SpatialGrid& grid, double omega, int n, double center) {
  grid.validate();
  if (!(omega > 0.0)) throw InvalidArgument("trap frequency must be positive");
  if (n < 0) throw InvalidArgument("eigenstate index must be non-negative");
  require_resolution(grid, omega);

  WaveFunction wf{grid, std::vector<cplx>(static_cast<std::size_t>(grid.n_points)), 0.0};
  const double root = std::sqrt(omega);
  const double pref = std::pow(omega / std::numbers::pi, 0.25);
  for (int j = 0; j < grid.n_points; ++j) {
    const double xi = root * (grid.x(j) - center);
    // Normalized Hermite-function recurrence.
    double prev = 0.0, cur = pref * std::exp(-0.5 * xi * xi);
    for (int m = 0; m < n; ++m) {
      const double next = std::sqrt(2.0 / (m + 1)) * xi * cur - std::sqrt(double(m) / (m + 1)) * prev;
      prev = cur;
      cur = next;
    }
    wf.psi[static_cast<std::size_t>(j)] = cur;
  }
  const double scale = 1.0 / std::sqrt(wf.norm());
  for (auto& v : wf.psi) v *= scale;
  return wf;
}

WaveFunction ground_state(const SpatialGrid& grid, double omega, double center) {
  return harmonic_eigenstate(grid, omega, 0, center);
}

double energy_expectation(const WaveFunction& wf, double omega, double x0) {
  const int n = wf.grid.n_points;
  std::vector<cplx> buf(wf.psi);
  {
    fftw_plan plan;
    {
      std::lock_guard lock(planner_mutex());
      plan = fftw_plan_dft_1d(n, as_fftw(buf.data()), as_fftw(buf.data()), FFTW_FORWARD,
                              FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  double kin = 0.0, kin_norm = 0.0, pot = 0.0, pot_norm = 0.0;
  for (int j = 0; j < n; ++j) {
    const double pk = std::norm(buf[static_cast<std::size_t>(j)]);
    const double k = wf.grid.k(j);
    kin += 0.5 * k * k * pk;
    kin_norm += pk;
    const double px = std::norm(wf.psi[static_cast<std::size_t>(j)]);
    const double y = wf.grid.x(j) - x0;
    pot += 0.5 * omega * omega * y * y * px;
    pot_norm += px;
  }
  return (kin / kin_norm + pot / pot_norm) / omega;
}

// ---------------------------------------------------------------------------

struct Propagator::Fft {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Fft() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

Propagator::Propagator(const TransportProtocol& protocol, const SpatialGrid& grid, double omega,
                       double dt, Execution exec)
    : protocol_(protocol), grid_(grid), omega_(omega), dt_(dt), exec_(exec) {
  grid_.validate();
  if (!(omega > 0.0)) throw InvalidArgument("trap frequency must be positive");
  if (!(dt > 0.0) || dt > 0.02 / omega)
    throw InvalidArgument("time step must satisfy 0 < dt <= 0.02 / omega");
  psi_.resize(static_cast<std::size_t>(grid_.n_points));
  half_kinetic_.resize(psi_.size());
  fft_ = std::make_unique<Fft>();
  std::lock_guard lock(planner_mutex());
  fft_->forward = fftw_plan_dft_1d(grid_.n_points, as_fftw(psi_.data()), as_fftw(psi_.data()),
                                   FFTW_FORWARD, FFTW_ESTIMATE);
  fft_->backward = fftw_plan_dft_1d(grid_.n_points, as_fftw(psi_.data()), as_fftw(psi_.data()),
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
}

Propagator::~Propagator() = default;

void Propagator::reset() { reset(ground_state(grid_, omega_, protocol_.position(0.0))); }

void Propagator::reset(const WaveFunction& initial) {
  if (initial.psi.size() != psi_.size()) throw InvalidArgument("initial state grid mismatch");
  psi_ = initial.psi;
  t_ = initial.t;
  steps_ = 0;
}

void Propagator::step(double h) {
  if (h != phase_step_) {
    // exp(-i k^2 h / 4) with the 1/n of the unnormalized inverse transform folded in.
    const double inv_n = 1.0 / grid_.n_points;
    for (int j = 0; j < grid_.n_points; ++j) {
      const double k = grid_.k(j);
      half_kinetic_[static_cast<std::size_t>(j)] = std::polar(inv_n, -0.25 * k * k * h);
    }
    phase_step_ = h;
  }
  fftw_execute(fft_->forward);
  kernels::apply_phase(psi_, half_kinetic_, exec_);
  fftw_execute(fft_->backward);
  kernels::potential_step(psi_, grid_.x_min, grid_.dx(), omega_, protocol_.position(t_ + 0.5 * h),
                          h, exec_);
  fftw_execute(fft_->forward);
  kernels::apply_phase(psi_, half_kinetic_, exec_);
  fftw_execute(fft_->backward);
  t_ += h;
  ++steps_;
}

void Propagator::check_boundary() const {
  double peak = 0.0;
  for (const auto& v : psi_) peak = std::max(peak, std::abs(v));
  const std::size_t band = std::max<std::size_t>(1, psi_.size() / 64);
  double edge = 0.0;
  for (std::size_t j = 0; j < band; ++j)
    edge = std::max({edge, std::abs(psi_[j]), std::abs(psi_[psi_.size() - 1 - j])});
  if (edge > 1e-8 * peak) {
    std::ostringstream msg;
    msg << "wave function reached the grid edge at t = " << t_ << " (edge/peak = " << edge / peak
        << "); enlarge the grid";
    throw BoundaryLeak(msg.str());
  }
}

void Propagator::advance_to(double t) {
  while (t - t_ > 1e-12 * std::max(1.0, std::abs(t))) {
    const double remaining = t - t_;
    // Avoid a sliver step at the end.
    const double h = remaining <= dt_ * (1.0 + 1e-9) ? remaining : dt_;
    step(h);
    if (steps_ % 64 == 0) check_boundary();
  }
  t_ = t;
  check_boundary();
}

WaveFunction Propagator::state() const { return WaveFunction{grid_, psi_, t_}; }

double Propagator::energy() const {
  return energy_expectation(state(), omega_, protocol_.position(t_));
}

WaveFunction propagate(const TransportProtocol& protocol, const SpatialGrid& grid, double omega,
                       double dt, Execution exec) {
  Propagator prop(protocol, grid, omega, dt, exec);
  prop.reset();
  prop.advance_to(protocol.spec.duration);
  return prop.state();
}

// ---------------------------------------------------------------------------

double lagrangian_phase(const TransportProtocol& protocol, double omega, double t, int rk4_steps) {
  return classical_endpoint(protocol, omega, t, rk4_steps).action;
}

WaveFunction analytic_solution(const TransportProtocol& protocol, const SpatialGrid& grid,
                               double omega, double t, int rk4_steps) {
  if (t < 0.0) throw InvalidArgument("analytic solution requires t >= 0");
  const auto c = classical_endpoint(protocol, omega, t, rk4_steps);
  WaveFunction wf = ground_state(grid, omega, c.xc);
  wf.t = t;
  // e^{-i E0 t} e^{i vc (x - xc)} e^{i action}, E0 = omega / 2
  for (int j = 0; j < grid.n_points; ++j) {
    const double phase = -0.5 * omega * t + c.vc * (grid.x(j) - c.xc) + c.action;
    wf.psi[static_cast<std::size_t>(j)] *= std::polar(1.0, phase);
  }
  return wf;
}

QuantumReport verify_quantum(const TransportProtocol& protocol, double omega, int n_points,
                             double dt, Execution exec) {
  const SpatialGrid grid = SpatialGrid::covering(protocol, omega, n_points);
  const WaveFunction numeric = propagate(protocol, grid, omega, dt, exec);
  const WaveFunction exact = analytic_solution(protocol, grid, omega, protocol.spec.duration);
  const cplx ov = overlap(numeric, exact);

  QuantumReport r;
  r.omega = omega;
  r.tf = protocol.spec.duration;
  r.d = protocol.spec.distance;
  r.n_points = n_points;
  r.dt = dt;
  r.final_energy_quanta = energy_expectation(numeric, omega, protocol.position(protocol.spec.duration));
  r.delta_e_quanta = r.final_energy_quanta - 0.5;
  r.classical_delta_e_quanta = final_excitation(protocol, omega).quanta;
  r.fidelity_vs_analytic = std::abs(ov);
  r.overlap_phase = std::arg(ov);
  return r;
}

}  // namespace sta
