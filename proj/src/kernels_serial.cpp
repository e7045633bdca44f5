#include <cmath>

#include "sta/kernels.hpp"
#include "sta/oscillatory.hpp"

namespace sta::kernels {

cplx acceleration_spectrum(const TransportProtocol& protocol, double omega) {
  // t = (t_f / 2)(u + 1)
  const double half = 0.5 * protocol.spec.duration;
  const double kappa = omega * half;
  return half * std::polar(1.0, -kappa) *
         (fourier_integral(protocol.a0, kappa) + fourier_integral(protocol.a0_tail, kappa));
}

namespace serial {

void excitation_energies(const TransportProtocol& protocol, std::span<const double> omegas,
                         std::span<double> out) {
  for (std::size_t i = 0; i < omegas.size(); ++i)
    out[i] = 0.5 * std::norm(acceleration_spectrum(protocol, omegas[i]));
}

void potential_step(std::span<cplx> psi, double x_min, double dx, double omega, double x0,
                    double dt) {
  const double c = 0.5 * omega * omega * dt;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double y = x_min + static_cast<double>(j) * dx - x0;
    psi[j] *= std::polar(1.0, -c * y * y);
  }
}

void apply_phase(std::span<cplx> psi, std::span<const cplx> phase) {
  for (std::size_t j = 0; j < psi.size(); ++j) psi[j] *= phase[j];
}

}  // namespace serial

void excitation_energies(const TransportProtocol& protocol, std::span<const double> omegas,
                         std::span<double> out, Execution exec) {
  if (exec == Execution::parallel)
    omp::excitation_energies(protocol, omegas, out);
  else
    serial::excitation_energies(protocol, omegas, out);
}

void potential_step(std::span<cplx> psi, double x_min, double dx, double omega, double x0,
                    double dt, Execution exec) {
  if (exec == Execution::parallel)
    omp::potential_step(psi, x_min, dx, omega, x0, dt);
  else
    serial::potential_step(psi, x_min, dx, omega, x0, dt);
}

void apply_phase(std::span<cplx> psi, std::span<const cplx> phase, Execution exec) {
  if (exec == Execution::parallel)
    omp::apply_phase(psi, phase);
  else
    serial::apply_phase(psi, phase);
}

}  // namespace sta::kernels
