#pragma once

// Data-parallel inner loops. Each kernel has a serial reference
// implementation and an OpenMP implementation with identical per-element
// arithmetic, so results are bitwise equal for any thread count.

#include <complex>
#include <span>

#include "sta/designer.hpp"
#include "sta/parallel.hpp"

namespace sta::kernels {

using cplx = std::complex<double>;

/// Closed-form acceleration spectrum F(omega) = int_0^tf x0''(t) e^{-i omega t} dt.
cplx acceleration_spectrum(const TransportProtocol& protocol, double omega);

namespace serial {
/// out[i] = |F(omegas[i])|^2 / 2, the final excess energy in hbar*omega_ref units.
void excitation_energies(const TransportProtocol& protocol, std::span<const double> omegas,
                         std::span<double> out);
/// psi[j] *= exp(-i dt omega^2 (x_j - x0)^2 / 2),  x_j = x_min + j dx.
void potential_step(std::span<cplx> psi, double x_min, double dx, double omega, double x0,
                    double dt);
/// psi[j] *= phase[j]
void apply_phase(std::span<cplx> psi, std::span<const cplx> phase);
}  // namespace serial

namespace omp {
void excitation_energies(const TransportProtocol& protocol, std::span<const double> omegas,
                         std::span<double> out);
void potential_step(std::span<cplx> psi, double x_min, double dx, double omega, double x0,
                    double dt);
void apply_phase(std::span<cplx> psi, std::span<const cplx> phase);
}  // namespace omp

void excitation_energies(const TransportProtocol& protocol, std::span<const double> omegas,
                         std::span<double> out, Execution exec);
void potential_step(std::span<cplx> psi, double x_min, double dx, double omega, double x0,
                    double dt, Execution exec);
void apply_phase(std::span<cplx> psi, std::span<const cplx> phase, Execution exec);

}  // namespace sta::kernels
