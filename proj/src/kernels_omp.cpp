#include <omp.h>

#include <cmath>

#include "sta/kernels.hpp"

namespace sta::kernels::omp {

void excitation_energies(const TransportProtocol& protocol, std::span<const double> omegas,
                         std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(omegas.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = 0.5 * std::norm(acceleration_spectrum(protocol, omegas[i]));
}

void potential_step(std::span<cplx> psi, double x_min, double dx, double omega, double x0,
                    double dt) {
  const double c = 0.5 * omega * omega * dt;
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const double y = x_min + static_cast<double>(j) * dx - x0;
    psi[j] *= std::polar(1.0, -c * y * y);
  }
}

void apply_phase(std::span<cplx> psi, std::span<const cplx> phase) {
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) psi[j] *= phase[j];
}

}  // namespace sta::kernels::omp
