#include "sta/units.hpp"

#include <cmath>

#include "sta/errors.hpp"

namespace sta {

double UnitMode::length_scale() const {
  return is_physical() ? std::sqrt(kHbar / (mass_kg * omega_ref)) : 1.0;
}

double UnitMode::time_scale() const { return is_physical() ? 1.0 / omega_ref : 1.0; }

double UnitMode::energy_scale() const { return is_physical() ? kHbar * omega_ref : 1.0; }

void UnitMode::validate() const {
  if (!is_physical()) return;
  if (!(mass_kg > 0.0) || !(omega_ref > 0.0) || !std::isfinite(mass_kg) || !std::isfinite(omega_ref))
    throw InvalidSpec("physical units need a positive mass and reference frequency");
}

bool operator==(const UnitMode& a, const UnitMode& b) {
  if (a.kind != b.kind) return false;
  return !a.is_physical() || (a.mass_kg == b.mass_kg && a.omega_ref == b.omega_ref);
}

}  // namespace sta
