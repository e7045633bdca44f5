#pragma once

namespace sta {

inline constexpr double kHbar = 1.054571817e-34;         // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

/// How quantities are reported at the I/O boundary.
///
/// All internal math is dimensionless: time in 1/omega_ref, length in the
/// harmonic length a_ref = sqrt(hbar / (m omega_ref)), hbar = m = 1. Physical
/// mode only attaches the scales below when values are written out.
struct UnitMode {
  enum class Kind { dimensionless, physical };

  Kind kind = Kind::dimensionless;
  double mass_kg = 1.0;
  double omega_ref = 1.0;  // rad/s in physical mode

  static UnitMode dimensionless() { return {}; }
  static UnitMode physical(double mass_kg, double omega_ref_rad_s) {
    return {Kind::physical, mass_kg, omega_ref_rad_s};
  }

  bool is_physical() const { return kind == Kind::physical; }

  /// Metres per dimensionless length unit (1 in dimensionless mode).
  double length_scale() const;
  /// Seconds per dimensionless time unit.
  double time_scale() const;
  /// Joules per dimensionless energy unit (hbar * omega_ref).
  double energy_scale() const;

  void validate() const;
};

bool operator==(const UnitMode& a, const UnitMode& b);

}  // namespace sta
