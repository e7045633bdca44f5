#pragma once

#include <span>
#include <string>
#include <vector>

#include "sta/designer.hpp"
#include "sta/parallel.hpp"

namespace sta {

enum class PatternKind { one_point, two_point, three_point, symmetric_n };

/// Placement of the design frequencies around omega0 as a function of the spacing eps.
///
///   one_point    {w0}
///   two_point    {w0(1-eps), w0(1+eps)}
///   three_point  {w0(1-eps), w0, w0(1+eps)}
///   symmetric_n  `points` frequencies evenly spaced on [w0(1-eps), w0(1+eps)]
struct PlacementPattern {
  PatternKind kind = PatternKind::one_point;
  int points = 1;  // used by symmetric_n only

  static PlacementPattern one_point() { return {PatternKind::one_point, 1}; }
  static PlacementPattern two_point() { return {PatternKind::two_point, 2}; }
  static PlacementPattern three_point() { return {PatternKind::three_point, 3}; }
  static PlacementPattern symmetric(int n) { return {PatternKind::symmetric_n, n}; }

  int order() const;
  std::vector<double> frequencies(double omega0, double eps) const;
  std::string name() const;
};

/// Protocol settings shared by every point of a sweep.
struct SweepBase {
  double distance = 0.0;
  double duration = 1.0;
  UnitMode units{};
};

TransportSpec make_spec(const PlacementPattern& pattern, const SweepBase& base, double omega0,
                        double eps);

struct SweepResult {
  std::vector<double> epsilons;
  std::vector<double> lambdas;
  double argmin_eps = 0.0;
  double min_lambda = 0.0;
};

/// 0 to 0.08 in steps of 0.0025.
std::vector<double> default_epsilon_grid();

/// Lambda(eta) at every eps of an ascending grid within [0, 0.2].
SweepResult sweep_epsilon(const PlacementPattern& pattern, const SweepBase& base, double omega0,
                          double eta, std::span<const double> eps_grid,
                          Execution exec = Execution::parallel);

struct OptimizeResult {
  std::string pattern;
  double eps_star = 0.0;
  double lambda_star = 0.0;
  double lambda_at_zero = 0.0;
  SweepResult coarse;
  std::vector<std::string> warnings;

  /// lambda_at_zero / lambda_star, 1 when both vanish.
  double ratio() const;
};

/// Coarse scan of `coarse_points` over [lo, hi], then golden-section search in
/// the cells adjacent to the grid minimum down to |d eps| <= 1e-5.
OptimizeResult optimize_epsilon(const PlacementPattern& pattern, const SweepBase& base,
                                double omega0, double eta, double lo, double hi,
                                int coarse_points = 33, Execution exec = Execution::parallel);

}  // namespace sta
