#include "sta/optimizer.hpp"


#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "sta/errors.hpp"
#include "sta/evaluator.hpp"

namespace sta {

int PlacementPattern::order() const {
  switch (kind) {
    case PatternKind::one_point: return 1;
    case PatternKind::two_point: return 2;
    case PatternKind::three_point: return 3;
    case PatternKind::symmetric_n: return points;
  }
  return points;
}

std::vector<double> PlacementPattern::frequencies(double omega0, double eps) const {
  if (!(eps >= 0.0 && eps < 1.0)) throw InvalidArgument("spacing eps must lie in [0, 1)");
  switch (kind) {
    case PatternKind::one_point: return {omega0};
    case PatternKind::two_point: return {omega0 * (1.0 - eps), omega0 * (1.0 + eps)};
    case PatternKind::three_point: return {omega0 * (1.0 - eps), omega0, omega0 * (1.0 + eps)};
    case PatternKind::symmetric_n: break;
  }
  if (points < 1) throw InvalidArgument("symmetric pattern needs at least one point");
  if (points == 1) return {omega0};
  std::vector<double> out;
  const int span = points - 1;
  for (int k = 0; k < points; ++k) {
    // Integer numerator keeps offsets k and span-k exact negatives.
    const double offset = eps * static_cast<double>(2 * k - span) / span;
    out.push_back(omega0 * (1.0 + offset));
  }
  return out;
}

std::string PlacementPattern::name() const {
  switch (kind) {
    case PatternKind::one_point: return "one_point";
    case PatternKind::two_point: return "two_point";
    case PatternKind::three_point: return "three_point";
    case PatternKind::symmetric_n: return "symmetric_" + std::to_string(points);
  }
  return "unknown";
}

TransportSpec make_spec(const PlacementPattern& pattern, const SweepBase& base, double omega0,
                        double eps) {
  return TransportSpec{base.distance, base.duration, pattern.frequencies(omega0, eps), base.units};
}

std::vector<double> default_epsilon_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 32; ++i) g.push_back(0.0025 * i);
  return g;
}

namespace {

double lambda_at(const PlacementPattern& pattern, const SweepBase& base, double omega0,
                 double eta, double eps, Execution inner) {
  try {
    const auto protocol = build_trajectory(make_spec(pattern, base, omega0, eps));
    return lambda_metric(protocol, omega0, eta, 8 * kGaussNodesPerPanel, inner).value;
  } catch (const Error& e) {
    std::ostringstream msg;
    msg << "at eps = " << eps << ": " << e.what();
    throw InvalidSpec(msg.str());
  }
}

}  // namespace

SweepResult sweep_epsilon(const PlacementPattern& pattern, const SweepBase& base, double omega0,
                          double eta, std::span<const double> eps_grid, Execution exec) {
  if (eps_grid.empty()) throw InvalidArgument("epsilon grid is empty");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] >= 0.0 && eps_grid[i] <= 0.2))
      throw InvalidArgument("epsilon grid must lie within [0, 0.2]");
    if (i > 0 && !(eps_grid[i] > eps_grid[i - 1]))
      throw InvalidArgument("epsilon grid must be strictly ascending");
  }

  SweepResult r;
  r.epsilons.assign(eps_grid.begin(), eps_grid.end());
  r.lambdas.assign(eps_grid.size(), 0.0);
  const auto n = static_cast<std::ptrdiff_t>(eps_grid.size());

  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      r.lambdas[i] = lambda_at(pattern, base, omega0, eta, eps_grid[i], Execution::serial);
  } else {
    std::vector<std::exception_ptr> errors(eps_grid.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        r.lambdas[i] = lambda_at(pattern, base, omega0, eta, eps_grid[i], Execution::serial);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  const auto best = std::min_element(r.lambdas.begin(), r.lambdas.end());
  r.min_lambda = *best;
  r.argmin_eps = r.epsilons[static_cast<std::size_t>(best - r.lambdas.begin())];
  return r;
}

double OptimizeResult::ratio() const {
  if (lambda_star == 0.0) return lambda_at_zero == 0.0 ? 1.0 : INFINITY;
  return lambda_at_zero / lambda_star;
}

OptimizeResult optimize_epsilon(const PlacementPattern& pattern, const SweepBase& base,
                                double omega0, double eta, double lo, double hi,
                                int coarse_points, Execution exec) {
  if (!(lo >= 0.0 && hi <= 0.2 && lo < hi))
    throw InvalidArgument("bracket must satisfy 0 <= lo < hi <= 0.2");
  if (coarse_points < 3) throw InvalidArgument("coarse scan needs at least 3 points");

  OptimizeResult out;
  out.pattern = pattern.name();
  const auto grid = linear_grid(lo, hi, coarse_points);
  out.coarse = sweep_epsilon(pattern, base, omega0, eta, grid, exec);
  out.lambda_at_zero = lo == 0.0 ? out.coarse.lambdas.front()
                                 : lambda_at(pattern, base, omega0, eta, 0.0, exec);

  const auto idx = static_cast<std::size_t>(
      std::min_element(out.coarse.lambdas.begin(), out.coarse.lambdas.end()) -
      out.coarse.lambdas.begin());
  out.eps_star = grid[idx];
  out.lambda_star = out.coarse.lambdas[idx];
  if (out.lambda_star == 0.0) return out;

  if (idx == 0 || idx + 1 == grid.size()) {
    std::ostringstream msg;
    msg << "minimum at bracket edge eps = " << grid[idx] << "; consider widening the bracket";
    out.warnings.push_back(msg.str());
  }

  double a = grid[idx == 0 ? 0 : idx - 1];
  double b = grid[std::min(idx + 1, grid.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double e) { return lambda_at(pattern, base, omega0, eta, e, exec); };
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-5) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double e_mid = 0.5 * (a + b);
  const double f_mid = f(e_mid);
  // Refinement never degrades the coarse optimum.
  for (auto [e, v] : {std::pair{c, fc}, std::pair{d, fd}, std::pair{e_mid, f_mid}}) {
    if (v < out.lambda_star) {
      out.lambda_star = v;
      out.eps_star = e;
    }
  }
  return out;
}

}  // namespace sta
