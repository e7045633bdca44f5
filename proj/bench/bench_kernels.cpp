// Serial reference vs OpenMP kernels: excitation spectra, Lambda windows and
// split-operator steps. Usage: sta_bench [repeats]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "sta/evaluator.hpp"
#include "sta/kernels.hpp"
#include "sta/optimizer.hpp"
#include "sta/parallel.hpp"
#include "sta/qsim.hpp"

using namespace sta;
using clk = std::chrono::steady_clock;

template <class F>
double time_ms(int repeats, F&& f) {
  const auto t0 = clk::now();
  for (int r = 0; r < repeats; ++r) f();
  return std::chrono::duration<double, std::milli>(clk::now() - t0).count() / repeats;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %10.3f ms   omp %10.3f ms   speedup %5.2fx\n", name, serial, parallel,
              serial / parallel);
}

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  const int threads = configure_threads_from_env();
  std::printf("threads: %d\n", threads);

  const double tf = 2.0 * std::numbers::pi * 1.25;
  const auto protocol = build_trajectory({30000.0, tf, {0.97, 1.0, 1.03}, {}});

  const auto omegas = linear_grid(0.5, 1.5, 20001);
  std::vector<double> out(omegas.size());
  report("excitation spectrum 20001",
         time_ms(repeats, [&] { kernels::serial::excitation_energies(protocol, omegas, out); }),
         time_ms(repeats, [&] { kernels::omp::excitation_energies(protocol, omegas, out); }));

  report("lambda(0.02)",
         time_ms(repeats, [&] { lambda_metric(protocol, 1.0, 0.02, 128, Execution::serial); }),
         time_ms(repeats, [&] { lambda_metric(protocol, 1.0, 0.02, 128, Execution::parallel); }));

  const SweepBase base{30000.0, tf, {}};
  const auto grid = default_epsilon_grid();
  report("three-point eps sweep",
         time_ms(1, [&] {
           sweep_epsilon(PlacementPattern::three_point(), base, 1.0, 0.02, grid, Execution::serial);
         }),
         time_ms(1, [&] {
           sweep_epsilon(PlacementPattern::three_point(), base, 1.0, 0.02, grid, Execution::parallel);
         }));

  const auto small = build_trajectory({20.0, tf, {1.0}, {}});
  const auto sgrid = SpatialGrid::covering(small, 1.0, 8192);
  report("split-operator 8192 pts",
         time_ms(1, [&] { propagate(small, sgrid, 1.0, 0.002, Execution::serial); }),
         time_ms(1, [&] { propagate(small, sgrid, 1.0, 0.002, Execution::parallel); }));
  return 0;
}
