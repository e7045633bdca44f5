#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "quadrature_oracle.hpp"
#include "sta/errors.hpp"
#include "sta/evaluator.hpp"

using cplx = std::complex<double>;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

sta::TransportProtocol make(double d, double tf, std::vector<double> w) {
  sta::TransportSpec s;
  s.distance = d;
  s.duration = tf;
  s.frequencies = std::move(w);
  return sta::build_trajectory(s);
}

// F(omega) by brute-force quadrature in physical time.
cplx spectrum_oracle(const sta::TransportProtocol& p, double omega) {
  return oracle::composite_gauss(
      [&](double t) { return p.acceleration(t) * std::exp(cplx(0.0, -omega * t)); }, 0.0,
      p.spec.duration, 256);
}

// Window average by composite Simpson over the oracle spectrum.
double lambda_oracle(const sta::TransportProtocol& p, double w0, double eta, int intervals) {
  const double lo = w0 * (1 - eta), hi = w0 * (1 + eta), h = (hi - lo) / intervals;
  double acc = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double w = lo + i * h;
    const double f = 0.5 * std::norm(spectrum_oracle(p, w)) / w0;
    acc += f * (i == 0 || i == intervals ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
  return acc * h / 3.0 / (hi - lo);
}

}  // namespace

TEST_CASE("acceleration spectrum") {
  const auto p = make(3.0, 5.0, {0.8, 1.3});
  const double scale = sta::acceleration_scale(p);

  SUBCASE("quadrature oracle") {
    for (double w : {0.05, 0.5, 1.17, 2.2, 7.0}) {
      const cplx want = spectrum_oracle(p, w);
      CHECK(std::abs(sta::fourier_accel(p, w) - want) <= 1e-10 * std::max(std::abs(want), 1e-3 * scale));
    }
    CHECK(std::abs(sta::fourier_accel(p, 1.17) - spectrum_oracle(p, 1.17)) <=
          1e-10 * std::abs(spectrum_oracle(p, 1.17)));
  }
  SUBCASE("zeros at the design frequencies and at the origin") {
    CHECK(std::abs(sta::fourier_accel(p, 0.8)) <= 1e-9 * scale);
    CHECK(std::abs(sta::fourier_accel(p, 1.3)) <= 1e-9 * scale);
    CHECK(std::abs(sta::fourier_accel(p, 0.0)) <= 1e-12 * scale);
    CHECK(sta::fourier_factorized(p, 0.8) == 0.0);
  }
  SUBCASE("factorized magnitude") {
    for (double w : sta::linear_grid(0.0, 3.0, 301)) {
      const double a = std::abs(sta::fourier_accel(p, w));
      const double b = sta::fourier_factorized(p, w);
      // relative, with an absolute floor a few hundred ulps above rounding
      CHECK(std::abs(a - b) <= 1e-9 * a + 1e-13 * scale);
    }
  }
}

TEST_CASE("final excitation") {
  const auto p = make(30000.0, kTwoPi * 1.25, {1.0});
  const double scale = sta::acceleration_scale(p);
  CHECK(sta::final_excitation(p, 1.0).energy <= 1e-18 * scale * scale);
  const auto e = sta::final_excitation(p, 1.1);
  CHECK(e.energy == doctest::Approx(0.5 * std::norm(sta::fourier_accel(p, 1.1))).epsilon(1e-15));
  CHECK(e.quanta == doctest::Approx(e.energy / 1.1).epsilon(1e-15));
  CHECK_FALSE(e.joules.has_value());
  CHECK_THROWS_AS(sta::final_excitation(p, 0.0), sta::InvalidArgument);

  const auto zero = make(0.0, 4.0, {1.0, 1.0});
  for (double w : {0.3, 1.0, 2.5}) CHECK(sta::final_excitation(zero, w).energy == 0.0);

  sta::TransportSpec s = p.spec;
  s.units = sta::UnitMode::physical(40 * sta::kAtomicMassUnit, kTwoPi * 1.41e6);
  const auto phys = sta::build_trajectory(s);
  const auto ep = sta::final_excitation(phys, 1.1);
  REQUIRE(ep.joules.has_value());
  CHECK(*ep.joules == doctest::Approx(ep.energy * sta::kHbar * kTwoPi * 1.41e6).epsilon(1e-14));
}

TEST_CASE("classical route agrees with the Fourier route") {
  const auto p = make(30000.0, kTwoPi * 1.25, {1.0});
  const auto run = sta::classical_simulate(p, 1.02, 20000);
  CHECK(run.final_quanta == doctest::Approx(sta::final_excitation(p, 1.02).quanta).epsilon(1e-6));
  CHECK(run.warnings.empty());

  for (int n = 1; n <= 3; ++n) {
    const auto q = make(1.0, kTwoPi * 1.25, std::vector<double>(n, 1.0));
    for (double w : {0.9, 0.95, 1.04, 1.1}) {
      const auto r = sta::classical_simulate(q, w, 20000);
      CHECK(r.final_quanta == doctest::Approx(sta::final_excitation(q, w).quanta).epsilon(1e-6));
    }
  }
}

TEST_CASE("transient energy") {
  const auto p = make(1.0, kTwoPi * 1.25, {1.0, 1.0});
  const auto run = sta::classical_simulate(p, 1.0);
  REQUIRE(run.states.size() == run.transient_quanta.size());
  CHECK(run.transient_quanta.front() <= 1e-28);
  CHECK(run.states.back().t == doctest::Approx(p.spec.duration).epsilon(1e-15));
  for (double e : run.transient_quanta) CHECK(e >= 0.0);
  CHECK(*std::max_element(run.transient_quanta.begin(), run.transient_quanta.end()) > 0.0);

  const auto half = sta::classical_simulate(p, 1.0, 500, 0.5 * p.spec.duration);
  CHECK(half.states.size() == 501);
  CHECK(half.states.back().t == doctest::Approx(0.5 * p.spec.duration).epsilon(1e-15));

  CHECK_THROWS_AS(sta::classical_simulate(p, 1.0, 50), sta::InvalidArgument);
  const auto coarse = sta::classical_simulate(p, 40.0, 1000);
  CHECK_FALSE(coarse.warnings.empty());
  CHECK(sta::default_rk4_steps(1.0, 10.0) == 1000);
  CHECK(sta::default_rk4_steps(100.0, kTwoPi * 10.0) == 200000);
}

TEST_CASE("complex amplitude") {
  const auto p = make(2.0, kTwoPi * 1.25, {0.97, 1.03});
  const double w = 1.08;
  CHECK(sta::complex_amplitude(p, w, 0.0) == cplx(0.0, 0.0));

  const double tf = p.spec.duration;
  const auto run = sta::classical_simulate(p, w, 20000, 0.5 * tf);
  const auto& s = run.states.back();
  const cplx a = sta::complex_amplitude(p, w, 0.5 * tf);
  const cplx rk(s.xi, -s.xi_dot / w);
  CHECK(std::abs(a - rk) <= 1e-6 * std::abs(a));

  const cplx af = sta::complex_amplitude(p, w, tf);
  CHECK(0.5 * w * w * std::norm(af) == doctest::Approx(sta::final_excitation(p, w).energy).epsilon(1e-9));
  CHECK_THROWS_AS(sta::complex_amplitude(p, w, 2 * tf), sta::InvalidArgument);
}

TEST_CASE("lambda metric") {
  const double tf = kTwoPi * 1.25;
  SUBCASE("trivial protocol") {
    const auto zero = make(0.0, tf, {1.0});
    CHECK(sta::lambda_metric(zero, 1.0, 0.02).value == 0.0);
  }
  SUBCASE("brute-force oracle") {
    const auto one = make(30000.0, tf, {1.0});
    const auto r = sta::lambda_metric(one, 1.0, 0.02);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(lambda_oracle(one, 1.0, 0.02, 200)).epsilon(1e-9));

    const auto three = make(30000.0, tf, {0.985, 1.0, 1.015});
    const double l3 = sta::lambda_metric(three, 1.0, 0.02).value;
    const double o3 = lambda_oracle(three, 1.0, 0.02, 400);
    CHECK(l3 == doctest::Approx(o3).epsilon(1e-9));
  }
  SUBCASE("frozen regression values") {
    // Fixed by lambda_oracle above; five significant figures.
    CHECK(sta::lambda_metric(make(30000.0, tf, {1.0}), 1.0, 0.02).value ==
          doctest::Approx(36687.28).epsilon(1e-6));
    CHECK(sta::lambda_metric(make(30000.0, tf, {1.0, 1.0, 1.0}), 1.0, 0.02).value ==
          doctest::Approx(0.10394).epsilon(1e-4));
    CHECK(sta::lambda_metric(make(30000.0, kTwoPi * 2.5, {1.0}), 1.0, 0.02).value ==
          doctest::Approx(96.913).epsilon(1e-4));
  }
  SUBCASE("serial and parallel agree exactly") {
    const auto p = make(30000.0, tf, {0.98, 1.02});
    CHECK(sta::lambda_metric(p, 1.0, 0.02, 128, sta::Execution::serial).value ==
          sta::lambda_metric(p, 1.0, 0.02, 128, sta::Execution::parallel).value);
  }
  SUBCASE("argument checks") {
    const auto p = make(1.0, tf, {1.0});
    CHECK_THROWS_AS(sta::lambda_metric(p, 1.0, 0.0), sta::InvalidArgument);
    CHECK_THROWS_AS(sta::lambda_metric(p, 1.0, 1.0), sta::InvalidArgument);
    CHECK_THROWS_AS(sta::lambda_metric(p, 1.0, 0.02, 4), sta::InvalidArgument);
  }
}

TEST_CASE("flatness order of coincident protocols") {
  for (int n = 1; n <= 3; ++n) {
    const auto p = make(1.0, kTwoPi * 1.25, std::vector<double>(n, 1.0));
    CHECK(sta::flatness_order(p, 1.0) == doctest::Approx(2.0 * n).epsilon(0.1 / (2.0 * n)));
  }
  CHECK_THROWS_AS(sta::flatness_order(make(1.0, 8.0, {0.9, 1.1}), 1.0), sta::InvalidArgument);
}

TEST_CASE("excitation curve and helpers") {
  const auto grid = sta::linear_grid(0.5, 1.5, 11);
  REQUIRE(grid.size() == 11);
  CHECK(grid.front() == 0.5);
  CHECK(grid.back() == 1.5);
  CHECK(sta::linear_grid(2.0, 3.0, 1) == std::vector<double>{2.0});

  const auto p = make(1.0, kTwoPi * 1.25, {1.0, 1.0});
  const auto serial = sta::excitation_curve(p, grid, sta::Execution::serial);
  const auto parallel = sta::excitation_curve(p, grid, sta::Execution::parallel);
  CHECK(serial.energies == parallel.energies);
  CHECK(serial.protocol_id == sta::protocol_id(p));
  CHECK(serial.energies[5] <= 1e-18);
  CHECK(serial.energies[0] == doctest::Approx(sta::final_excitation(p, 0.5).quanta).epsilon(1e-15));

  const auto zero = sta::excitation_curve(make(0.0, 3.0, {1.0}), grid);
  for (double e : zero.energies) CHECK(e == 0.0);
  CHECK(sta::protocol_id(make(30000.0, kTwoPi * 1.25, {1.0, 1.0, 1.0})).rfind("N3_", 0) == 0);
}
