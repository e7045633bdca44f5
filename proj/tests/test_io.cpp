#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "sta/errors.hpp"
#include "sta/io.hpp"

namespace fs = std::filesystem;
using sta::io::json;

namespace {

sta::TransportProtocol make(double d, double tf, std::vector<double> w,
                            sta::UnitMode units = sta::UnitMode::dimensionless()) {
  sta::TransportSpec s;
  s.distance = d;
  s.duration = tf;
  s.frequencies = std::move(w);
  s.units = units;
  return sta::build_trajectory(s);
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("sta_io_test_" + std::to_string(std::random_device{}()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("shortest round-trip formatting") {
  CHECK(sta::io::format_double(0.1) == "0.1");
  CHECK(sta::io::format_double(1.0) == "1");
  CHECK(sta::io::format_double(-2.5e-300) == "-2.5e-300");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> ex(-300, 300);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(mant(rng), ex(rng));
    CHECK(std::stod(sta::io::format_double(v)) == v);
  }
}

TEST_CASE("protocol json") {
  const auto p = make(30000.0, 7.853981633974483, {0.97, 1.0, 1.03});
  const json j = sta::io::protocol_to_json(p);
  CHECK(j.at("N") == 3);
  CHECK(j.at("variable") == "s = t/tf");
  CHECK(j.at("coeffs_x0").size() == p.x0.coeffs().size());
  CHECK(j.at("unit_mode").at("kind") == "dimensionless");

  SUBCASE("save, load and save again is byte-identical") {
    TempDir dir;
    sta::io::write_json(dir.path / "a.json", j);
    const auto loaded = sta::io::protocol_from_json(sta::io::read_json(dir.path / "a.json"));
    sta::io::write_json(dir.path / "b.json", sta::io::protocol_to_json(loaded));
    std::ifstream a(dir.path / "a.json"), b(dir.path / "b.json");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(loaded.x0 == p.x0);
    CHECK(loaded.a0 == p.a0);
    CHECK(loaded.spec.frequencies == p.spec.frequencies);
  }
  SUBCASE("normalized-time coefficients alone are enough") {
    json stripped = j;
    stripped.erase("centered");
    const auto loaded = sta::io::protocol_from_json(stripped);
    for (double t : {0.0, 1.0, 4.0, 7.85})
      CHECK(loaded.position(t) == doctest::Approx(p.position(t)).epsilon(1e-9));
  }
  SUBCASE("physical units survive") {
    const auto units = sta::UnitMode::physical(40 * sta::kAtomicMassUnit, 2 * 3.141592653589793 * 1.41e6);
    const auto q = make(1.0, 7.0, {1.0}, units);
    const auto back = sta::io::protocol_from_json(sta::io::protocol_to_json(q));
    CHECK(back.spec.units == units);
  }
  SUBCASE("malformed input") {
    json bad = j;
    bad.erase("spec");
    CHECK_THROWS_AS(sta::io::protocol_from_json(bad), sta::InvalidSpec);
    json wrong_n = j;
    wrong_n["N"] = 2;
    CHECK_THROWS_AS(sta::io::protocol_from_json(wrong_n), sta::InvalidSpec);
    json units = j;
    units["unit_mode"]["kind"] = "furlongs";
    CHECK_THROWS_AS(sta::io::protocol_from_json(units), sta::InvalidSpec);
    json negative = j;
    negative["spec"]["freqs"] = {1.0, -1.0, 1.0};
    CHECK_THROWS_AS(sta::io::protocol_from_json(negative), sta::InvalidSpec);
    CHECK_THROWS_AS(sta::io::read_json("/nonexistent/protocol.json"), sta::Error);
  }
}

TEST_CASE("csv writers") {
  const auto p = make(5.0, 8.0, {1.0, 1.0});

  std::ostringstream traj;
  sta::io::write_trajectory_csv(traj, p, 11);
  const std::string text = traj.str();
  CHECK(first_line(text) == "t,x0,v0,a0");
  CHECK(std::count(text.begin(), text.end(), '\n') == 12);
  CHECK(text.find("\n0,") != std::string::npos);
  const auto last = text.substr(text.rfind('\n', text.size() - 2) + 1);
  CHECK(last.rfind("8,", 0) == 0);
  CHECK_THROWS_AS(sta::io::write_trajectory_csv(traj, p, 1), sta::InvalidArgument);

  const auto curve = sta::excitation_curve(p, sta::linear_grid(0.5, 1.5, 5));
  std::ostringstream ex;
  sta::io::write_excitation_csv(ex, curve);
  CHECK(first_line(ex.str()) == "omega,delta_e_quanta");

  std::ostringstream tr;
  sta::io::write_transient_csv(tr, sta::classical_simulate(p, 1.0, 100));
  CHECK(first_line(tr.str()) == "t,delta_e_quanta");

  sta::SweepResult sweep{{0.0, 0.01}, {1.0, 0.5}, 0.01, 0.5};
  std::ostringstream sw;
  sta::io::write_sweep_csv(sw, sweep);
  CHECK(sw.str() == "epsilon,lambda\n0,1\n0.01,0.5\n");
}

TEST_CASE("physical trajectory csv is in SI units") {
  const auto units = sta::UnitMode::physical(40 * sta::kAtomicMassUnit, 2 * 3.141592653589793 * 1.41e6);
  const auto p = make(100.0, 7.0, {1.0}, units);
  std::ostringstream os;
  sta::io::write_trajectory_csv(os, p, 2);
  std::istringstream in(os.str());
  std::string header, row0, row1;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  const double t_end = std::stod(row1.substr(0, row1.find(',')));
  const double x_end = std::stod(row1.substr(row1.find(',') + 1));
  CHECK(t_end == doctest::Approx(7.0 * units.time_scale()).epsilon(1e-15));
  CHECK(x_end == doctest::Approx(100.0 * units.length_scale()).epsilon(1e-10));
}

TEST_CASE("reports") {
  sta::OptimizeResult r;
  r.pattern = "three_point";
  r.eps_star = 0.015;
  r.lambda_star = 0.02;
  r.lambda_at_zero = 0.1;
  const json j = sta::io::optimizer_report(r);
  CHECK(j.at("ratio").get<double>() == doctest::Approx(5.0));
  CHECK(j.at("warnings").empty());

  sta::QuantumReport q;
  q.fidelity_vs_analytic = 0.999999;
  CHECK(sta::io::quantum_report(q).at("fidelity_vs_analytic") == 0.999999);
}
