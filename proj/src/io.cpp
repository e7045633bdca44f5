#include "sta/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>

#include "sta/errors.hpp"

namespace sta::io {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace {

json coeff_array(const Polynomial& p) {
  json a = json::array();
  for (double c : p.coeffs()) a.push_back(c);
  return a;
}

Polynomial polynomial_from(const json& a) { return Polynomial(a.get<std::vector<double>>()); }

}  // namespace

json units_to_json(const UnitMode& units) {
  if (!units.is_physical()) return json{{"kind", "dimensionless"}};
  return json{{"kind", "physical"},
              {"mass_kg", units.mass_kg},
              {"omega_ref", units.omega_ref},
              {"length_scale_m", units.length_scale()},
              {"time_scale_s", units.time_scale()},
              {"energy_scale_j", units.energy_scale()}};
}

UnitMode units_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "dimensionless") return UnitMode::dimensionless();
  if (kind == "physical")
    return UnitMode::physical(j.at("mass_kg").get<double>(), j.at("omega_ref").get<double>());
  throw InvalidSpec("unknown unit mode '" + kind + "'");
}

json protocol_to_json(const TransportProtocol& p) {
  json pj = json::array();
  for (double v : p.pj.values()) pj.push_back(v);
  return json{
      {"spec", {{"d", p.spec.distance}, {"tf", p.spec.duration}, {"freqs", p.spec.frequencies}}},
      {"unit_mode", units_to_json(p.spec.units)},
      {"N", p.spec.order()},
      {"delta", p.aux.delta},
      {"norm", p.aux.norm},
      {"pj", pj},
      {"variable", "s = t/tf"},
      {"coeffs_x0", coeff_array(in_normalized_time(p.x0))},
      {"coeffs_v0", coeff_array(in_normalized_time(p.v0))},
      {"coeffs_a0", coeff_array(in_normalized_time(p.a0))},
      {"centered",
       {{"variable", "u = 2t/tf - 1"},
        {"coeffs_x0", coeff_array(p.x0)},
        {"coeffs_v0", coeff_array(p.v0)},
        {"coeffs_a0", coeff_array(p.a0)},
        {"coeffs_a0_tail", coeff_array(p.a0_tail)}}},
  };
}

TransportProtocol protocol_from_json(const json& j) {
  try {
    TransportProtocol p;
    const auto& spec = j.at("spec");
    p.spec.distance = spec.at("d").get<double>();
    p.spec.duration = spec.at("tf").get<double>();
    p.spec.frequencies = spec.at("freqs").get<std::vector<double>>();
    p.spec.units = units_from_json(j.at("unit_mode"));
    p.spec.validate();
    if (j.at("N").get<int>() != p.spec.order())
      throw InvalidSpec("protocol order does not match its frequency list");

    p.aux.order = p.spec.order();
    p.aux.shape = polynomial_shape(p.aux.order);
    p.aux.shape_centered = in_centered_time(p.aux.shape);
    p.aux.delta = j.at("delta").get<double>();
    p.aux.norm = j.at("norm").get<double>();
    p.pj = j.contains("pj") ? SymmetricCoefficients(j.at("pj").get<std::vector<double>>())
                            : symmetric_coefficients(p.spec.frequencies);

    if (j.contains("centered")) {
      const auto& c = j.at("centered");
      p.x0 = polynomial_from(c.at("coeffs_x0"));
      p.v0 = polynomial_from(c.at("coeffs_v0"));
      p.a0 = polynomial_from(c.at("coeffs_a0"));
      if (c.contains("coeffs_a0_tail")) p.a0_tail = polynomial_from(c.at("coeffs_a0_tail"));
    } else {
      p.x0 = in_centered_time(polynomial_from(j.at("coeffs_x0")));
      p.v0 = in_centered_time(polynomial_from(j.at("coeffs_v0")));
      p.a0 = in_centered_time(polynomial_from(j.at("coeffs_a0")));
    }
    return p;
  } catch (const json::exception& e) {
    throw InvalidSpec(std::string("malformed protocol file: ") + e.what());
  }
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error("cannot parse " + path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_trajectory_csv(std::ostream& os, const TransportProtocol& p, int samples) {
  if (samples < 2) throw InvalidArgument("trajectory needs at least 2 samples");
  const auto& u = p.spec.units;
  const double ts = u.time_scale(), ls = u.length_scale();
  os << "t,x0,v0,a0\n";
  for (int i = 0; i < samples; ++i) {
    const double t = (i + 1 == samples) ? p.spec.duration : p.spec.duration * i / (samples - 1);
    os << format_double(t * ts) << ',' << format_double(p.position(t) * ls) << ','
       << format_double(p.velocity(t) * ls / ts) << ','
       << format_double(p.acceleration(t) * ls / (ts * ts)) << '\n';
  }
}

void write_excitation_csv(std::ostream& os, const ExcitationCurve& curve) {
  os << "omega,delta_e_quanta\n";
  for (std::size_t i = 0; i < curve.omegas.size(); ++i)
    os << format_double(curve.omegas[i]) << ',' << format_double(curve.energies[i]) << '\n';
}

void write_transient_csv(std::ostream& os, const ClassicalRun& run) {
  os << "t,delta_e_quanta\n";
  for (std::size_t i = 0; i < run.states.size(); ++i)
    os << format_double(run.states[i].t) << ',' << format_double(run.transient_quanta[i]) << '\n';
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  os << "epsilon,lambda\n";
  for (std::size_t i = 0; i < sweep.epsilons.size(); ++i)
    os << format_double(sweep.epsilons[i]) << ',' << format_double(sweep.lambdas[i]) << '\n';
}

json optimizer_report(const OptimizeResult& r) {
  return json{{"pattern", r.pattern},
              {"eps_star", r.eps_star},
              {"lambda_star", r.lambda_star},
              {"lambda_at_zero", r.lambda_at_zero},
              {"ratio", r.ratio()},
              {"warnings", r.warnings}};
}

json quantum_report(const QuantumReport& r) {
  return json{{"omega", r.omega},
              {"tf", r.tf},
              {"d", r.d},
              {"n_points", r.n_points},
              {"dt", r.dt},
              {"final_energy_quanta", r.final_energy_quanta},
              {"delta_e_quanta", r.delta_e_quanta},
              {"classical_delta_e_quanta", r.classical_delta_e_quanta},
              {"fidelity_vs_analytic", r.fidelity_vs_analytic},
              {"overlap_phase", r.overlap_phase}};
}

}  // namespace sta::io
