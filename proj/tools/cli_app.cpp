#include "cli_app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>

#include "sta/designer.hpp"
#include "sta/errors.hpp"
#include "sta/evaluator.hpp"
#include "sta/io.hpp"
#include "sta/optimizer.hpp"
#include "sta/parallel.hpp"
#include "sta/qsim.hpp"

namespace sta::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json manifest(const std::string& subcommand, const std::vector<std::string>& args, json params,
              json outputs) {
  return json{{"tool", "sta"},
              {"version", kToolVersion},
              {"subcommand", subcommand},
              {"argv", args},
              {"parameters", std::move(params)},
              {"outputs", std::move(outputs)}};
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

fs::path ensure_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

// ---------------------------------------------------------------- design

struct DesignOptions {
  std::vector<double> freqs;
  double tf = 0.0;
  double d = 0.0;
  std::string units = "dimensionless";
  double mass_amu = 40.0;
  double omega_hz = 1.41e6;
  int samples = 2001;
  std::string out = "protocol.json";
};

void add_design(CLI::App& app, DesignOptions& o) {
  auto* c = app.add_subcommand("design", "Synthesize an N-point robust transport protocol");
  c->add_option("--freqs", o.freqs, "Design frequencies in units of omega_ref")
      ->required()
      ->delimiter(',');
  c->add_option("--tf", o.tf, "Duration (1/omega_ref, or seconds with --units physical)")
      ->required();
  c->add_option("--d", o.d, "Distance (a_ref, or metres with --units physical)")->required();
  c->add_option("--units", o.units, "dimensionless | physical")
      ->check(CLI::IsMember({"dimensionless", "physical"}));
  c->add_option("--mass-amu", o.mass_amu, "Particle mass in atomic mass units (physical mode)");
  c->add_option("--omega-hz", o.omega_hz, "Reference trap frequency in Hz (physical mode)");
  c->add_option("--samples", o.samples, "Trajectory CSV samples")->check(CLI::Range(2, 10000000));
  c->add_option("--out", o.out, "Protocol JSON path");
}

int run_design(const DesignOptions& o, const std::vector<std::string>& args) {
  TransportSpec spec;
  spec.frequencies = o.freqs;
  if (o.units == "physical") {
    spec.units = UnitMode::physical(o.mass_amu * kAtomicMassUnit, kTwoPi * o.omega_hz);
    spec.units.validate();
    spec.distance = o.d / spec.units.length_scale();
    spec.duration = o.tf / spec.units.time_scale();
  } else {
    spec.distance = o.d;
    spec.duration = o.tf;
  }
  const auto protocol = build_trajectory(spec);

  const fs::path out(o.out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  const fs::path stem = out.parent_path() / out.stem();
  const fs::path traj = stem.string() + ".trajectory.csv";
  const fs::path man = stem.string() + ".manifest.json";

  io::write_json(out, io::protocol_to_json(protocol));
  {
    auto f = open_out(traj);
    io::write_trajectory_csv(f, protocol, o.samples);
  }
  io::write_json(man, manifest("design", args,
                               {{"freqs", o.freqs},
                                {"tf", o.tf},
                                {"d", o.d},
                                {"units", io::units_to_json(spec.units)},
                                {"samples", o.samples}},
                               {out.string(), traj.string()}));
  std::cout << "wrote " << out.string() << " (N = " << spec.order() << ", delta = " << protocol.aux.delta
            << ", norm = " << protocol.aux.norm << ")\n";
  return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOptions {
  std::string protocol;
  double omega_min = 0.9;
  double omega_max = 1.1;
  int points = 401;
  bool transient = false;
  double omega = 1.0;
  double eta = -1.0;
  int rk4_steps = 0;
  std::string out = ".";
};

void add_evaluate(CLI::App& app, EvaluateOptions& o) {
  auto* c = app.add_subcommand("evaluate", "Excitation curve, transient energy and Lambda(eta)");
  c->add_option("--protocol", o.protocol, "Protocol JSON")->required();
  c->add_option("--omega-min", o.omega_min);
  c->add_option("--omega-max", o.omega_max);
  c->add_option("--points", o.points)->check(CLI::Range(1, 100000000));
  c->add_flag("--transient", o.transient, "Also write the transient energy at --omega");
  c->add_option("--omega", o.omega, "Trap frequency for the transient series");
  c->add_option("--eta", o.eta, "Print Lambda(eta) about --omega");
  c->add_option("--rk4-steps", o.rk4_steps, "RK4 steps for the transient (0 = automatic)");
  c->add_option("--out", o.out, "Output directory");
}

int run_evaluate(const EvaluateOptions& o, const std::vector<std::string>& args) {
  if (!(o.omega_min > 0.0) || !(o.omega_max >= o.omega_min))
    throw UsageError("need 0 < --omega-min <= --omega-max");
  const auto protocol = io::protocol_from_json(io::read_json(o.protocol));
  const auto dir = ensure_dir(o.out);

  json outputs = json::array();
  const auto grid = linear_grid(o.omega_min, o.omega_max, o.points);
  const auto curve = excitation_curve(protocol, grid);
  {
    auto f = open_out(dir / "excitation.csv");
    io::write_excitation_csv(f, curve);
    outputs.push_back((dir / "excitation.csv").string());
  }
  json results = json::object();
  if (o.transient) {
    const auto run = classical_simulate(protocol, o.omega, o.rk4_steps);
    for (const auto& w : run.warnings) std::cerr << "warning: " << w << '\n';
    auto f = open_out(dir / "transient.csv");
    io::write_transient_csv(f, run);
    outputs.push_back((dir / "transient.csv").string());
    results["final_quanta_rk4"] = run.final_quanta;
  }
  if (o.eta > 0.0) {
    const auto lam = lambda_metric(protocol, o.omega, o.eta);
    for (const auto& w : lam.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "lambda(eta = " << io::format_double(o.eta) << ") = " << io::format_double(lam.value)
              << '\n';
    results["lambda"] = lam.value;
  }
  io::write_json(dir / "manifest.json",
                 manifest("evaluate", args,
                          {{"protocol", o.protocol},
                           {"omega_min", o.omega_min},
                           {"omega_max", o.omega_max},
                           {"points", o.points},
                           {"transient", o.transient},
                           {"omega", o.omega},
                           {"eta", o.eta},
                           {"rk4_steps", o.rk4_steps},
                           {"results", results}},
                          outputs));
  return 0;
}

// ---------------------------------------------------------------- optimize

struct OptimizeOptions {
  std::string pattern = "three_point";
  int points = 3;
  double tf = 2.0 * std::numbers::pi * 1.25;
  double d = 30000.0;
  double omega0 = 1.0;
  double eta = 0.02;
  double lo = 0.0;
  double hi = 0.08;
  std::string out = ".";
};

PlacementPattern pattern_from(const std::string& name, int points) {
  if (name == "one_point") return PlacementPattern::one_point();
  if (name == "two_point") return PlacementPattern::two_point();
  if (name == "three_point") return PlacementPattern::three_point();
  if (name == "symmetric") return PlacementPattern::symmetric(points);
  throw UsageError("unknown pattern " + name);
}

void add_optimize(CLI::App& app, OptimizeOptions& o) {
  auto* c = app.add_subcommand("optimize", "Sweep and minimize Lambda(eta) over the spacing eps");
  c->add_option("--pattern", o.pattern)
      ->check(CLI::IsMember({"one_point", "two_point", "three_point", "symmetric"}));
  c->add_option("--points", o.points, "Frequency count for --pattern symmetric")
      ->check(CLI::Range(1, kMaxProtocolOrder));
  c->add_option("--tf", o.tf);
  c->add_option("--d", o.d);
  c->add_option("--omega0", o.omega0);
  c->add_option("--eta", o.eta);
  c->add_option("--lo", o.lo);
  c->add_option("--hi", o.hi);
  c->add_option("--out", o.out, "Output directory");
}

int run_optimize(const OptimizeOptions& o, const std::vector<std::string>& args) {
  const auto pattern = pattern_from(o.pattern, o.points);
  const SweepBase base{o.d, o.tf, {}};
  const auto dir = ensure_dir(o.out);
  const auto sweep = sweep_epsilon(pattern, base, o.omega0, o.eta, default_epsilon_grid());
  const auto best = optimize_epsilon(pattern, base, o.omega0, o.eta, o.lo, o.hi);
  for (const auto& w : best.warnings) std::cerr << "warning: " << w << '\n';
  {
    auto f = open_out(dir / "sweep.csv");
    io::write_sweep_csv(f, sweep);
  }
  io::write_json(dir / "report.json", io::optimizer_report(best));
  io::write_json(dir / "manifest.json",
                 manifest("optimize", args,
                          {{"pattern", pattern.name()},
                           {"tf", o.tf},
                           {"d", o.d},
                           {"omega0", o.omega0},
                           {"eta", o.eta},
                           {"bracket", {o.lo, o.hi}}},
                          {(dir / "sweep.csv").string(), (dir / "report.json").string()}));
  std::cout << pattern.name() << ": eps* = " << io::format_double(best.eps_star)
            << ", lambda* = " << io::format_double(best.lambda_star) << '\n';
  return 0;
}

// ---------------------------------------------------------------- reproduce

struct ReproduceOptions {
  std::string figure;
  double eta = 0.02;
  double d = 30000.0;
  std::string out = ".";
};

void add_reproduce(CLI::App& app, ReproduceOptions& o) {
  auto* c = app.add_subcommand("reproduce", "Write the datasets behind the trajectory, transient "
                                            "energy and robustness figures");
  c->add_option("figure", o.figure, "fig1a | fig1b | fig2")
      ->required()
      ->check(CLI::IsMember({"fig1a", "fig1b", "fig2"}));
  c->add_option("--eta", o.eta);
  c->add_option("--d", o.d);
  c->add_option("--out", o.out, "Output directory");
}

struct Curve {
  int order;
  double cycles;  // omega0 t_f / 2 pi
  std::string label() const {
    return "N" + std::to_string(order) + "_tf" + io::format_double(cycles);
  }
};

const std::vector<Curve>& fig1_curves() {
  static const std::vector<Curve> curves{{1, 1.25}, {2, 1.25}, {3, 1.25}, {1, 5.0}, {3, 1.5625}};
  return curves;
}

TransportProtocol coincident(int order, double cycles, double d) {
  return build_trajectory(
      TransportSpec{d, kTwoPi * cycles, std::vector<double>(static_cast<std::size_t>(order), 1.0), {}});
}

json reproduce_fig1a(const ReproduceOptions& o, const fs::path& dir, json& outputs) {
  json summary = json::object();
  for (const auto& c : fig1_curves()) {
    const auto p = coincident(c.order, c.cycles, o.d);
    const fs::path file = dir / ("fig1a_" + c.label() + ".csv");
    auto f = open_out(file);
    f << "t_over_tf,x0_over_d\n";
    constexpr int samples = 1001;
    double peak = 0.0, prev = 0.0;
    bool monotone = true;
    for (int i = 0; i < samples; ++i) {
      const double s = static_cast<double>(i) / (samples - 1);
      const double x = p.position(s * p.spec.duration) / o.d;
      f << io::format_double(s) << ',' << io::format_double(x) << '\n';
      peak = std::max(peak, std::abs(x));
      if (i > 0 && x < prev) monotone = false;
      prev = x;
    }
    summary[c.label()] = {{"max_abs_x0_over_d", peak},
                          {"monotone", monotone},
                          {"x0_start", p.position(0.0) / o.d},
                          {"x0_end", p.position(p.spec.duration) / o.d}};
    outputs.push_back(file.string());
  }
  return summary;
}

json reproduce_fig1b(const ReproduceOptions& o, const fs::path& dir, json& outputs) {
  json summary = json::object();
  for (const auto& c : fig1_curves()) {
    const auto p = coincident(c.order, c.cycles, o.d);
    const auto run = classical_simulate(p, 1.0);
    const fs::path file = dir / ("fig1b_" + c.label() + ".csv");
    auto f = open_out(file);
    io::write_transient_csv(f, run);
    summary[c.label()] = {
        {"peak_delta_e_quanta",
         *std::max_element(run.transient_quanta.begin(), run.transient_quanta.end())},
        {"final_delta_e_quanta", run.final_quanta}};
    outputs.push_back(file.string());
  }
  return summary;
}

json reproduce_fig2(const ReproduceOptions& o, const fs::path& dir, json& outputs) {
  json summary = json::object();
  const auto grid = default_epsilon_grid();
  std::map<double, std::vector<double>> all_lambdas;
  for (double cycles : {1.25, 2.5}) {
    const SweepBase base{o.d, kTwoPi * cycles, {}};
    const std::string tag = "tf" + io::format_double(cycles);
    const double l1 =
        lambda_metric(build_trajectory(make_spec(PlacementPattern::one_point(), base, 1.0, 0.0)), 1.0,
                      o.eta)
            .value;
    json entry{{"lambda_one_point", l1}};
    auto& lambdas = all_lambdas[cycles];
    lambdas.push_back(l1);
    for (const auto& pattern : {PlacementPattern::two_point(), PlacementPattern::three_point()}) {
      const auto sweep = sweep_epsilon(pattern, base, 1.0, o.eta, grid);
      const auto best = optimize_epsilon(pattern, base, 1.0, o.eta, 0.0, 0.08);
      const fs::path file = dir / ("fig2_" + pattern.name() + "_" + tag + ".csv");
      auto f = open_out(file);
      io::write_sweep_csv(f, sweep);
      outputs.push_back(file.string());
      entry[pattern.name()] = io::optimizer_report(best);
      lambdas.insert(lambdas.end(), sweep.lambdas.begin(), sweep.lambdas.end());
      if (pattern.kind == PatternKind::three_point) {
        const double at003 =
            lambda_metric(build_trajectory(make_spec(pattern, base, 1.0, 0.03)), 1.0, o.eta).value;
        entry["three_point"]["lambda_at_eps_0.03"] = at003;
        entry["ratio_three_point_eps0_over_eps0.03"] = best.lambda_at_zero / at003;
        entry["ratio_one_point_over_three_point_opt"] = l1 / best.lambda_star;
      } else {
        entry["ratio_one_point_over_two_point_opt"] = l1 / best.lambda_star;
      }
    }
    entry["ratio_two_point_opt_over_three_point_opt"] =
        entry["two_point"]["lambda_star"].get<double>() /
        entry["three_point"]["lambda_star"].get<double>();
    summary[tag] = entry;
  }
  const auto& fast = all_lambdas[1.25];
  const auto& slow = all_lambdas[2.5];
  bool lower = true;
  for (std::size_t i = 0; i < fast.size(); ++i) lower = lower && slow[i] < fast[i];
  summary["longer_duration_lowers_every_lambda"] = lower;
  summary["eta"] = o.eta;
  return summary;
}

int run_reproduce(const ReproduceOptions& o, const std::vector<std::string>& args) {
  const auto dir = ensure_dir(o.out);
  json outputs = json::array();
  json summary;
  if (o.figure == "fig1a")
    summary = reproduce_fig1a(o, dir, outputs);
  else if (o.figure == "fig1b")
    summary = reproduce_fig1b(o, dir, outputs);
  else
    summary = reproduce_fig2(o, dir, outputs);
  const fs::path sfile = dir / (o.figure + "_summary.json");
  io::write_json(sfile, summary);
  outputs.push_back(sfile.string());
  io::write_json(dir / (o.figure + "_manifest.json"),
                 manifest("reproduce", args, {{"figure", o.figure}, {"eta", o.eta}, {"d", o.d}},
                          outputs));
  std::cout << summary.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------- qverify

struct QverifyOptions {
  std::string protocol;
  double omega = 1.0;
  double d_scale = 20.0;
  int n = 4096;
  double dt = 0.002;
  std::string out;
};

void add_qverify(CLI::App& app, QverifyOptions& o) {
  auto* c = app.add_subcommand("qverify", "Check a protocol against split-operator propagation");
  c->add_option("--protocol", o.protocol, "Protocol JSON")->required();
  c->add_option("--omega", o.omega, "Trap frequency of the run");
  c->add_option("--d-scale", o.d_scale, "Distance used for the quantum run, in a_ref");
  c->add_option("--n", o.n, "Grid points (power of two)");
  c->add_option("--dt", o.dt, "Time step");
  c->add_option("--out", o.out, "Report JSON path (default: stdout only)");
}

int run_qverify(const QverifyOptions& o, const std::vector<std::string>& args) {
  auto stored = io::protocol_from_json(io::read_json(o.protocol));
  json report;
  bool pass = true;
  if (o.d_scale == 0.0) {
    report = {{"omega", o.omega}, {"tf", stored.spec.duration}, {"d", 0.0}, {"n_points", o.n},
              {"dt", o.dt}, {"final_energy_quanta", 0.5}, {"delta_e_quanta", 0.0},
              {"classical_delta_e_quanta", 0.0}, {"fidelity_vs_analytic", 1.0}};
  } else {
    TransportSpec spec = stored.spec;
    spec.distance = o.d_scale;
    const auto protocol = build_trajectory(spec);
    const auto r = verify_quantum(protocol, o.omega, o.n, o.dt);
    report = io::quantum_report(r);

    bool designed = false;
    for (double w : spec.frequencies) designed = designed || std::abs(w - o.omega) <= 1e-12 * o.omega;
    if (designed) {
      pass = std::abs(r.delta_e_quanta) <= 1e-4;
    } else {
      const double scale = std::max(std::abs(r.delta_e_quanta), std::abs(r.classical_delta_e_quanta));
      pass = scale <= 1e-6 || std::abs(r.delta_e_quanta - r.classical_delta_e_quanta) <= 1e-3 * scale;
    }
    pass = pass && r.fidelity_vs_analytic >= 1.0 - 1e-5;
    report["designed_frequency"] = designed;
  }
  report["passed"] = pass;
  report["protocol"] = o.protocol;
  if (!o.out.empty()) {
    const fs::path out(o.out);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    io::write_json(out, report);
    io::write_json(out.parent_path() / (out.stem().string() + ".manifest.json"),
                   manifest("qverify", args,
                            {{"protocol", o.protocol}, {"omega", o.omega}, {"d_scale", o.d_scale},
                             {"n", o.n}, {"dt", o.dt}},
                            {out.string()}));
  }
  std::cout << report.dump(2) << '\n';
  return pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  configure_threads_from_env();

  CLI::App app{"Robust shortcut-to-adiabaticity transport design toolkit", "sta"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  DesignOptions design;
  EvaluateOptions evaluate;
  OptimizeOptions optimize;
  ReproduceOptions reproduce;
  QverifyOptions qverify;
  std::string replay_manifest;
  add_design(app, design);
  add_evaluate(app, evaluate);
  add_optimize(app, optimize);
  add_reproduce(app, reproduce);
  add_qverify(app, qverify);
  app.add_subcommand("replay", "Re-run the command recorded in a manifest")
      ->add_option("manifest", replay_manifest)
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand("design")) return run_design(design, args);
    if (app.got_subcommand("evaluate")) return run_evaluate(evaluate, args);
    if (app.got_subcommand("optimize")) return run_optimize(optimize, args);
    if (app.got_subcommand("reproduce")) return run_reproduce(reproduce, args);
    if (app.got_subcommand("qverify")) return run_qverify(qverify, args);
    if (app.got_subcommand("replay")) {
      const auto m = io::read_json(replay_manifest);
      return run(m.at("argv").get<std::vector<std::string>>());
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace sta::cli
