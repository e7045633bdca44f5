#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "sta/designer.hpp"
#include "sta/evaluator.hpp"
#include "sta/optimizer.hpp"
#include "sta/qsim.hpp"

namespace sta::io {

using json = nlohmann::json;

/// Shortest decimal string that parses back to the same binary64 value.
std::string format_double(double v);

json units_to_json(const UnitMode& units);
UnitMode units_from_json(const json& j);

/// Protocol schema: spec, N, delta, norm, pj, unit_mode and the x0/v0/a0
/// coefficients in ascending powers of s = t/tf. The "centered" block repeats
/// the coefficients in u = 2t/tf - 1; it is what the loader reads back, so a
/// save/load/save cycle is byte-identical.
json protocol_to_json(const TransportProtocol& protocol);
TransportProtocol protocol_from_json(const json& j);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

/// Header `t,x0,v0,a0`; SI units when the protocol is in physical mode.
void write_trajectory_csv(std::ostream& os, const TransportProtocol& protocol, int samples);
/// Header `omega,delta_e_quanta`.
void write_excitation_csv(std::ostream& os, const ExcitationCurve& curve);
/// Header `t,delta_e_quanta`.
void write_transient_csv(std::ostream& os, const ClassicalRun& run);
/// Header `epsilon,lambda`.
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

json optimizer_report(const OptimizeResult& result);
json quantum_report(const QuantumReport& report);

}  // namespace sta::io
