// Copyright 2026 The qubus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qubus/errors.hpp"
#include "qubus_cli/circuit.hpp"
#include "qubus_cli/commands.hpp"
#include "qubus_cli/runner.hpp"

using namespace qubus::cli;

namespace {

constexpr const char* kCsvHelp = R"(CSV outputs:
  verify-gate   input,<output labels...>  P(output | input); '#' lines carry
                the process residual, purity and resource summary
  error-curve   theta,alpha,gamma,eta,theta_p,alpha_sin_theta,exact,
                closed_form,vacuum_outcome
  oracle-check  alpha,theta,check,distance,distribution_error,ok
Exit codes: 0 ok, 1 embedded check failed, 2 parse/usage error,
            3 validation error, 4 runtime error.)";

int write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return kOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    return kRuntimeError;
  }
  f << content;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qubus: single-photon logic gates through a coherent-state bus"};
  app.footer(kCsvHelp);
  app.require_subcommand(1);

  std::string out_path;
  std::uint64_t seed = 1;
  int shots = 1;
  std::string mode;
  int cutoff = 40;

  auto* run = app.add_subcommand("run", "Run a circuit file");
  std::string circuit_path;
  run->add_option("circuit", circuit_path, "Circuit document (JSON)")->required();
  run->add_option("--mode", mode, "exact | sample (overrides the file)");
  auto* seed_opt = run->add_option("--seed", seed, "64-bit unsigned seed (sample mode)");
  auto* shots_opt = run->add_option("--shots", shots, "Number of shots (sample mode)");
  run->add_option("--out", out_path, "Write the structured outcome tree (JSON) here");

  auto* verify = app.add_subcommand("verify-gate", "Truth table and process matrix of a built-in gate");
  VerifyGateArgs va;
  verify->add_option("gate", va.gate, "cnot, cz, cphase, swap, synth, fredkin, toffoli, multi-toffoli")
      ->required();
  verify->add_option("--via", va.via, "pair | synth (two-qubit gates)");
  verify->add_option("--controls", va.controls, "Number of controls for multi-toffoli");
  verify->add_option("--phi", va.phi, "Phase for cphase");
  verify->add_option("--alpha", va.alpha, "Qubus amplitude");
  verify->add_option("--theta", va.theta, "XPM phase");
  verify->add_option("--seed", va.seed, "Seed of the random unitary for synth");
  verify->add_option("--out", out_path, "Write the CSV here instead of stdout");

  auto* curve = app.add_subcommand("error-curve", "Detection error sweep as CSV");
  ErrorCurveArgs ca;
  curve->add_option("--theta", ca.theta, "XPM phases")->delimiter(',');
  curve->add_option("--alpha", ca.alpha, "Qubus amplitudes")->delimiter(',');
  curve->add_option("--gamma", ca.gamma, "Probe amplitudes")->delimiter(',');
  curve->add_option("--eta", ca.eta, "Detector efficiencies")->delimiter(',');
  curve->add_option("--theta-p", ca.theta_p, "Probe XPM phases (default: theta)")->delimiter(',');
  curve->add_option("--out", out_path, "Write the CSV here instead of stdout");

  auto* res = app.add_subcommand("resources", "Resource report of a composite gate");
  std::string res_gate;
  int qubits = 3;
  res->add_option("gate", res_gate, "cnot, cz, synth, fredkin, toffoli, multi-toffoli")->required();
  res->add_option("--qubits", qubits, "Number of logical qubits");

  auto* oracle = app.add_subcommand("oracle-check", "Fast simulator against the truncated-Fock oracle");
  OracleCheckArgs oa;
  oracle->add_option("--alpha", oa.alpha, "Coherent amplitudes")->delimiter(',');
  oracle->add_option("--theta", oa.theta, "XPM phases")->delimiter(',');
  oracle->add_option("--cutoff", cutoff, "Fock cutoff per beam (<= 64)");
  oracle->add_option("--seed", oa.seed, "Seed of the random test states");
  oracle->add_option("--out", out_path, "Write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  try {
    std::ostringstream os;
    int code = kOk;
    if (*run) {
      std::ifstream f(circuit_path, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot read " << circuit_path << "\n";
        return kParseError;
      }
      std::stringstream buf;
      buf << f.rdbuf();
      const CircuitProgram program = parse_circuit(buf.str());
      RunOverrides ov;
      if (!mode.empty()) ov.mode = mode;
      if (seed_opt->count()) ov.seed = seed;
      if (shots_opt->count()) ov.shots = shots;
      const RunReport report = run_program(program, ov);
      std::cout << report.text;
      if (!out_path.empty()) {
        if (write_or_print(out_path, report.document.dump(2) + "\n") != kOk) return kRuntimeError;
      }
      return report.checks_ok ? kOk : kCheckFailed;
    }
    if (*verify) code = verify_gate(va, os);
    else if (*curve) code = error_curve(ca, os);
    else if (*res) code = resources(res_gate, qubits, os);
    else if (*oracle) {
      oa.cutoff = cutoff;
      code = oracle_check(oa, os);
    }
    const int w = write_or_print(out_path, os.str());
    return w != kOk ? w : code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}
