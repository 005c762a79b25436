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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qubus::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kValidationError = 3,
  kRuntimeError = 4,
};

struct VerifyGateArgs {
  std::string gate;            // cnot, cz, cphase, swap, synth, fredkin, toffoli, multi-toffoli
  std::string via = "pair";    // pair | synth (two-qubit gates)
  int controls = 3;            // multi-toffoli
  double phi = 0.5;            // cphase
  double alpha = 60.0;
  double theta = 0.1;
  std::uint64_t seed = 1;      // synth: random target unitary
};

int verify_gate(const VerifyGateArgs& args, std::ostream& out);

struct ErrorCurveArgs {
  std::vector<double> theta{0.01, 0.02};
  std::vector<double> alpha{100.0};
  std::vector<double> gamma{100.0};
  std::vector<double> eta{0.9};
  std::vector<double> theta_p;  // empty: probe phase equals theta
};

/// CSV: theta,alpha,gamma,eta,theta_p,alpha_sin_theta,exact,closed_form,vacuum_outcome
int error_curve(const ErrorCurveArgs& args, std::ostream& out);

int resources(const std::string& gate, int qubits, std::ostream& out);

struct OracleCheckArgs {
  std::vector<double> alpha{1.0, 1.5};
  std::vector<double> theta{0.3, 0.5};
  int cutoff = 40;
  std::uint64_t seed = 1;
};

/// CSV: alpha,theta,check,distance,distribution_error,ok
int oracle_check(const OracleCheckArgs& args, std::ostream& out);

}  // namespace qubus::cli
