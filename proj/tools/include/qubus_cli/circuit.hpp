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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qubus/state.hpp"

namespace qubus::cli {

/// Malformed document: bad JSON or a field of the wrong shape.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed document describing an impossible program.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Basis { HV, PM };

struct PhotonSpec {
  std::string id;
  PathId path = 0;
  Basis basis = Basis::HV;
  Complex a0 = 1.0;  // amplitude of |H> (or |+>)
  Complex a1 = 0.0;  // amplitude of |V> (or |->)

  bool operator==(const PhotonSpec&) const = default;
};

/// One element or gate invocation; arguments are kept as parsed JSON and
/// checked against the operation catalog during validation.
struct GateCall {
  std::string op;
  nlohmann::json args = nlohmann::json::object();

  bool operator==(const GateCall&) const = default;
};

struct RunSpec {
  std::string mode = "exact";    // exact | sample
  std::string measure = "fock";  // fock | qnd
  std::uint64_t seed = 1;
  int shots = 1;
  double eta = 0.9;
  double gamma = 100.0;
  std::optional<double> probe_phase;
  double alpha = 60.0;
  double theta = 0.1;
  bool coalesce = true;

  bool operator==(const RunSpec&) const = default;
};

struct CircuitProgram {
  std::vector<PhotonSpec> photons;
  std::vector<Complex> beams;
  std::vector<GateCall> circuit;
  RunSpec run;

  bool operator==(const CircuitProgram&) const = default;
};

/// Parse and validate a circuit document.
CircuitProgram parse_circuit(std::string_view text);

std::string serialize(const CircuitProgram& program);

void validate(const CircuitProgram& program);

HybridState initial_state(const CircuitProgram& program);

/// Names accepted in the "op" field.
std::vector<std::string> known_operations();

}  // namespace qubus::cli
