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

#include <json.hpp>

#include "qubus/gates.hpp"
#include "qubus_cli/circuit.hpp"

namespace qubus::cli {

/// A module error raised while executing one instruction of a program.
class ProgramError : public std::runtime_error {
 public:
  ProgramError(std::size_t index, const std::string& op, const std::string& what)
      : std::runtime_error("instruction " + std::to_string(index) + " (" + op + "): " + what),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct RunOverrides {
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  std::optional<int> shots;
};

struct RunReport {
  std::string text;         // human-readable table
  nlohmann::json document;  // structured outcome tree
  bool checks_ok = true;    // embedded invariant checks
};

/// Exact mode: every measurement record, with probabilities and final
/// states. Sample mode: one trajectory per shot, drawn from the seed.
RunReport run_program(const CircuitProgram& program, const RunOverrides& overrides = {});

/// Execute the program's instructions on `records`; exposed so callers can
/// drive custom record sets.
std::vector<GateRecord> execute(const CircuitProgram& program, std::vector<GateRecord> records,
                                const MeasureOptions& opts, std::vector<PathId>* frame_out = nullptr);

}  // namespace qubus::cli
