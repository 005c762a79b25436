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

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qubus/gates.hpp"
#include "qubus/linalg.hpp"

namespace qubus {

/// Density matrix of the logical qubits on `frame` (first path = most
/// significant bit), tracing out every other photon and every beam.
/// Branches where a frame path does not hold exactly one photon count as
/// leakage and lower the trace.
MatrixX logical_density(const HybridState& state, std::span<const PathId> frame);

/// <ideal| rho |ideal> for the logical density of `state` on `frame`.
double logical_fidelity(const HybridState& state, std::span<const PathId> frame,
                        const Eigen::VectorXcd& ideal);

/// Smallest logical fidelity over the successful records of `result`,
/// measured on result.qubit_paths. Returns 0 if no record succeeded.
double min_record_fidelity(const GateResult& result, const Eigen::VectorXcd& ideal);

/// Probability-weighted logical density over the successful records.
MatrixX average_density(const GateResult& result);

/// Probability mass of records that ended with a usable feed-forward.
double success_probability(const GateResult& result);

using GateFn = std::function<GateResult(const HybridState&)>;

struct ProcessEstimate {
  MatrixX matrix;          // columns: outputs for the computational inputs
  double min_purity = 1.0; // lowest Tr(rho^2) over every probe run
  double min_success = 1.0;
};

/// Reconstruct the logical action of `gate` from computational-basis inputs
/// plus the superpositions (|0> + |j>)/sqrt2 that fix relative phases.
ProcessEstimate extract_process(const GateFn& gate, const std::vector<PathId>& input_frame,
                                std::span<const Complex> beams = {});

/// P(output i | input j) stored at (j, i).
Eigen::MatrixXd truth_table(const GateFn& gate, const std::vector<PathId>& input_frame,
                            std::span<const Complex> beams = {});

}  // namespace qubus
