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

#include <map>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qubus/instruction.hpp"
#include "qubus/state.hpp"

namespace qubus {

/// Brute-force truncated Fock representation: one dense tensor of beam
/// occupations (n_b <= cutoff, beam 0 fastest) per photon configuration.
struct FockVector {
  int cutoff = 0;
  std::size_t beams = 0;
  std::set<PathId> paths;
  std::map<PhotonConfig, std::vector<Complex>> blocks;
  /// Probability mass lost to truncation so far (encoding tails plus
  /// leakage past the cutoff).
  double truncation = 0.0;

  std::size_t block_size() const;
};

inline constexpr int kMaxFockCutoff = 64;
inline constexpr std::size_t kMaxFockBeams = 2;

/// Expand every coherent amplitude into its Fock series. Throws
/// CutoffTooSmall if any amplitude's tail beyond `cutoff` exceeds 1e-10.
FockVector fock_encode(const HybridState& state, int cutoff);

/// Apply one element instruction. Throws CutoffTooSmall when the step leaks
/// more than 1e-8 past the cutoff.
FockVector fock_apply(const FockVector& v, const Instruction& instr);
FockVector fock_apply_all(FockVector v, const std::vector<Instruction>& program);

Complex fock_inner(const FockVector& a, const FockVector& b);
double fock_norm(const FockVector& v);

/// P(n) for every n <= cutoff of beam `beam`, unnormalized projector norms.
std::vector<double> fock_number_distribution(const FockVector& v, BeamId beam);

/// Unnormalized projection onto |n> of `beam`, with the beam removed.
FockVector fock_project(const FockVector& v, BeamId beam, long n);

/// Keep only configurations with a photon on `path` (present) or without.
FockVector fock_filter_path(const FockVector& v, PathId path, bool present);

FockVector fock_scaled(const FockVector& v, Complex factor);

/// 1 - |<encode(state)|fock>| + | ||encode(state)|| - ||fock|| |.
double compare(const HybridState& state, const FockVector& fock);

struct OracleCheck {
  std::string name;
  double distance = 0.0;            // worst compare() over the check
  double distribution_error = 0.0;  // worst |P_fast(n) - P_oracle(n)|
};

/// Every element on a seeded random entangled state, plus the C-path and
/// Merging pipelines through measurement and feed-forward, each run on both
/// simulators.
std::vector<OracleCheck> oracle_equivalence_suite(double alpha, double theta, int cutoff,
                                                  std::uint64_t seed = 1);

}  // namespace qubus
