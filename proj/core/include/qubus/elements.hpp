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

#include "qubus/state.hpp"

namespace qubus {

enum class PolFilter : std::uint8_t { H, V, Any };

/// Selects the single-photon mode an element couples to: a path plus an
/// optional polarization filter.
struct ModeSelector {
  PathId path = 0;
  PolFilter pol = PolFilter::Any;

  static ModeSelector h(PathId p) { return {p, PolFilter::H}; }
  static ModeSelector v(PathId p) { return {p, PolFilter::V}; }
  static ModeSelector any(PathId p) { return {p, PolFilter::Any}; }

  /// True if the selected mode is occupied in `config`. Throws
  /// MultiPhotonCollision if more than one photon matches.
  bool matches(const PhotonConfig& config) const;

  bool operator==(const ModeSelector&) const = default;
};

std::string to_string(const ModeSelector& s);

/// 50:50 photon beam splitter: |a> -> (|a>+|b>)/sqrt2, |b> -> (|a>-|b>)/sqrt2,
/// polarization preserved.
HybridState photon_bs(const HybridState& state, PathId a, PathId b);

/// Polarizing beam splitter on `in`: H goes to `transmit`, V to `reflect`.
HybridState pbs_hv(const HybridState& state, PathId in, PathId transmit, PathId reflect);

/// Diagonal-basis PBS on `in`: |+> goes to `transmit`, |-> to `reflect`.
HybridState pbs_diag(const HybridState& state, PathId in, PathId transmit, PathId reflect);

/// Multiply branches whose selected mode is occupied by e^{i phi}.
HybridState phase_shift(const HybridState& state, const ModeSelector& sel, double phi);

/// (a_i, a_j) -> ((a_i - a_j)/sqrt2, (a_i + a_j)/sqrt2) in every branch.
HybridState qubus_bs(const HybridState& state, BeamId i, BeamId j);

/// a_i -> a_i e^{i phi} in every branch.
HybridState qubus_phase(const HybridState& state, BeamId i, double phi);

/// Cross-phase modulation: a_i -> a_i e^{i theta} in branches where the
/// selected photon mode is occupied.
HybridState xpm(const HybridState& state, const ModeSelector& sel, BeamId beam, double theta);

}  // namespace qubus
