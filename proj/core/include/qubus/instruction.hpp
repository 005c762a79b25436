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

#include <string>
#include <variant>
#include <vector>

#include "qubus/elements.hpp"

namespace qubus {

/// Element instructions understood by both the coherent-state simulator and
/// the truncated-Fock oracle.
namespace op {

struct PhotonBs { PathId a, b; };
struct PbsHv { PathId in, transmit, reflect; };
struct PbsDiag { PathId in, transmit, reflect; };
struct PhaseShift { ModeSelector sel; double phi; };
struct ModeUnitary { Mode m0, m1; Matrix2 matrix; };
struct SwapPaths { PathId p, q; };
struct QubusBs { BeamId i, j; };
struct QubusPhase { BeamId beam; double phi; };
struct Xpm { ModeSelector sel; BeamId beam; double theta; };
struct AddBeam { Complex amp; };
struct InjectPhoton { PhotonQubit qubit; };
struct RegisterPath { PathId path; };

}  // namespace op

using Instruction =
    std::variant<op::PhotonBs, op::PbsHv, op::PbsDiag, op::PhaseShift, op::ModeUnitary,
                 op::SwapPaths, op::QubusBs, op::QubusPhase, op::Xpm, op::AddBeam,
                 op::InjectPhoton, op::RegisterPath>;

HybridState apply(const HybridState& state, const Instruction& instr);
HybridState apply_all(HybridState state, const std::vector<Instruction>& program);

std::string describe(const Instruction& instr);

}  // namespace qubus
