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

#include "qubus/instruction.hpp"

#include <sstream>

namespace qubus {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

HybridState apply(const HybridState& state, const Instruction& instr) {
  return std::visit(
      Overloaded{
          [&](const op::PhotonBs& o) { return photon_bs(state, o.a, o.b); },
          [&](const op::PbsHv& o) { return pbs_hv(state, o.in, o.transmit, o.reflect); },
          [&](const op::PbsDiag& o) { return pbs_diag(state, o.in, o.transmit, o.reflect); },
          [&](const op::PhaseShift& o) { return phase_shift(state, o.sel, o.phi); },
          [&](const op::ModeUnitary& o) { return apply_mode_unitary(state, o.m0, o.m1, o.matrix); },
          [&](const op::SwapPaths& o) { return swap_paths(state, o.p, o.q); },
          [&](const op::QubusBs& o) { return qubus_bs(state, o.i, o.j); },
          [&](const op::QubusPhase& o) { return qubus_phase(state, o.beam, o.phi); },
          [&](const op::Xpm& o) { return xpm(state, o.sel, o.beam, o.theta); },
          [&](const op::AddBeam& o) { return state.with_beam(o.amp); },
          [&](const op::InjectPhoton& o) { return state.with_photon(o.qubit); },
          [&](const op::RegisterPath& o) { return state.with_path(o.path); },
      },
      instr);
}

HybridState apply_all(HybridState state, const std::vector<Instruction>& program) {
  for (const auto& instr : program) state = qubus::apply(state, instr);
  return state;
}

std::string describe(const Instruction& instr) {
  std::ostringstream os;
  std::visit(
      Overloaded{
          [&](const op::PhotonBs& o) { os << "photon_bs " << o.a << ' ' << o.b; },
          [&](const op::PbsHv& o) { os << "pbs_hv " << o.in << "->" << o.transmit << '/' << o.reflect; },
          [&](const op::PbsDiag& o) { os << "pbs_diag " << o.in << "->" << o.transmit << '/' << o.reflect; },
          [&](const op::PhaseShift& o) { os << "phase " << to_string(o.sel) << ' ' << o.phi; },
          [&](const op::ModeUnitary& o) { os << "unitary " << to_string(o.m0) << to_string(o.m1); },
          [&](const op::SwapPaths& o) { os << "swap_paths " << o.p << ' ' << o.q; },
          [&](const op::QubusBs& o) { os << "qubus_bs " << o.i << ' ' << o.j; },
          [&](const op::QubusPhase& o) { os << "qubus_phase " << o.beam << ' ' << o.phi; },
          [&](const op::Xpm& o) { os << "xpm " << to_string(o.sel) << " beam " << o.beam << ' ' << o.theta; },
          [&](const op::AddBeam& o) { os << "add_beam " << o.amp; },
          [&](const op::InjectPhoton& o) { os << "inject_photon " << o.qubit.path; },
          [&](const op::RegisterPath& o) { os << "register_path " << o.path; },
      },
      instr);
  return os.str();
}

}  // namespace qubus
