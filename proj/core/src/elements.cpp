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

#include "qubus/elements.hpp"

#include <cmath>
#include <numbers>

#include "qubus/errors.hpp"

namespace qubus {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

HybridState rebuild(const HybridState& like, std::vector<Branch> branches) {
  return canonicalize(HybridState::from_branches(std::move(branches), like.beam_count(), like.paths()));
}

}  // namespace

bool ModeSelector::matches(const PhotonConfig& config) const {
  int hits = 0;
  for (const auto& m : config.modes()) {
    if (m.path != path) continue;
    if (pol == PolFilter::Any || (pol == PolFilter::H) == (m.pol == Pol::H)) ++hits;
  }
  if (hits > 1) throw MultiPhotonCollision("selector on path " + std::to_string(path) + " matches two photons");
  return hits == 1;
}

std::string to_string(const ModeSelector& s) {
  const char* p = s.pol == PolFilter::H ? "H" : s.pol == PolFilter::V ? "V" : "*";
  return "(" + std::to_string(s.path) + "," + p + ")";
}

HybridState photon_bs(const HybridState& state, PathId a, PathId b) {
  state.require_path(a);
  state.require_path(b);
  if (a == b) throw PreconditionViolation("beam splitter needs two distinct paths");
  std::vector<Branch> out;
  out.reserve(state.branches().size() * 2);
  for (const auto& br : state.branches()) {
    const int na = br.config.count_on_path(a);
    const int nb = br.config.count_on_path(b);
    if (na + nb > 1) throw MultiPhotonCollision("two photons enter one beam splitter");
    if (na + nb == 0) {
      out.push_back(br);
      continue;
    }
    const Mode src = *br.config.on_path(na == 1 ? a : b);
    const double sign_b = (na == 1) ? 1.0 : -1.0;
    out.push_back({br.amp * kInvSqrt2, br.config.moved(src, {a, src.pol}), br.qubus});
    out.push_back({br.amp * (sign_b * kInvSqrt2), br.config.moved(src, {b, src.pol}), br.qubus});
  }
  return rebuild(state, std::move(out));
}

HybridState pbs_hv(const HybridState& state, PathId in, PathId transmit, PathId reflect) {
  state.require_path(in);
  state.require_path(transmit);
  state.require_path(reflect);
  std::vector<Branch> out;
  out.reserve(state.branches().size());
  for (const auto& br : state.branches()) {
    auto m = br.config.on_path(in);
    if (!m) {
      if (br.config.count_on_path(in) > 1) throw MultiPhotonCollision("two photons enter one PBS");
      out.push_back(br);
      continue;
    }
    const Mode dst{m->pol == Pol::H ? transmit : reflect, m->pol};
    out.push_back({br.amp, br.config.moved(*m, dst), br.qubus});
  }
  return rebuild(state, std::move(out));
}

HybridState pbs_diag(const HybridState& state, PathId in, PathId transmit, PathId reflect) {
  state.require_path(in);
  state.require_path(transmit);
  state.require_path(reflect);
  if (transmit == reflect) throw PreconditionViolation("PBS outputs must differ");
  std::vector<Branch> out;
  out.reserve(state.branches().size() * 4);
  for (const auto& br : state.branches()) {
    auto m = br.config.on_path(in);
    if (!m) {
      if (br.config.count_on_path(in) > 1) throw MultiPhotonCollision("two photons enter one PBS");
      out.push_back(br);
      continue;
    }
    // <+|H> = <-|H> = 1/sqrt2, <+|V> = 1/sqrt2, <-|V> = -1/sqrt2; then
    // |+>_t = (|t,H>+|t,V>)/sqrt2 and |->_r = (|r,H>-|r,V>)/sqrt2.
    const double minus_weight = (m->pol == Pol::H) ? 0.5 : -0.5;
    const PhotonConfig rest = br.config.without(*m);
    out.push_back({br.amp * 0.5, rest.with({transmit, Pol::H}), br.qubus});
    out.push_back({br.amp * 0.5, rest.with({transmit, Pol::V}), br.qubus});
    out.push_back({br.amp * minus_weight, rest.with({reflect, Pol::H}), br.qubus});
    out.push_back({br.amp * -minus_weight, rest.with({reflect, Pol::V}), br.qubus});
  }
  return rebuild(state, std::move(out));
}

HybridState phase_shift(const HybridState& state, const ModeSelector& sel, double phi) {
  state.require_path(sel.path);
  const Complex f = std::polar(1.0, phi);
  std::vector<Branch> out = state.branches();
  for (auto& br : out) {
    if (sel.matches(br.config)) br.amp *= f;
  }
  return rebuild(state, std::move(out));
}

HybridState qubus_bs(const HybridState& state, BeamId i, BeamId j) {
  state.require_beam(i);
  state.require_beam(j);
  if (i == j) throw PreconditionViolation("qubus beam splitter needs two distinct beams");
  std::vector<Branch> out = state.branches();
  for (auto& br : out) {
    const Complex ai = br.qubus[i];
    const Complex aj = br.qubus[j];
    br.qubus[i] = (ai - aj) * kInvSqrt2;
    br.qubus[j] = (ai + aj) * kInvSqrt2;
  }
  return rebuild(state, std::move(out));
}

HybridState qubus_phase(const HybridState& state, BeamId i, double phi) {
  state.require_beam(i);
  const Complex f = std::polar(1.0, phi);
  std::vector<Branch> out = state.branches();
  for (auto& br : out) br.qubus[i] *= f;
  return rebuild(state, std::move(out));
}

HybridState xpm(const HybridState& state, const ModeSelector& sel, BeamId beam, double theta) {
  state.require_beam(beam);
  state.require_path(sel.path);
  const Complex f = std::polar(1.0, theta);
  std::vector<Branch> out = state.branches();
  for (auto& br : out) {
    if (sel.matches(br.config)) br.qubus[beam] *= f;
  }
  return rebuild(state, std::move(out));
}

}  // namespace qubus
