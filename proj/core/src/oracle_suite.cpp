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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qubus/detection.hpp"
#include "qubus/gates.hpp"
#include "qubus/oracle.hpp"

namespace qubus {

namespace {

Complex gaussian(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2 * std::numbers::pi * u2), r * std::sin(2 * std::numbers::pi * u2)};
}

Complex disk(Rng& rng, double radius) {
  return std::polar(radius * std::sqrt(uniform01(rng)), 2 * std::numbers::pi * uniform01(rng));
}

PhotonQubit random_qubit(PathId path, Rng& rng) {
  Complex h = gaussian(rng), v = gaussian(rng);
  const double n = std::sqrt(std::norm(h) + std::norm(v));
  return {path, h / n, v / n};
}

// Photon A on path 0 or 1, photon B on path 2 or 3, beams anywhere in the
// disk of radius alpha; the branches are entangled across all three.
HybridState random_hybrid(Rng& rng, double alpha, std::size_t beams) {
  std::vector<Branch> branches;
  for (int i = 0; i < 6; ++i) {
    const Mode a{static_cast<PathId>(uniform01(rng) < 0.5 ? 0 : 1),
                 uniform01(rng) < 0.5 ? Pol::H : Pol::V};
    const Mode b{static_cast<PathId>(uniform01(rng) < 0.5 ? 2 : 3),
                 uniform01(rng) < 0.5 ? Pol::H : Pol::V};
    std::vector<Complex> q;
    for (std::size_t k = 0; k < beams; ++k) q.push_back(disk(rng, alpha));
    branches.push_back({gaussian(rng), PhotonConfig({a, b}), std::move(q)});
  }
  return normalized(HybridState::from_branches(std::move(branches), beams, {0, 1, 2, 3, 4, 5, 6, 7}));
}

HybridState filter_path(const HybridState& s, PathId path) {
  std::vector<Branch> kept;
  for (const auto& b : s.branches()) {
    if (b.config.count_on_path(path) == 1) kept.push_back(b);
  }
  return HybridState::from_branches(std::move(kept), s.beam_count(),
                                    {s.paths().begin(), s.paths().end()});
}

FockVector normalized_fock(const FockVector& v) { return fock_scaled(v, 1.0 / fock_norm(v)); }

double distribution_gap(const HybridState& fast, const FockVector& fock, BeamId beam, int cutoff) {
  const auto oracle = fock_number_distribution(fock, beam);
  std::vector<double> mine(oracle.size(), 0.0);
  for (const auto& o : enumerate_fock_outcomes(fast, beam, cutoff)) {
    mine[static_cast<std::size_t>(o.n)] = o.probability;
  }
  double gap = 0.0;
  for (std::size_t n = 0; n < oracle.size(); ++n) gap = std::max(gap, std::abs(mine[n] - oracle[n]));
  return gap;
}

OracleCheck element_check(const std::string& name, const HybridState& s, const Instruction& instr,
                          int cutoff) {
  const HybridState fast = apply(s, instr);
  const FockVector fock = fock_apply(fock_encode(s, cutoff), instr);
  return {name, compare(fast, fock), 0.0};
}

}  // namespace

std::vector<OracleCheck> oracle_equivalence_suite(double alpha, double theta, int cutoff,
                                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<OracleCheck> out;
  const HybridState s2 = random_hybrid(rng, alpha, 2);
  const HybridState s1 = random_hybrid(rng, alpha, 1);

  {
    const FockVector e2 = fock_encode(s2, cutoff);
    const HybridState other = random_hybrid(rng, alpha, 2);
    const FockVector eo = fock_encode(other, cutoff);
    const double gap = std::abs(inner(s2, other) - fock_inner(e2, eo)) +
                       std::abs(inner(s2, s2) - fock_inner(e2, e2));
    out.push_back({"encode inner products", gap, 0.0});
  }

  const Matrix2 u = [&] {
    // Random 2x2 unitary from one Gram-Schmidt step.
    Matrix2 m;
    m << gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng);
    Eigen::HouseholderQR<Matrix2> qr(m);
    return Matrix2(qr.householderQ());
  }();

  out.push_back(element_check("photon_bs", s2, op::PhotonBs{0, 1}, cutoff));
  out.push_back(element_check("pbs_hv", s2, op::PbsHv{0, 4, 5}, cutoff));
  out.push_back(element_check("pbs_diag", s2, op::PbsDiag{1, 4, 5}, cutoff));
  out.push_back(element_check("phase_shift", s2, op::PhaseShift{ModeSelector::v(0), 0.7}, cutoff));
  out.push_back(element_check("phase_shift any", s2, op::PhaseShift{ModeSelector::any(2), -1.1}, cutoff));
  out.push_back(element_check("mode_unitary", s2, op::ModeUnitary{{0, Pol::H}, {1, Pol::V}, u}, cutoff));
  out.push_back(element_check("swap_paths", s2, op::SwapPaths{0, 2}, cutoff));
  out.push_back(element_check("qubus_bs", s2, op::QubusBs{0, 1}, cutoff));
  out.push_back(element_check("qubus_bs reversed", s2, op::QubusBs{1, 0}, cutoff));
  out.push_back(element_check("qubus_phase", s2, op::QubusPhase{1, 0.4}, cutoff));
  out.push_back(element_check("xpm", s2, op::Xpm{ModeSelector::h(2), 0, theta}, cutoff));
  out.push_back(element_check("xpm any", s2, op::Xpm{ModeSelector::any(1), 1, theta}, cutoff));
  out.push_back(element_check("inject_photon", s2, op::InjectPhoton{random_qubit(6, rng)}, cutoff));
  out.push_back(element_check("add_beam", s1, op::AddBeam{std::polar(alpha, 0.3)}, cutoff));

  for (BeamId b = 0; b < 2; ++b) {
    const FockVector e = fock_encode(s2, cutoff);
    out.push_back({"measure beam " + std::to_string(b), 0.0, distribution_gap(s2, e, b, cutoff)});
  }

  const QubusResources res{alpha, theta};

  {  // C-path: entangler, every Fock outcome, feed-forward
    const std::vector<PhotonQubit> photons{random_qubit(0, rng), random_qubit(1, rng)};
    const HybridState in = HybridState::product(photons);
    const auto program =
        c_path_entangler(1, 2, {ModeSelector::v(0)}, {ModeSelector::h(0)}, 0, res);
    const HybridState fast = apply_all(in, program);
    const FockVector fock = fock_apply_all(fock_encode(in, cutoff), program);
    OracleCheck c{"c-path", compare(fast, fock), distribution_gap(fast, fock, 0, cutoff)};
    for (const auto& o : enumerate_fock_outcomes(fast, 0, cutoff)) {
      if (o.probability < 1e-12) continue;
      const auto fix = c_path_correction(o.n, 1, 2);
      const HybridState f = apply_all(o.state, fix);
      const FockVector g = fock_apply_all(normalized_fock(fock_project(fock, 0, o.n)), fix);
      c.distance = std::max(c.distance, compare(f, g));
    }
    out.push_back(c);
  }

  {  // Merging: entangler, every Fock outcome, interferometer and each port
    const PhotonQubit ctl = random_qubit(0, rng);
    const PhotonQubit t1 = random_qubit(1, rng), t2 = random_qubit(2, rng);
    std::vector<Branch> br;
    for (auto [cp, ca] : {std::pair{Pol::H, ctl.h}, std::pair{Pol::V, ctl.v}}) {
      const PhotonQubit& t = cp == Pol::H ? t1 : t2;
      for (auto [tp, ta] : {std::pair{Pol::H, t.h}, std::pair{Pol::V, t.v}}) {
        br.push_back({ca * ta, PhotonConfig({{0, cp}, {t.path, tp}}), {}});
      }
    }
    const HybridState in = HybridState::from_branches(std::move(br), 0, {0, 1, 2, 3});
    std::vector<Instruction> program{op::InjectPhoton{PhotonQubit::plus(3)}};
    const auto ent = merging_entangler(1, 2, 3, 0, res);
    program.insert(program.end(), ent.begin(), ent.end());
    const HybridState fast = apply_all(in, program);
    const FockVector fock = fock_apply_all(fock_encode(in, cutoff), program);
    OracleCheck c{"merging", compare(fast, fock), distribution_gap(fast, fock, 0, cutoff)};
    const std::vector<PathId> ports{4, 5, 6, 7};
    for (const auto& o : enumerate_fock_outcomes(fast, 0, cutoff)) {
      if (o.probability < 1e-12) continue;
      auto fix = merging_entangler_correction(o.n, 3, AncillaSign::Plus);
      const auto inter = merging_interferometer(1, 2, ports);
      fix.insert(fix.end(), inter.begin(), inter.end());
      const HybridState f = apply_all(o.state, fix);
      const FockVector g = fock_apply_all(normalized_fock(fock_project(fock, 0, o.n)), fix);
      for (int port = 0; port < 4; ++port) {
        const PathId q = ports[static_cast<std::size_t>(port)];
        const HybridState fp = filter_path(f, q);
        const FockVector gp = fock_filter_path(g, q, true);
        const double pf = std::pow(norm(fp), 2), pg = std::pow(fock_norm(gp), 2);
        c.distribution_error = std::max(c.distribution_error, std::abs(pf - pg));
        if (pf < 1e-12) continue;
        const auto loc = merging_locate_correction(port, 3, ModeSelector::v(0));
        c.distance = std::max(c.distance, compare(apply_all(normalized(fp), loc),
                                                  fock_apply_all(normalized_fock(gp), loc)));
      }
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace qubus
