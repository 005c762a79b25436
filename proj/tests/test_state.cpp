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


#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "qubus/errors.hpp"
#include "qubus/gates.hpp"
#include "qubus/oracle.hpp"
#include "qubus/state.hpp"

using namespace qubus;
using namespace qubus::test;

namespace {
constexpr Pol H = Pol::H;
constexpr Pol V = Pol::V;
}  // namespace

TEST_CASE("coherent overlap closed form") {
  CHECK(std::abs(coherent_overlap({0.7, -0.2}, {0.7, -0.2}) - 1.0) < 1e-15);
  CHECK(coherent_overlap(0.0, 2.0).real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(coherent_overlap(0.0, 2.0).real() == doctest::Approx(0.135335).epsilon(1e-6));

  const Complex o = coherent_overlap(1.0, Complex(0.0, 1.0));
  CHECK(near(o, std::exp(Complex(-1.0, 1.0)), 1e-15));
  CHECK(o.real() == doctest::Approx(0.19877).epsilon(1e-4));
  CHECK(o.imag() == doctest::Approx(0.30956).epsilon(1e-4));
}

TEST_CASE("coherent overlap agrees with the truncated Fock inner product") {
  const auto beam = [](Complex a) {
    return HybridState::product({}, std::vector<Complex>{a});
  };
  const Complex o = fock_inner(fock_encode(beam(1.0), 60), fock_encode(beam(Complex(0.0, 1.0)), 60));
  CHECK(near(o, coherent_overlap(1.0, Complex(0.0, 1.0)), 1e-14));
}

TEST_CASE("norm of branch superpositions") {
  const auto one = HybridState::product(std::vector<PhotonQubit>{PhotonQubit::horizontal(0)});
  CHECK(norm(one) == doctest::Approx(1.0).epsilon(1e-15));

  const double r = 1.0 / std::numbers::sqrt2;
  const auto cat = HybridState::from_branches(
      {branch(r, {{0, H}}, {Complex(2.0)}), branch(r, {{0, H}}, {Complex(-2.0)})}, 1);
  CHECK(norm(cat) == doctest::Approx(std::sqrt(1.0 + std::exp(-8.0))).epsilon(1e-14));
  CHECK(norm(cat) == doctest::Approx(1.000168).epsilon(1e-6));
  CHECK(fock_norm(fock_encode(cat, 40)) == doctest::Approx(norm(cat)).epsilon(1e-12));
}

TEST_CASE("the C-path entangler output is normalized") {
  Rng rng(3);
  const auto v = random_vector(4, rng);
  const auto amps = to_std(v);
  const auto in = HybridState::logical(std::vector<PathId>{0, 1}, amps);
  const auto out = apply_all(in.with_path(2), c_path_entangler(1, 2, {ModeSelector::v(0)},
                                                               {ModeSelector::h(0)}, 0, {2.0, 0.5}));
  CHECK(norm(out) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.beam_count() == 2);
}

TEST_CASE("canonicalize merges equal branches and drops negligible ones") {
  const auto s = HybridState::from_branches(
      {branch(0.5, {{0, H}}, {Complex(1.0)}), branch(0.5, {{0, H}}, {Complex(1.0)})}, 1);
  const auto c = canonicalize(s);
  REQUIRE(c.branches().size() == 1);
  CHECK(near(c.branches()[0].amp, 1.0));

  const auto t = HybridState::from_branches({branch(1.0, {{0, H}}), branch(1e-18, {{0, V}})}, 0);
  CHECK(canonicalize(t, 1e-12).branches().size() == 1);

  // Branches with distinguishable beams stay apart.
  const auto u = HybridState::from_branches(
      {branch(0.5, {{0, H}}, {Complex(1.0)}), branch(0.5, {{0, H}}, {Complex(-1.0)})}, 1);
  CHECK(canonicalize(u).branches().size() == 2);
}

TEST_CASE("the modified second controlled path of the Toffoli has eight branches per target polarization") {
  // Controls c1 on path 1 and c2 on path 2 (split onto 2/3 by the first
  // controlled path), target on path 4 split onto 4/5 by the second one.
  Rng rng(11);
  const auto v = random_vector(4, rng);
  const auto in = HybridState::logical(std::vector<PathId>{1, 2}, to_std(v)).with_paths({3, 4, 5});
  const QubusResources res{60.0, 0.1};
  const GateResult first = c_path(in, 1, 2, 3, res);
  REQUIRE(!first.records.empty());
  const auto entangle = [&](const HybridState& s) {
    return canonicalize(apply_all(s, c_path_entangler(4, 5, {ModeSelector::v(3)},
                                                      {ModeSelector::h(1), ModeSelector::h(3)},
                                                      s.beam_count(), res)));
  };
  for (const auto& rec : first.records) {
    const auto fixed = entangle(rec.state.with_photon(PhotonQubit::horizontal(4)));
    CHECK(fixed.branches().size() == 8);
    for (PathId cp : {2, 3}) {
      for (Pol p1 : {H, V}) {
        for (Pol p2 : {H, V}) {
          // c1 H routes c2 onto path 2, c1 V onto path 3.
          if ((p1 == H) != (cp == 2)) continue;
          CHECK(branches_on(fixed, {{1, p1}, {cp, p2}, {4, H}}) == 1);
          CHECK(branches_on(fixed, {{1, p1}, {cp, p2}, {5, H}}) == 1);
        }
      }
    }
    const auto generic = entangle(rec.state.with_photon({4, 0.6, Complex(0.0, 0.8)}));
    CHECK(generic.branches().size() == 16);
  }
}

TEST_CASE("mode unitaries") {
  const auto s = HybridState::product(std::vector<PhotonQubit>{PhotonQubit::horizontal(5)});
  const auto x = apply_mode_unitary(s, {5, H}, {5, V}, gates2::pauli_x());
  CHECK(near(amplitude(x, {{5, V}}), 1.0));
  CHECK(near(amplitude(x, {{5, H}}), 0.0));

  const PhotonQubit q{2, Complex(0.3, 0.1), std::sqrt(1.0 - 0.1)};
  const auto t = HybridState::product(std::vector<PhotonQubit>{q});
  CHECK(state_fidelity(apply_photon_unitary(t, 2, gates2::identity()), t) ==
        doctest::Approx(1.0).epsilon(1e-15));
  const auto hh = apply_photon_unitary(apply_photon_unitary(t, 2, gates2::hadamard()), 2, gates2::hadamard());
  CHECK(near(amplitude(hh, {{2, H}}), q.h));
  CHECK(near(amplitude(hh, {{2, V}}), q.v));

  Matrix2 bad;
  bad << 1, 1, 0, 1;
  CHECK_THROWS_AS(apply_photon_unitary(t, 2, bad), NonUnitaryMatrix);
}

TEST_CASE("path swaps") {
  const auto s = HybridState::product(std::vector<PhotonQubit>{PhotonQubit::horizontal(3)}).with_path(5);
  const auto w = swap_paths(s, 3, 5);
  CHECK(near(amplitude(w, {{5, H}}), 1.0));
  CHECK(state_fidelity(swap_paths(w, 3, 5), s) == doctest::Approx(1.0).epsilon(1e-15));
  const auto e = s.with_paths({7, 8});
  CHECK(state_fidelity(swap_paths(e, 7, 8), e) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(swap_paths(s, 3, 9), UnknownPath);
}

TEST_CASE("registry bookkeeping") {
  const auto s = HybridState::product(
      std::vector<PhotonQubit>{PhotonQubit::plus(0), PhotonQubit::vertical(2)},
      std::vector<Complex>{Complex(1.0, 0.5)});
  CHECK(s.photon_count() == 2);
  CHECK(s.fresh_path() == 1);
  CHECK(s.has_path(2));
  CHECK_THROWS_AS(s.require_path(4), UnknownPath);
  CHECK_THROWS_AS(s.require_beam(1), UnknownBeam);
  CHECK_THROWS_AS(s.with_photon(PhotonQubit::horizontal(2)), MultiPhotonCollision);

  const auto dropped = s.without_product_beam(0);
  REQUIRE(dropped.has_value());
  CHECK(dropped->beam_count() == 0);

  const auto ent = HybridState::from_branches(
      {branch(0.6, {{0, H}}, {Complex(1.0)}), branch(0.8, {{0, V}}, {Complex(-1.0)})}, 1);
  CHECK_FALSE(ent.without_product_beam(0).has_value());
}

TEST_CASE("fidelity with the beams traced out") {
  const double r = 1.0 / std::numbers::sqrt2;
  const auto ideal = HybridState::from_branches({branch(r, {{0, H}}), branch(r, {{0, V}})}, 0);
  const auto product = HybridState::from_branches(
      {branch(r, {{0, H}}, {Complex(3.0)}), branch(r, {{0, V}}, {Complex(3.0)})}, 1);
  CHECK(fidelity_tracing_beams(product, ideal) == doctest::Approx(1.0).epsilon(1e-14));
  // Entangled with orthogonal-ish beams: the photon is left mixed.
  const auto ent = HybridState::from_branches(
      {branch(r, {{0, H}}, {Complex(5.0)}), branch(r, {{0, V}}, {Complex(-5.0)})}, 1);
  CHECK(fidelity_tracing_beams(ent, ideal) == doctest::Approx(0.5).epsilon(1e-12));
}
