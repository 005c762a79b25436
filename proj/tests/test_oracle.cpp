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

using namespace qubus;
using namespace qubus::test;

namespace {

HybridState beams(std::vector<Complex> amps, std::vector<PhotonQubit> photons = {}) {
  return HybridState::product(photons, amps);
}

/// A small entangled state over two photons and two beams with |beta| <= 2.
HybridState random_hybrid(Rng& rng) {
  std::vector<Branch> bs;
  const auto amps = random_vector(4, rng);
  const auto betas = random_vector(8, rng);
  const Mode modes[4][2] = {{{0, Pol::H}, {2, Pol::H}}, {{0, Pol::V}, {2, Pol::V}},
                            {{1, Pol::H}, {2, Pol::V}}, {{1, Pol::V}, {3, Pol::H}}};
  for (int i = 0; i < 4; ++i) {
    bs.push_back(branch(amps(i), {modes[i][0], modes[i][1]},
                        {2.0 * betas(2 * i), 2.0 * betas(2 * i + 1)}));
  }
  return HybridState::from_branches(std::move(bs), 2);
}

}  // namespace

TEST_CASE("encoding of coherent amplitudes") {
  const auto vac = fock_encode(beams({0.0}), 20);
  REQUIRE(vac.blocks.size() == 1);
  const auto& v0 = vac.blocks.begin()->second;
  CHECK(near(v0[0], 1.0));
  for (std::size_t n = 1; n < v0.size(); ++n) CHECK(v0[n] == Complex{});

  const auto one = fock_encode(beams({1.0}), 30);
  const auto& a = one.blocks.begin()->second;
  double fact = 1.0;
  for (std::size_t n = 0; n <= 30; ++n) {
    if (n > 0) fact *= static_cast<double>(n);
    CHECK(near(a[n], std::exp(-0.5) / std::sqrt(fact), 1e-15));
  }
  CHECK(one.truncation < 1e-30);
  CHECK_THROWS_AS(fock_encode(beams({5.0}), 20), CutoffTooSmall);
  CHECK_THROWS_AS(fock_encode(beams({0.0}), 65), PreconditionViolation);
  CHECK_THROWS_AS(fock_encode(beams({0.0, 0.0, 0.0}), 10), PreconditionViolation);
}

TEST_CASE("encoded inner products match the branch representation") {
  Rng rng(61);
  for (int i = 0; i < 5; ++i) {
    const auto x = random_hybrid(rng);
    const auto y = random_hybrid(rng);
    CHECK(near(fock_inner(fock_encode(x, 40), fock_encode(y, 40)), inner(x, y), 1e-8));
    CHECK(fock_norm(fock_encode(x, 40)) == doctest::Approx(norm(x)).epsilon(1e-8));
  }
}

TEST_CASE("oracle element actions") {
  const auto s = beams({0.0}, {PhotonQubit::plus(0)});
  const auto x = fock_apply(fock_encode(s, 20), op::Xpm{ModeSelector::any(0), 0, 0.4});
  CHECK(compare(s, x) <= 1e-15);

  const auto pair = beams({1.0, 1.0});
  const auto split = fock_apply(fock_encode(pair, 40), op::QubusBs{0, 1});
  CHECK(compare(beams({0.0, std::numbers::sqrt2}), split) <= 1e-8);
  CHECK(split.truncation < 1e-8);

  Rng rng(62);
  const auto r = random_hybrid(rng).with_paths({4, 5, 6});
  const std::vector<Instruction> prog{op::PhotonBs{0, 1},        op::PbsHv{2, 2, 4},
                                      op::PbsDiag{3, 5, 6},      op::PhaseShift{ModeSelector::v(0), 0.3},
                                      op::QubusPhase{1, -0.4},   op::Xpm{ModeSelector::h(1), 0, 0.5},
                                      op::SwapPaths{4, 5},       op::QubusBs{1, 0}};
  for (const auto& i : prog) {
    CHECK(compare(apply(r, i), fock_apply(fock_encode(r, 40), i)) <= 1e-8);
  }
  CHECK(compare(apply_all(r, prog), fock_apply_all(fock_encode(r, 40), prog)) <= 1e-8);
}

TEST_CASE("oracle C-path pipeline") {
  Rng rng(63);
  const auto in = HybridState::logical(std::vector<PathId>{0, 1}, to_std(random_vector(4, rng))).with_path(2);
  const auto prog = c_path_entangler(1, 2, {ModeSelector::v(0)}, {ModeSelector::h(0)}, 0, {1.5, 0.5});
  const auto fast = apply_all(in, prog);
  const auto slow = fock_apply_all(fock_encode(in, 40), prog);
  CHECK(compare(fast, slow) <= 1e-6);

  // Projection on n, feed-forward, and comparison per outcome.
  for (const auto& o : enumerate_fock_outcomes(fast, 0)) {
    if (o.n > 12) break;
    const auto corr = c_path_correction(o.n, 1, 2);
    const auto p = fock_project(slow, 0, o.n);
    CHECK(fock_norm(p) * fock_norm(p) == doctest::Approx(o.probability).epsilon(1e-8));
    const auto unit = fock_scaled(p, 1.0 / std::sqrt(o.probability));
    CHECK(compare(apply_all(o.state, corr), fock_apply_all(unit, corr)) <= 1e-6);
  }
}

TEST_CASE("compare distances") {
  const auto s = beams({0.5}, {PhotonQubit::horizontal(0)});
  CHECK(compare(s, fock_encode(s, 30)) <= 1e-12);
  const auto t = beams({0.5}, {PhotonQubit::vertical(0)});
  CHECK(compare(s, fock_encode(t, 30)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(compare(beams({0.5, 0.5}), fock_encode(s, 30)), ShapeMismatch);
}

TEST_CASE("filters and scaling") {
  const double r = 1.0 / std::numbers::sqrt2;
  const auto s = HybridState::from_branches({branch(r, {{0, Pol::H}}, {Complex(0.3)}),
                                             branch(r, {{1, Pol::H}}, {Complex(0.3)})},
                                            1);
  const auto f = fock_encode(s, 20);
  CHECK(fock_norm(fock_filter_path(f, 0, true)) == doctest::Approx(r).epsilon(1e-12));
  CHECK(fock_norm(fock_filter_path(f, 0, false)) == doctest::Approx(r).epsilon(1e-12));
  CHECK(fock_norm(fock_scaled(f, 2.0)) == doctest::Approx(2.0).epsilon(1e-12));
  const auto d = fock_number_distribution(f, 0);
  CHECK(d[0] == doctest::Approx(std::exp(-0.09)).epsilon(1e-12));
}

TEST_CASE("equivalence suite at one grid point") {
  const auto checks = oracle_equivalence_suite(1.5, 0.5, 40, 3);
  CHECK(checks.size() == 19);
  for (const auto& c : checks) {
    INFO(c.name);
    CHECK(c.distance <= 1e-6);
    CHECK(c.distribution_error <= 1e-8);
  }
}
