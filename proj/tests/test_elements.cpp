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
#include "qubus/elements.hpp"
#include "qubus/errors.hpp"

using namespace qubus;
using namespace qubus::test;

namespace {
constexpr Pol H = Pol::H;
constexpr Pol V = Pol::V;
const double r2 = 1.0 / std::numbers::sqrt2;

HybridState photon(PhotonQubit q, std::initializer_list<PathId> extra = {}) {
  return HybridState::product(std::vector<PhotonQubit>{q}).with_paths(extra);
}

Complex beam_of(const HybridState& s, std::size_t branch, BeamId b) {
  return s.branches().at(branch).qubus.at(b);
}
}  // namespace

TEST_CASE("photon beam splitter") {
  const auto s = photon(PhotonQubit::horizontal(1), {2});
  const auto out = photon_bs(s, 1, 2);
  CHECK(near(amplitude(out, {{1, H}}), r2));
  CHECK(near(amplitude(out, {{2, H}}), r2));

  const auto back = canonicalize(photon_bs(out, 1, 2));
  CHECK(near(amplitude(back, {{1, H}}), 1.0));
  CHECK(near(amplitude(back, {{2, H}}), 0.0));

  // Path b picks up the minus sign.
  const auto b = canonicalize(photon_bs(photon(PhotonQubit::horizontal(2), {1}), 1, 2));
  CHECK(near(amplitude(b, {{1, H}}), r2));
  CHECK(near(amplitude(b, {{2, H}}), -r2));

  for (const auto& q : {PhotonQubit::plus(2), PhotonQubit::minus(2)}) {
    const auto split = canonicalize(photon_bs(photon(q, {3}), 2, 3));
    CHECK(near(amplitude(split, {{2, H}}), r2 * q.h));
    CHECK(near(amplitude(split, {{2, V}}), r2 * q.v));
    CHECK(near(amplitude(split, {{3, H}}), r2 * q.h));
    CHECK(near(amplitude(split, {{3, V}}), r2 * q.v));
  }
  CHECK_THROWS_AS(photon_bs(s, 1, 1), PreconditionViolation);
  CHECK_THROWS_AS(photon_bs(s, 1, 7), UnknownPath);
}

TEST_CASE("polarizing beam splitter in the H/V basis") {
  const auto h = pbs_hv(photon(PhotonQubit::horizontal(1), {2}), 1, 1, 2);
  CHECK(near(amplitude(h, {{1, H}}), 1.0));
  const auto v = pbs_hv(photon(PhotonQubit::vertical(1), {2}), 1, 1, 2);
  CHECK(near(amplitude(v, {{2, V}}), 1.0));
  const PhotonQubit q{1, 0.6, Complex(0.0, 0.8)};
  const auto m = pbs_hv(photon(q, {2}), 1, 1, 2);
  CHECK(near(amplitude(m, {{1, H}}), q.h));
  CHECK(near(amplitude(m, {{2, V}}), q.v));
}

TEST_CASE("polarizing beam splitter in the diagonal basis") {
  const auto p = canonicalize(pbs_diag(photon(PhotonQubit::plus(2), {5, 6}), 2, 5, 6));
  CHECK(near(amplitude(p, {{5, H}}), r2));
  CHECK(near(amplitude(p, {{5, V}}), r2));
  CHECK(p.branches().size() == 2);

  const auto m = canonicalize(pbs_diag(photon(PhotonQubit::minus(2), {5, 6}), 2, 5, 6));
  CHECK(near(amplitude(m, {{6, H}}), r2));
  CHECK(near(amplitude(m, {{6, V}}), -r2));
  CHECK(m.branches().size() == 2);

  const auto h = canonicalize(pbs_diag(photon(PhotonQubit::horizontal(2), {5, 6}), 2, 5, 6));
  double on5 = 0.0, on6 = 0.0;
  for (const auto& b : h.branches()) (b.config.count_on_path(5) ? on5 : on6) += std::norm(b.amp);
  CHECK(on5 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(on6 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(pbs_diag(h, 5, 6, 6), PreconditionViolation);
}

TEST_CASE("phase shifter") {
  const auto s = photon(PhotonQubit::plus(5));
  const auto pi = phase_shift(s, ModeSelector::any(5), std::numbers::pi);
  CHECK(near(amplitude(pi, {{5, H}}), -r2));
  CHECK(near(amplitude(pi, {{5, V}}), -r2));
  CHECK(state_fidelity(phase_shift(s, ModeSelector::any(5), 0.0), s) == doctest::Approx(1.0));
  const auto twice = phase_shift(pi, ModeSelector::any(5), std::numbers::pi);
  CHECK(near(amplitude(twice, {{5, H}}), r2));
  const auto v = phase_shift(s, ModeSelector::v(5), std::numbers::pi);
  CHECK(near(amplitude(v, {{5, H}}), r2));
  CHECK(near(amplitude(v, {{5, V}}), -r2));
}

TEST_CASE("qubus beam splitter") {
  const auto pair = [](Complex a, Complex b) {
    return HybridState::product({}, std::vector<Complex>{a, b});
  };
  const double alpha = 1.7, theta = 0.4;
  const auto same = qubus_bs(pair(alpha, alpha), 0, 1);
  CHECK(near(beam_of(same, 0, 0), 0.0));
  CHECK(near(beam_of(same, 0, 1), std::numbers::sqrt2 * alpha));

  const auto rot = qubus_bs(pair(std::polar(alpha, theta), std::polar(alpha, -theta)), 0, 1);
  CHECK(near(beam_of(rot, 0, 0), Complex(0.0, std::numbers::sqrt2 * alpha * std::sin(theta))));
  CHECK(near(beam_of(rot, 0, 1), std::numbers::sqrt2 * alpha * std::cos(theta)));

  const auto vac = qubus_bs(pair(0.0, 0.0), 0, 1);
  CHECK(near(beam_of(vac, 0, 0), 0.0));
  CHECK(near(beam_of(vac, 0, 1), 0.0));
  CHECK_THROWS_AS(qubus_bs(vac, 0, 0), PreconditionViolation);
  CHECK_THROWS_AS(qubus_bs(vac, 0, 2), UnknownBeam);
}

TEST_CASE("qubus phase shifter") {
  const auto s = HybridState::product({}, std::vector<Complex>{2.0});
  CHECK(near(beam_of(qubus_phase(s, 0, -0.3), 0, 0), std::polar(2.0, -0.3)));
  CHECK(near(beam_of(qubus_phase(s, 0, 0.0), 0, 0), 2.0));
  CHECK(near(beam_of(qubus_phase(s, 0, 2.0 * std::numbers::pi), 0, 0), 2.0, 1e-12));
}

TEST_CASE("cross-phase modulation") {
  const double alpha = 3.0, theta = 0.2;
  const auto on = HybridState::product(std::vector<PhotonQubit>{PhotonQubit::vertical(1)},
                                       std::vector<Complex>{alpha});
  CHECK(near(beam_of(xpm(on, ModeSelector::v(1), 0, theta), 0, 0), std::polar(alpha, theta)));

  const auto off = HybridState::product(std::vector<PhotonQubit>{PhotonQubit::horizontal(1)},
                                        std::vector<Complex>{alpha});
  CHECK(near(beam_of(xpm(off, ModeSelector::v(1), 0, theta), 0, 0), alpha));

  const PhotonQubit q{1, 0.6, 0.8};
  const auto sup = canonicalize(xpm(HybridState::product(std::vector<PhotonQubit>{q}, std::vector<Complex>{alpha}),
                                    ModeSelector::v(1), 0, theta));
  REQUIRE(sup.branches().size() == 2);
  for (const auto& b : sup.branches()) {
    if (b.config.occupied({1, H})) {
      CHECK(near(b.amp, 0.6));
      CHECK(near(b.qubus[0], alpha));
    } else {
      CHECK(near(b.amp, 0.8));
      CHECK(near(b.qubus[0], std::polar(alpha, theta)));
    }
  }
  CHECK_THROWS_AS(xpm(on, ModeSelector::v(1), 3, theta), UnknownBeam);
}

TEST_CASE("two photons on one selected path are rejected") {
  const auto both = HybridState::from_branches({branch(1.0, {{1, H}, {1, V}}, {Complex(1.0)})}, 1);
  CHECK_THROWS_AS(xpm(both, ModeSelector::any(1), 0, 0.1), MultiPhotonCollision);
  CHECK(ModeSelector::v(1).matches(both.branches()[0].config));
}
