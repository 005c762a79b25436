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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qubus/linalg.hpp"
#include "qubus/state.hpp"

namespace qubus::test {

inline PhotonConfig config(std::vector<Mode> modes) { return PhotonConfig(std::move(modes)); }

inline Branch branch(Complex amp, std::vector<Mode> modes, std::vector<Complex> beams = {}) {
  return {amp, PhotonConfig(std::move(modes)), std::move(beams)};
}

/// Total amplitude on one photon configuration (beams ignored).
inline Complex amplitude(const HybridState& s, const std::vector<Mode>& modes) {
  const PhotonConfig c(modes);
  Complex acc = 0.0;
  for (const auto& b : s.branches()) {
    if (b.config == c) acc += b.amp;
  }
  return acc;
}

inline std::size_t branches_on(const HybridState& s, const std::vector<Mode>& modes) {
  const PhotonConfig c(modes);
  std::size_t n = 0;
  for (const auto& b : s.branches()) n += b.config == c ? 1 : 0;
  return n;
}

inline Eigen::VectorXcd random_vector(int dim, Rng& rng) { return random_unitary(dim, rng).col(0); }

inline std::vector<Complex> to_std(const Eigen::VectorXcd& v) {
  return std::vector<Complex>(v.data(), v.data() + v.size());
}

inline bool near(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace qubus::test
