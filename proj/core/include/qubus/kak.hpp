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

#include <utility>

#include "qubus/linalg.hpp"

namespace qubus {

/// U = (a1 (x) a2) . N(ax, ay, az) . (a3 (x) a4) with
/// N = exp[i (ax XX + ay YY + az ZZ)]. Angles lie in the Weyl chamber
/// pi/4 >= ax >= ay >= |az|, with az >= 0 when ax = pi/4.
struct TwoQubitCanonicalParams {
  double ax = 0.0;
  double ay = 0.0;
  double az = 0.0;
  Matrix2 a1 = Matrix2::Identity();
  Matrix2 a2 = Matrix2::Identity();
  Matrix2 a3 = Matrix2::Identity();
  Matrix2 a4 = Matrix2::Identity();
};

Matrix4 canonical_gate(double ax, double ay, double az);
Matrix4 reconstruct(const TwoQubitCanonicalParams& p);

/// Maps |00>,|01>,|10>,|11> to the Bell states Phi+, Phi-, Psi+, Psi-, in
/// which N(ax, ay, az) is diagonal.
Matrix4 bell_transform();

/// The two diagonal blocks of B^dagger N B:
///   |H><H| (x) diag(e^{i(ax-ay+az)}, e^{-i(ax-ay-az)})
/// + |V><V| (x) diag(e^{i(ax+ay-az)}, e^{-i(ax+ay+az)}).
std::pair<Matrix2, Matrix2> canonical_controlled_diagonal(double ax, double ay, double az);

TwoQubitCanonicalParams kak_decompose(const Matrix4& u);

}  // namespace qubus
