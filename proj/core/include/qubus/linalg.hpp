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

#include <Eigen/Dense>

#include "qubus/detection.hpp"
#include "qubus/state.hpp"

namespace qubus {

using Matrix4 = Eigen::Matrix4cd;
using MatrixX = Eigen::MatrixXcd;

namespace gates2 {
Matrix2 identity();
Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();
Matrix2 hadamard();
Matrix2 phase(double phi);  // diag(1, e^{i phi})
}  // namespace gates2

Matrix4 kron(const Matrix2& a, const Matrix2& b);
MatrixX kron(const MatrixX& a, const MatrixX& b);

/// Split a 4x4 Kronecker product into its 2x2 factors (a (x) b = k).
std::pair<Matrix2, Matrix2> kron_factor(const Matrix4& k);

/// Haar-random unitary of dimension n.
MatrixX random_unitary(int n, Rng& rng);

/// Frobenius distance between a and b after removing the best global phase.
double phase_insensitive_distance(const MatrixX& a, const MatrixX& b);

/// Standard two- and three-qubit reference matrices; qubit 0 is the most
/// significant bit, H = |0>, V = |1>.
Matrix4 cnot_matrix();
Matrix4 cz_matrix();
Matrix4 swap_matrix();
Matrix4 controlled_pair_matrix(const Matrix2& u1, const Matrix2& u2);
MatrixX fredkin_matrix();
/// Flip of the last qubit when all `controls` leading qubits are |1>.
MatrixX multi_controlled_x_matrix(int controls);

}  // namespace qubus
