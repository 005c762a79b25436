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

#include "qubus/linalg.hpp"

#include <cmath>
#include <numbers>

namespace qubus {

namespace gates2 {
Matrix2 identity() { return Matrix2::Identity(); }
Matrix2 pauli_x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}
Matrix2 pauli_y() {
  Matrix2 m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
Matrix2 pauli_z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}
Matrix2 hadamard() {
  Matrix2 m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}
Matrix2 phase(double phi) {
  Matrix2 m;
  m << 1, 0, 0, std::polar(1.0, phi);
  return m;
}
}  // namespace gates2

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return k;
}

MatrixX kron(const MatrixX& a, const MatrixX& b) {
  MatrixX k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

std::pair<Matrix2, Matrix2> kron_factor(const Matrix4& k) {
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double n = k.block<2, 2>(2 * i, 2 * j).norm();
      if (n > best) {
        best = n;
        bi = i;
        bj = j;
      }
    }
  }
  const Matrix2 block = k.block<2, 2>(2 * bi, 2 * bj);
  const Matrix2 b = block / std::sqrt(std::abs(block.determinant()));
  Matrix2 a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = (b.adjoint() * k.block<2, 2>(2 * i, 2 * j)).trace() / 2.0;
  return {a, b};
}

MatrixX random_unitary(int n, Rng& rng) {
  MatrixX g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // Box-Muller from the portable uniform stream.
      const double u1 = 1.0 - uniform01(rng);
      const double u2 = uniform01(rng);
      const double r = std::sqrt(-2.0 * std::log(u1));
      g(i, j) = Complex(r * std::cos(2 * std::numbers::pi * u2), r * std::sin(2 * std::numbers::pi * u2));
    }
  }
  Eigen::HouseholderQR<MatrixX> qr(g);
  MatrixX q = qr.householderQ();
  const MatrixX r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

double phase_insensitive_distance(const MatrixX& a, const MatrixX& b) {
  const Complex t = (b.adjoint() * a).trace();
  const Complex ph = std::abs(t) > 0 ? t / std::abs(t) : Complex{1.0};
  return (a - ph * b).norm();
}

Matrix4 cnot_matrix() { return controlled_pair_matrix(gates2::identity(), gates2::pauli_x()); }
Matrix4 cz_matrix() { return controlled_pair_matrix(gates2::identity(), gates2::pauli_z()); }

Matrix4 swap_matrix() {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return m;
}

Matrix4 controlled_pair_matrix(const Matrix2& u1, const Matrix2& u2) {
  Matrix4 m = Matrix4::Zero();
  m.block<2, 2>(0, 0) = u1;
  m.block<2, 2>(2, 2) = u2;
  return m;
}

MatrixX fredkin_matrix() {
  MatrixX m = MatrixX::Identity(8, 8);
  // |V H V> (index 5) <-> |V V H> (index 6)
  m(5, 5) = m(6, 6) = 0.0;
  m(5, 6) = m(6, 5) = 1.0;
  return m;
}

MatrixX multi_controlled_x_matrix(int controls) {
  const int dim = 1 << (controls + 1);
  MatrixX m = MatrixX::Identity(dim, dim);
  const int a = dim - 2, b = dim - 1;
  m(a, a) = m(b, b) = 0.0;
  m(a, b) = m(b, a) = 1.0;
  return m;
}

}  // namespace qubus
