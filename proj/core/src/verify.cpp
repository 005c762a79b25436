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

#include "qubus/verify.hpp"

#include <cmath>
#include <map>

#include "qubus/errors.hpp"

namespace qubus {

namespace {

struct Projected {
  std::size_t index;
  Complex amp;
  PhotonConfig env;
  const std::vector<Complex>* qubus;
};

}  // namespace

MatrixX logical_density(const HybridState& state, std::span<const PathId> frame) {
  const std::size_t k = frame.size();
  const std::size_t dim = std::size_t{1} << k;
  for (PathId p : frame) state.require_path(p);

  std::vector<Projected> parts;
  for (const auto& b : state.branches()) {
    std::size_t index = 0;
    PhotonConfig env = b.config;
    bool ok = true;
    for (PathId p : frame) {
      const auto m = b.config.on_path(p);
      if (!m || b.config.count_on_path(p) != 1) {
        ok = false;
        break;
      }
      index = (index << 1) | (m->pol == Pol::V ? 1u : 0u);
      env = env.without(*m);
    }
    if (ok) parts.push_back({index, b.amp, std::move(env), &b.qubus});
  }

  MatrixX rho = MatrixX::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& a : parts) {
    for (const auto& c : parts) {
      if (!(a.env == c.env)) continue;
      Complex ov = 1.0;
      for (std::size_t i = 0; i < a.qubus->size(); ++i) {
        ov *= coherent_overlap((*c.qubus)[i], (*a.qubus)[i]);
      }
      rho(static_cast<Eigen::Index>(a.index), static_cast<Eigen::Index>(c.index)) +=
          a.amp * std::conj(c.amp) * ov;
    }
  }
  const double n2 = std::pow(norm(state), 2);
  if (n2 <= 0.0) throw PreconditionViolation("logical density of an empty state");
  return rho / n2;
}

double logical_fidelity(const HybridState& state, std::span<const PathId> frame,
                        const Eigen::VectorXcd& ideal) {
  const MatrixX rho = logical_density(state, frame);
  if (ideal.size() != rho.rows()) throw ShapeMismatch("ideal vector has the wrong dimension");
  return (ideal.adjoint() * rho * ideal)(0, 0).real() / ideal.squaredNorm();
}

double min_record_fidelity(const GateResult& result, const Eigen::VectorXcd& ideal) {
  double worst = 1.0;
  bool any = false;
  for (const auto& r : result.records) {
    if (r.failed) continue;
    any = true;
    worst = std::min(worst, logical_fidelity(r.state, result.qubit_paths, ideal));
  }
  return any ? worst : 0.0;
}

double success_probability(const GateResult& result) {
  double p = 0.0;
  for (const auto& r : result.records) {
    if (!r.failed) p += r.probability;
  }
  return p;
}

MatrixX average_density(const GateResult& result) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << result.qubit_paths.size());
  MatrixX rho = MatrixX::Zero(dim, dim);
  double total = 0.0;
  for (const auto& r : result.records) {
    if (r.failed) continue;
    rho += r.probability * logical_density(r.state, result.qubit_paths);
    total += r.probability;
  }
  if (total <= 0.0) throw NumericalDegeneracy("no successful record to average");
  return rho / total;
}

namespace {

struct RunSummary {
  Eigen::VectorXcd leading;
  double purity;
  double success;
};

RunSummary run_input(const GateFn& gate, const std::vector<PathId>& frame,
                     const Eigen::VectorXcd& amps, std::span<const Complex> beams) {
  std::vector<Complex> a(amps.data(), amps.data() + amps.size());
  const HybridState in = HybridState::logical(frame, a, beams);
  const GateResult out = gate(in);
  const MatrixX rho = average_density(out);
  Eigen::SelfAdjointEigenSolver<MatrixX> es(rho);
  const Eigen::Index top = rho.rows() - 1;
  return {es.eigenvectors().col(top), (rho * rho).trace().real(), success_probability(out)};
}

}  // namespace

ProcessEstimate extract_process(const GateFn& gate, const std::vector<PathId>& input_frame,
                                std::span<const Complex> beams) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << input_frame.size());
  ProcessEstimate est;
  est.matrix = MatrixX::Zero(dim, dim);
  std::vector<Eigen::VectorXcd> cols;
  for (Eigen::Index j = 0; j < dim; ++j) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e(j) = 1.0;
    const RunSummary s = run_input(gate, input_frame, e, beams);
    est.min_purity = std::min(est.min_purity, s.purity);
    est.min_success = std::min(est.min_success, s.success);
    cols.push_back(s.leading);
  }
  est.matrix.col(0) = cols[0];
  for (Eigen::Index j = 1; j < dim; ++j) {
    Eigen::VectorXcd probe = Eigen::VectorXcd::Zero(dim);
    probe(0) = probe(j) = 1.0 / std::sqrt(2.0);
    const RunSummary s = run_input(gate, input_frame, probe, beams);
    est.min_purity = std::min(est.min_purity, s.purity);
    est.min_success = std::min(est.min_success, s.success);
    const Complex r0 = cols[0].dot(s.leading);  // <psi_0|chi>
    const Complex rj = cols[static_cast<std::size_t>(j)].dot(s.leading);
    if (std::abs(r0) < 1e-9 || std::abs(rj) < 1e-9) {
      throw NumericalDegeneracy("probe output has no overlap with a basis output");
    }
    Complex ratio = rj / r0;
    ratio /= std::abs(ratio);
    est.matrix.col(j) = ratio * cols[static_cast<std::size_t>(j)];
  }
  return est;
}

Eigen::MatrixXd truth_table(const GateFn& gate, const std::vector<PathId>& input_frame,
                            std::span<const Complex> beams) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << input_frame.size());
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    std::vector<Complex> a(static_cast<std::size_t>(dim), 0.0);
    a[static_cast<std::size_t>(j)] = 1.0;
    const GateResult out = gate(HybridState::logical(input_frame, a, beams));
    const double ok = success_probability(out);
    for (const auto& r : out.records) {
      if (r.failed) continue;
      const MatrixX rho = logical_density(r.state, out.qubit_paths);
      for (Eigen::Index i = 0; i < dim; ++i) table(j, i) += r.probability * rho(i, i).real() / ok;
    }
  }
  return table;
}

}  // namespace qubus
