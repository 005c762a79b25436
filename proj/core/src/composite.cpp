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

#include <set>

#include "qubus/errors.hpp"
#include "qubus/gates.hpp"

namespace qubus {

namespace {

std::vector<PathId> allocate(HybridState& s, int count) {
  std::vector<PathId> ids;
  for (int i = 0; i < count; ++i) {
    ids.push_back(s.fresh_path());
    s = s.with_path(ids.back());
  }
  return ids;
}

void require_distinct(std::initializer_list<PathId> paths, const char* what) {
  std::set<PathId> seen(paths);
  if (seen.size() != paths.size()) {
    throw PreconditionViolation(std::string(what) + ": qubit paths must be distinct");
  }
}

template <class Fn>
Stage local(Fn fn) {
  return [fn](const HybridState& s, const std::optional<Ancilla>&) {
    GateResult r;
    r.records.push_back({{}, 1.0, fn(s), std::nullopt, false});
    return r;
  };
}

Stage unitary_on(PathId path, const Matrix2& u) {
  return local([path, u](const HybridState& s) { return apply_photon_unitary(s, path, u); });
}

Stage path_stage(PathId first, PathId second, std::vector<ModeSelector> c1,
                 std::vector<ModeSelector> c2, const QubusResources& res,
                 const MeasureOptions& opts) {
  return [=](const HybridState& s, const std::optional<Ancilla>&) {
    return controlled_path(s, first, second, c1, c2, res, opts);
  };
}

Stage merge_stage(PathId src1, PathId src2, PathId dest, ModeSelector marker,
                  const QubusResources& res, const MeasureOptions& opts) {
  return [=](const HybridState& s, const std::optional<Ancilla>& anc) {
    return merging(s, src1, src2, dest, marker, anc, AncillaSign::Plus, res, opts);
  };
}

// Controlled pair as stages on pre-registered paths; the output target sits on `dest`.
void append_controlled_pair(std::vector<Stage>& stages, PathId control, PathId target,
                            PathId second, PathId dest, const Matrix2& u1, const Matrix2& u2,
                            const QubusResources& res, const MeasureOptions& opts) {
  stages.push_back(path_stage(target, second, {ModeSelector::v(control)},
                              {ModeSelector::h(control)}, res, opts));
  stages.push_back(local([=](const HybridState& s) {
    return apply_photon_unitary(apply_photon_unitary(s, target, u1), second, u2);
  }));
  stages.push_back(merge_stage(target, second, dest, ModeSelector::v(control), res, opts));
}

}  // namespace

GateResult single_qubit(const HybridState& state, PathId qubit, const Matrix2& u) {
  GateResult r;
  r.records.push_back({{}, 1.0, apply_photon_unitary(state, qubit, u), std::nullopt, false});
  r.qubit_paths = {qubit};
  return r;
}

GateResult controlled_pair(const HybridState& state, PathId control, PathId target,
                           const Matrix2& u1, const Matrix2& u2, const QubusResources& res,
                           const MeasureOptions& opts, const std::optional<Ancilla>& ancilla) {
  require_distinct({control, target}, "controlled pair");
  if (!is_unitary(u1) || !is_unitary(u2)) {
    throw NonUnitaryMatrix("controlled pair: both blocks must be unitary");
  }
  HybridState s = state;
  const auto p = allocate(s, 2);
  std::vector<Stage> stages;
  append_controlled_pair(stages, control, target, p[0], p[1], u1, u2, res, opts);
  GateResult r = run_stages(s, stages, ancilla, opts, res.theta);
  r.qubit_paths = {control, p[1]};
  return r;
}

GateResult cnot(const HybridState& state, PathId control, PathId target,
                const QubusResources& res, const MeasureOptions& opts) {
  return controlled_pair(state, control, target, gates2::identity(), gates2::pauli_x(), res, opts);
}

GateResult cz(const HybridState& state, PathId control, PathId target, const QubusResources& res,
              const MeasureOptions& opts) {
  return controlled_pair(state, control, target, gates2::identity(), gates2::pauli_z(), res, opts);
}

GateResult c_phase(const HybridState& state, PathId control, PathId target, double phi,
                   const QubusResources& res, const MeasureOptions& opts) {
  return controlled_pair(state, control, target, gates2::identity(), gates2::phase(phi), res,
                         opts);
}

GateResult synth_two_qubit(const HybridState& state, PathId q1, PathId q2, const Matrix4& u,
                           const QubusResources& res, const MeasureOptions& opts,
                           const std::optional<Ancilla>& ancilla) {
  require_distinct({q1, q2}, "two-qubit synthesis");
  const TwoQubitCanonicalParams k = kak_decompose(u);
  const auto [d1, d2] = canonical_controlled_diagonal(k.ax, k.ay, k.az);

  // Bell-frame change as CNOT(q1 -> q2) then H on q1; the controlled-diagonal
  // core runs with q2 as control.
  HybridState s = state;
  const auto p = allocate(s, 6);
  const PathId q2a = p[1], q1a = p[3], q2b = p[5];
  std::vector<Stage> stages;
  stages.push_back(local([=, a3 = k.a3, a4 = k.a4](const HybridState& x) {
    return apply_photon_unitary(apply_photon_unitary(x, q1, a3), q2, a4);
  }));
  append_controlled_pair(stages, q1, q2, p[0], q2a, gates2::identity(), gates2::pauli_x(), res,
                         opts);
  stages.push_back(unitary_on(q1, gates2::hadamard()));
  append_controlled_pair(stages, q2a, q1, p[2], q1a, d1, d2, res, opts);
  stages.push_back(unitary_on(q1a, gates2::hadamard()));
  append_controlled_pair(stages, q1a, q2a, p[4], q2b, gates2::identity(), gates2::pauli_x(), res,
                         opts);
  stages.push_back(local([=, a1 = k.a1, a2 = k.a2](const HybridState& x) {
    return apply_photon_unitary(apply_photon_unitary(x, q1a, a1), q2b, a2);
  }));
  GateResult r = run_stages(s, stages, ancilla, opts, res.theta);
  r.qubit_paths = {q1a, q2b};
  return r;
}

GateResult fredkin(const HybridState& state, PathId control, PathId t1, PathId t2,
                   const QubusResources& res, const MeasureOptions& opts,
                   const std::optional<Ancilla>& ancilla) {
  require_distinct({control, t1, t2}, "fredkin");
  HybridState s = state;
  const auto p = allocate(s, 4);
  const PathId s1 = p[0], s2 = p[1], d1 = p[2], d2 = p[3];
  const auto cv = ModeSelector::v(control);
  const auto ch = ModeSelector::h(control);
  std::vector<Stage> stages;
  stages.push_back(path_stage(t1, s1, {cv}, {ch}, res, opts));
  stages.push_back(path_stage(t2, s2, {cv}, {ch}, res, opts));
  stages.push_back(local([=](const HybridState& x) { return swap_paths(x, s1, s2); }));
  stages.push_back(merge_stage(t1, s1, d1, cv, res, opts));
  stages.push_back(merge_stage(t2, s2, d2, cv, res, opts));
  GateResult r = run_stages(s, stages, ancilla, opts, res.theta);
  r.qubit_paths = {control, d1, d2};
  return r;
}

GateResult toffoli(const HybridState& state, PathId c1, PathId c2, PathId target,
                   const QubusResources& res, const MeasureOptions& opts,
                   const std::optional<Ancilla>& ancilla) {
  return multi_toffoli(state, {c1, c2}, target, res, opts, ancilla);
}

GateResult multi_toffoli(const HybridState& state, const std::vector<PathId>& controls,
                         PathId target, const QubusResources& res, const MeasureOptions& opts,
                         const std::optional<Ancilla>& ancilla) {
  if (controls.empty()) throw PreconditionViolation("multi-controlled X needs a control");
  std::set<PathId> seen(controls.begin(), controls.end());
  seen.insert(target);
  if (seen.size() != controls.size() + 1) {
    throw PreconditionViolation("multi-controlled X: qubit paths must be distinct");
  }
  const std::size_t k = controls.size();
  // x[i]: photon i (controls then target); split[i] and dest[i] exist for i >= 1.
  std::vector<PathId> x(controls.begin(), controls.end());
  x.push_back(target);
  HybridState s = state;
  const auto fresh = allocate(s, static_cast<int>(2 * k));
  std::vector<PathId> split(k + 1, -1), dest(k + 1, -1);
  for (std::size_t i = 1; i <= k; ++i) {
    split[i] = fresh[2 * (i - 1)];
    dest[i] = fresh[2 * (i - 1) + 1];
  }

  std::vector<Stage> stages;
  for (std::size_t j = 1; j <= k; ++j) {
    std::vector<ModeSelector> c1{j == 1 ? ModeSelector::v(x[0]) : ModeSelector::v(split[j - 1])};
    std::vector<ModeSelector> c2{ModeSelector::h(x[0])};
    for (std::size_t i = 1; i < j; ++i) c2.push_back(ModeSelector::h(split[i]));
    stages.push_back(path_stage(x[j], split[j], std::move(c1), std::move(c2), res, opts));
  }
  stages.push_back(unitary_on(split[k], gates2::pauli_x()));
  for (std::size_t j = k; j >= 1; --j) {
    const ModeSelector marker = j == 1 ? ModeSelector::v(x[0]) : ModeSelector::v(split[j - 1]);
    stages.push_back(merge_stage(x[j], split[j], dest[j], marker, res, opts));
  }
  GateResult r = run_stages(s, stages, ancilla, opts, res.theta);
  r.qubit_paths = {x[0]};
  for (std::size_t i = 1; i <= k; ++i) r.qubit_paths.push_back(dest[i]);
  return r;
}

}  // namespace qubus
