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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qubus/detection.hpp"
#include "qubus/elements.hpp"
#include "qubus/instruction.hpp"
#include "qubus/kak.hpp"

namespace qubus {

/// Coherent amplitude and XPM phase of the qubus pair fed to each elementary
/// gate. The default is deep in the weak-nonlinearity regime
/// (|alpha| sin(theta) ~ 6, so e^{-|beta|^2} ~ 1e-31).
struct QubusResources {
  double alpha = 60.0;
  double theta = 0.1;
};

enum class MeasureMode { Fock, Qnd };

struct MeasureOptions {
  MeasureMode mode = MeasureMode::Fock;
  double eta = 0.9;
  double gamma = 100.0;
  std::optional<double> probe_phase;  // defaults to the gate theta
  /// Merge sibling records whose corrected states agree up to global phase.
  bool coalesce = true;
  double tail = 1e-12;
  /// When set, every measurement draws one outcome from this generator
  /// instead of enumerating them, so a gate returns a single trajectory.
  Rng* sampler = nullptr;

  DetectorParams detector(double gate_theta) const {
    return {eta, gamma, probe_phase.value_or(gate_theta)};
  }
};

enum class AncillaSign { Plus, Minus };

/// A photon left in |+> or |-> on a known path, ready for reuse.
struct Ancilla {
  PathId path = 0;
  AncillaSign sign = AncillaSign::Plus;

  bool operator==(const Ancilla&) const = default;
};

/// Classical outcomes observed at one measurement site. A coalesced record
/// lists every outcome that led to the same corrected state.
struct Outcome {
  std::string site;
  std::vector<std::string> values;
};

struct GateRecord {
  std::vector<Outcome> outcomes;
  double probability = 0.0;
  HybridState state;
  std::optional<Ancilla> ancilla;
  bool failed = false;  // ambiguous detection, no feed-forward applied
};

enum class GateKind { CPath, Merging };

struct GateEvent {
  GateKind kind = GateKind::CPath;
  int xpm_couplings = 0;
  bool fresh_ancilla = false;
};

using ResourceTrace = std::vector<GateEvent>;

struct ResourceReport {
  int c_path_count = 0;
  int merging_count = 0;
  int ancilla_photons_concurrent = 0;
  int xpm_coupling_count = 0;
  int qubus_uses = 0;
  double cumulative_qubus_attenuation = 1.0;
};

ResourceReport resource_report(const ResourceTrace& trace, double theta);

struct GateResult {
  std::vector<GateRecord> records;
  /// Amplitude of the unmeasured qubus beam after each elementary gate.
  std::optional<Complex> recycled_qubus;
  /// Paths carrying the logical qubits afterwards (empty for a bare C-path,
  /// which leaves the target spread over two paths).
  std::vector<PathId> qubit_paths;
  ResourceTrace trace;
  double theta = 0.0;

  ResourceReport resources() const { return resource_report(trace, theta); }
  double total_probability() const;
};

// ---------------------------------------------------------------------------
// Pipeline stages (shared with the truncated-Fock oracle)

/// C-path entangler on a target photon on `first`: photon BS onto
/// (first, second), two qubus beams (indices beam0, beam0+1), XPM couplings,
/// -theta shifts and the qubus BS. Beam 0 couples to the target on `first`
/// plus `first_couplings`; beam 1 to the target on `second` plus
/// `second_couplings`.
std::vector<Instruction> c_path_entangler(PathId first, PathId second,
                                          const std::vector<ModeSelector>& first_couplings,
                                          const std::vector<ModeSelector>& second_couplings,
                                          BeamId beam0, const QubusResources& res);

/// Feed-forward after reading n on the first qubus beam: for n != 0 swap the
/// target paths, then a pi shift on `second` when n is odd.
std::vector<Instruction> c_path_correction(long n, PathId first, PathId second);

/// Merging-gate entangler: parity coupling between the photon on
/// (src1|src2) and the ancilla on `dest`.
std::vector<Instruction> merging_entangler(PathId src1, PathId src2, PathId dest, BeamId beam0,
                                           const QubusResources& res);

/// sigma_x on the ancilla for n != 0, and a pi shift on its V mode when
/// (n odd) xor (ancilla is |->).
std::vector<Instruction> merging_entangler_correction(long n, PathId dest, AncillaSign sign);

/// Photon BS on (src1, src2) and the two diagonal PBSs onto `ports` (4 paths:
/// src1+, src1-, src2+, src2-).
std::vector<Instruction> merging_interferometer(PathId src1, PathId src2,
                                                const std::vector<PathId>& ports);

/// sigma_z feed-forward once the photon has been found on ports[port].
std::vector<Instruction> merging_locate_correction(int port, PathId dest,
                                                   const ModeSelector& marker);

// ---------------------------------------------------------------------------
// Elementary gates

/// Standard C-path: control photon on `control`, target photon on `target`
/// is routed to `target` (control H) or `second` (control V).
GateResult c_path(const HybridState& state, PathId control, PathId target, PathId second,
                  const QubusResources& res = {}, const MeasureOptions& opts = {});

/// C-path with arbitrary extra couplings on the two qubus beams (used by the
/// multi-control constructions).
GateResult controlled_path(const HybridState& state, PathId first, PathId second,
                           const std::vector<ModeSelector>& first_couplings,
                           const std::vector<ModeSelector>& second_couplings,
                           const QubusResources& res = {}, const MeasureOptions& opts = {});

/// Merge the photon on (src1|src2) onto `dest`. `marker` must be occupied
/// exactly in the branches where the photon sits on src2. Without a recycled
/// ancilla a fresh one is injected on `dest` in |+> or |->.
GateResult merging(const HybridState& state, PathId src1, PathId src2, PathId dest,
                   const ModeSelector& marker, const std::optional<Ancilla>& recycled = {},
                   AncillaSign fresh_sign = AncillaSign::Plus, const QubusResources& res = {},
                   const MeasureOptions& opts = {});

// ---------------------------------------------------------------------------
// Composite gates. Every call returns the paths of the output qubits.

GateResult single_qubit(const HybridState& state, PathId qubit, const Matrix2& u);

/// |H><H| (x) u1 + |V><V| (x) u2 with the control on `control`.
GateResult controlled_pair(const HybridState& state, PathId control, PathId target,
                           const Matrix2& u1, const Matrix2& u2, const QubusResources& res = {},
                           const MeasureOptions& opts = {},
                           const std::optional<Ancilla>& ancilla = {});

GateResult cnot(const HybridState& state, PathId control, PathId target,
                const QubusResources& res = {}, const MeasureOptions& opts = {});
GateResult cz(const HybridState& state, PathId control, PathId target,
              const QubusResources& res = {}, const MeasureOptions& opts = {});
GateResult c_phase(const HybridState& state, PathId control, PathId target, double phi,
                   const QubusResources& res = {}, const MeasureOptions& opts = {});

/// Arbitrary two-qubit unitary through its canonical decomposition: locals,
/// Bell-frame CNOTs and the controlled-diagonal core.
GateResult synth_two_qubit(const HybridState& state, PathId q1, PathId q2, const Matrix4& u,
                           const QubusResources& res = {}, const MeasureOptions& opts = {},
                           const std::optional<Ancilla>& ancilla = {});

/// Swap of the two targets when the control is V.
GateResult fredkin(const HybridState& state, PathId control, PathId t1, PathId t2,
                   const QubusResources& res = {}, const MeasureOptions& opts = {},
                   const std::optional<Ancilla>& ancilla = {});

GateResult toffoli(const HybridState& state, PathId c1, PathId c2, PathId target,
                   const QubusResources& res = {}, const MeasureOptions& opts = {},
                   const std::optional<Ancilla>& ancilla = {});

/// Bit flip of `target` when every control is V; k controls use k C-path and
/// k Merging gates with one ancilla photon.
GateResult multi_toffoli(const HybridState& state, const std::vector<PathId>& controls,
                         PathId target, const QubusResources& res = {},
                         const MeasureOptions& opts = {},
                         const std::optional<Ancilla>& ancilla = {});

// ---------------------------------------------------------------------------
// Stage chaining for composite circuits

/// One step of a composite circuit, evaluated per measurement record.
using Stage = std::function<GateResult(const HybridState&, const std::optional<Ancilla>&)>;

/// Run `stages` over the record tree rooted at `input`.
GateResult run_stages(const HybridState& input, const std::vector<Stage>& stages,
                      const std::optional<Ancilla>& ancilla, const MeasureOptions& opts,
                      double theta);

/// Merge records whose states agree up to global phase (and share ancilla).
std::vector<GateRecord> coalesce_records(std::vector<GateRecord> records, double tol = 1e-12);

}  // namespace qubus
