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

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qubus {

using Complex = std::complex<double>;
using PathId = int;
using BeamId = std::size_t;
using Matrix2 = Eigen::Matrix2cd;

/// Default coalescing tolerance for branch amplitudes and qubus amplitudes.
inline constexpr double kCoalesceTol = 1e-9;

enum class Pol : std::uint8_t { H, V };

/// A single-photon mode: spatial path plus polarization.
struct Mode {
  PathId path = 0;
  Pol pol = Pol::H;

  auto operator<=>(const Mode&) const = default;
};

std::string to_string(const Mode& m);

/// Occupied single-photon modes of one branch, kept sorted.
///
/// Photons are identical bosons: a branch is identified by which modes are
/// occupied, not by which photon label sits where. Each mode holds at most one
/// photon.
class PhotonConfig {
 public:
  PhotonConfig() = default;
  explicit PhotonConfig(std::vector<Mode> modes);

  const std::vector<Mode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }

  bool occupied(const Mode& m) const;
  /// Number of photons on `path`, any polarization.
  int count_on_path(PathId path) const;
  /// The mode occupied on `path`, if exactly one photon sits there.
  std::optional<Mode> on_path(PathId path) const;

  /// Returns a copy with `from` replaced by `to`; `from` must be occupied.
  PhotonConfig moved(const Mode& from, const Mode& to) const;
  PhotonConfig with(const Mode& m) const;
  PhotonConfig without(const Mode& m) const;

  auto operator<=>(const PhotonConfig&) const = default;
  bool operator==(const PhotonConfig&) const = default;

 private:
  std::vector<Mode> modes_;
};

struct Branch {
  Complex amp;
  PhotonConfig config;
  std::vector<Complex> qubus;  // one coherent amplitude per registered beam
};

/// Polarization amplitudes of one photon on one path, used to build states.
struct PhotonQubit {
  PathId path = 0;
  Complex h = 1.0;
  Complex v = 0.0;

  static PhotonQubit horizontal(PathId p) { return {p, 1.0, 0.0}; }
  static PhotonQubit vertical(PathId p) { return {p, 0.0, 1.0}; }
  /// |+> = (|H> + |V>)/sqrt2, stored as H/V amplitudes.
  static PhotonQubit plus(PathId p);
  static PhotonQubit minus(PathId p);
};

/// Superposition of branches: amplitude x photon modes x coherent qubus amplitudes.
///
/// Values are immutable once built; every operation returns a new state.
/// Branches with different photon configurations are orthogonal, branches with
/// different qubus amplitudes generally are not.
class HybridState {
 public:
  HybridState() = default;

  /// Product state of independent photon qubits and coherent beams.
  static HybridState product(std::span<const PhotonQubit> photons,
                             std::span<const Complex> beams = {});

  /// Photons on `frame` paths, amplitudes indexed by the computational basis
  /// (first path = most significant bit, H = 0, V = 1).
  static HybridState logical(std::span<const PathId> frame,
                             std::span<const Complex> amplitudes,
                             std::span<const Complex> beams = {});

  /// Assemble from raw parts; all branch paths are registered automatically.
  static HybridState from_branches(std::vector<Branch> branches,
                                   std::size_t beam_count,
                                   std::set<PathId> extra_paths = {});

  const std::vector<Branch>& branches() const { return branches_; }
  const std::set<PathId>& paths() const { return paths_; }
  std::size_t beam_count() const { return beams_; }
  /// Photons per branch (0 for an empty state).
  std::size_t photon_count() const;
  bool empty() const { return branches_.empty(); }

  bool has_path(PathId p) const { return paths_.count(p) != 0; }
  void require_path(PathId p) const;
  void require_beam(BeamId b) const;
  /// Smallest non-negative path id not yet registered.
  PathId fresh_path() const;

  HybridState with_paths(std::initializer_list<PathId> ps) const;
  HybridState with_path(PathId p) const;
  /// Tensor in one more photon (product with the existing state).
  HybridState with_photon(const PhotonQubit& q) const;
  /// Append a coherent beam |amp>; its index is the old beam_count().
  HybridState with_beam(Complex amp) const;
  /// Drop beam `b` if it is in a product with the rest (same amplitude in
  /// every branch within tol). Returns nullopt when it is entangled.
  std::optional<HybridState> without_product_beam(BeamId b,
                                                  double tol = kCoalesceTol) const;

  HybridState scaled(Complex factor) const;

 private:
  std::vector<Branch> branches_;
  std::set<PathId> paths_;
  std::size_t beams_ = 0;
};

/// <a|b> for coherent states |a>, |b>.
Complex coherent_overlap(Complex a, Complex b);

/// <lhs|rhs>; both states must have the same number of beams.
Complex inner(const HybridState& lhs, const HybridState& rhs);
double norm(const HybridState& state);
HybridState normalized(const HybridState& state);

/// Merge branches with equal config and qubus amplitudes (within tol), drop
/// branches with |amp| < tol, and sort into a deterministic order.
HybridState canonicalize(const HybridState& state, double tol = kCoalesceTol);

/// |<a|b>|^2 / (|a|^2 |b|^2), i.e. fidelity up to global phase.
double state_fidelity(const HybridState& a, const HybridState& b);

/// Fidelity of `state` with a beam-free ideal photonic state, tracing out
/// every beam of `state`. Photon configurations must match exactly.
double fidelity_tracing_beams(const HybridState& state, const HybridState& ideal);

/// Apply a 2x2 unitary to the span {m0, m1}: |m0> -> M00|m0> + M10|m1>, etc.
HybridState apply_mode_unitary(const HybridState& state, const Mode& m0,
                               const Mode& m1, const Matrix2& matrix);

/// Single-qubit operation on the photon on `path` in the H/V basis.
HybridState apply_photon_unitary(const HybridState& state, PathId path,
                                 const Matrix2& matrix);

/// Relabel every occupancy of path p as q and vice versa.
HybridState swap_paths(const HybridState& state, PathId p, PathId q);

/// Fidelity check used throughout: ||M^dagger M - I||_max <= tol.
bool is_unitary(const Eigen::MatrixXcd& m, double tol = 1e-10);

}  // namespace qubus
