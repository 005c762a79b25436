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

#include "qubus/state.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "qubus/errors.hpp"

namespace qubus {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

bool qubus_close(const std::vector<Complex>& a, const std::vector<Complex>& b,
                 double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

bool qubus_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return a.size() < b.size();
}

Complex beam_overlap(const std::vector<Complex>& bra, const std::vector<Complex>& ket) {
  Complex acc = 1.0;
  for (std::size_t i = 0; i < bra.size(); ++i) acc *= coherent_overlap(bra[i], ket[i]);
  return acc;
}

}  // namespace

std::string to_string(const Mode& m) {
  std::ostringstream os;
  os << '(' << m.path << ',' << (m.pol == Pol::H ? 'H' : 'V') << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// PhotonConfig

PhotonConfig::PhotonConfig(std::vector<Mode> modes) : modes_(std::move(modes)) {
  std::sort(modes_.begin(), modes_.end());
  if (std::adjacent_find(modes_.begin(), modes_.end()) != modes_.end()) {
    throw MultiPhotonCollision("two photons in one mode");
  }
}

bool PhotonConfig::occupied(const Mode& m) const {
  return std::binary_search(modes_.begin(), modes_.end(), m);
}

int PhotonConfig::count_on_path(PathId path) const {
  int n = 0;
  for (const auto& m : modes_) n += (m.path == path);
  return n;
}

std::optional<Mode> PhotonConfig::on_path(PathId path) const {
  std::optional<Mode> found;
  for (const auto& m : modes_) {
    if (m.path != path) continue;
    if (found) return std::nullopt;
    found = m;
  }
  return found;
}

PhotonConfig PhotonConfig::moved(const Mode& from, const Mode& to) const {
  std::vector<Mode> out = modes_;
  auto it = std::find(out.begin(), out.end(), from);
  if (it == out.end()) throw PreconditionViolation("mode " + to_string(from) + " not occupied");
  *it = to;
  return PhotonConfig(std::move(out));
}

PhotonConfig PhotonConfig::with(const Mode& m) const {
  std::vector<Mode> out = modes_;
  out.push_back(m);
  return PhotonConfig(std::move(out));
}

PhotonConfig PhotonConfig::without(const Mode& m) const {
  std::vector<Mode> out = modes_;
  auto it = std::find(out.begin(), out.end(), m);
  if (it == out.end()) throw PreconditionViolation("mode " + to_string(m) + " not occupied");
  out.erase(it);
  return PhotonConfig(std::move(out));
}

PhotonQubit PhotonQubit::plus(PathId p) { return {p, kInvSqrt2, kInvSqrt2}; }
PhotonQubit PhotonQubit::minus(PathId p) { return {p, kInvSqrt2, -kInvSqrt2}; }

// ---------------------------------------------------------------------------
// HybridState

HybridState HybridState::product(std::span<const PhotonQubit> photons,
                                 std::span<const Complex> beams) {
  HybridState s;
  s.branches_.push_back(Branch{1.0, PhotonConfig{}, {}});
  for (const auto& q : photons) s = s.with_photon(q);
  for (const auto& b : beams) s = s.with_beam(b);
  return s;
}

HybridState HybridState::logical(std::span<const PathId> frame,
                                 std::span<const Complex> amplitudes,
                                 std::span<const Complex> beams) {
  const std::size_t k = frame.size();
  if (amplitudes.size() != (std::size_t{1} << k)) {
    throw ShapeMismatch("logical state needs 2^k amplitudes");
  }
  std::vector<Complex> qubus(beams.begin(), beams.end());
  std::vector<Branch> branches;
  for (std::size_t idx = 0; idx < amplitudes.size(); ++idx) {
    if (amplitudes[idx] == Complex{}) continue;
    std::vector<Mode> modes;
    for (std::size_t q = 0; q < k; ++q) {
      const bool bit = (idx >> (k - 1 - q)) & 1U;
      modes.push_back({frame[q], bit ? Pol::V : Pol::H});
    }
    branches.push_back(Branch{amplitudes[idx], PhotonConfig(std::move(modes)), qubus});
  }
  return from_branches(std::move(branches), beams.size(),
                       std::set<PathId>(frame.begin(), frame.end()));
}

HybridState HybridState::from_branches(std::vector<Branch> branches,
                                       std::size_t beam_count,
                                       std::set<PathId> extra_paths) {
  HybridState s;
  s.beams_ = beam_count;
  s.paths_ = std::move(extra_paths);
  for (const auto& b : branches) {
    if (b.qubus.size() != beam_count) throw ShapeMismatch("branch beam count mismatch");
    if (!std::isfinite(b.amp.real()) || !std::isfinite(b.amp.imag())) {
      throw PreconditionViolation("non-finite branch amplitude");
    }
    for (const auto& m : b.config.modes()) s.paths_.insert(m.path);
  }
  s.branches_ = std::move(branches);
  return s;
}

std::size_t HybridState::photon_count() const {
  return branches_.empty() ? 0 : branches_.front().config.size();
}

void HybridState::require_path(PathId p) const {
  if (!has_path(p)) throw UnknownPath("path " + std::to_string(p) + " is not registered");
}

void HybridState::require_beam(BeamId b) const {
  if (b >= beams_) throw UnknownBeam("beam " + std::to_string(b) + " is not registered");
}

PathId HybridState::fresh_path() const {
  PathId p = 0;
  while (has_path(p)) ++p;
  return p;
}

HybridState HybridState::with_paths(std::initializer_list<PathId> ps) const {
  HybridState s = *this;
  s.paths_.insert(ps.begin(), ps.end());
  return s;
}

HybridState HybridState::with_path(PathId p) const {
  HybridState s = *this;
  s.paths_.insert(p);
  return s;
}

HybridState HybridState::with_photon(const PhotonQubit& q) const {
  HybridState s;
  s.beams_ = beams_;
  s.paths_ = paths_;
  s.paths_.insert(q.path);
  for (const auto& b : branches_) {
    if (b.config.count_on_path(q.path) != 0) {
      throw MultiPhotonCollision("path " + std::to_string(q.path) + " already occupied");
    }
    if (q.h != Complex{}) s.branches_.push_back({b.amp * q.h, b.config.with({q.path, Pol::H}), b.qubus});
    if (q.v != Complex{}) s.branches_.push_back({b.amp * q.v, b.config.with({q.path, Pol::V}), b.qubus});
  }
  return s;
}

HybridState HybridState::with_beam(Complex amp) const {
  HybridState s = *this;
  for (auto& b : s.branches_) b.qubus.push_back(amp);
  ++s.beams_;
  return s;
}

std::optional<HybridState> HybridState::without_product_beam(BeamId beam, double tol) const {
  require_beam(beam);
  if (!branches_.empty()) {
    const Complex ref = branches_.front().qubus[beam];
    for (const auto& b : branches_) {
      if (std::abs(b.qubus[beam] - ref) > tol) return std::nullopt;
    }
  }
  HybridState s = *this;
  for (auto& b : s.branches_) b.qubus.erase(b.qubus.begin() + static_cast<std::ptrdiff_t>(beam));
  --s.beams_;
  return s;
}

HybridState HybridState::scaled(Complex factor) const {
  HybridState s = *this;
  for (auto& b : s.branches_) b.amp *= factor;
  return s;
}

// ---------------------------------------------------------------------------
// Algebra

Complex coherent_overlap(Complex a, Complex b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

Complex inner(const HybridState& lhs, const HybridState& rhs) {
  if (lhs.beam_count() != rhs.beam_count()) throw ShapeMismatch("beam registries differ");
  Complex acc = 0.0;
  for (const auto& l : lhs.branches()) {
    for (const auto& r : rhs.branches()) {
      if (l.config != r.config) continue;
      acc += std::conj(l.amp) * r.amp * beam_overlap(l.qubus, r.qubus);
    }
  }
  return acc;
}

double norm(const HybridState& state) {
  return std::sqrt(std::max(0.0, inner(state, state).real()));
}

HybridState normalized(const HybridState& state) {
  const double n = norm(state);
  if (n == 0.0) throw PreconditionViolation("cannot normalize a zero state");
  return state.scaled(1.0 / n);
}

HybridState canonicalize(const HybridState& state, double tol) {
  std::vector<Branch> merged;
  merged.reserve(state.branches().size());
  for (const auto& b : state.branches()) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Branch& m) {
      return m.config == b.config && qubus_close(m.qubus, b.qubus, tol);
    });
    if (it == merged.end()) {
      merged.push_back(b);
    } else {
      it->amp += b.amp;
    }
  }
  std::erase_if(merged, [&](const Branch& b) { return std::abs(b.amp) < tol; });
  std::sort(merged.begin(), merged.end(), [](const Branch& a, const Branch& b) {
    if (a.config != b.config) return a.config < b.config;
    return qubus_less(a.qubus, b.qubus);
  });
  return HybridState::from_branches(std::move(merged), state.beam_count(), state.paths());
}

double state_fidelity(const HybridState& a, const HybridState& b) {
  const double na = inner(a, a).real();
  const double nb = inner(b, b).real();
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return std::norm(inner(a, b)) / (na * nb);
}

double fidelity_tracing_beams(const HybridState& state, const HybridState& ideal) {
  if (ideal.beam_count() != 0) throw ShapeMismatch("ideal state must carry no beams");
  std::map<PhotonConfig, Complex> target;
  double ideal_norm2 = 0.0;
  for (const auto& b : ideal.branches()) target[b.config] += b.amp;
  for (const auto& [cfg, amp] : target) ideal_norm2 += std::norm(amp);
  const double state_norm2 = inner(state, state).real();
  if (ideal_norm2 <= 0.0 || state_norm2 <= 0.0) return 0.0;

  // Contract each branch with the ideal photonic amplitude; what remains is a
  // beam-only vector whose squared norm is <ideal| rho_photons |ideal>.
  std::vector<std::pair<Complex, const std::vector<Complex>*>> weighted;
  for (const auto& b : state.branches()) {
    auto it = target.find(b.config);
    if (it == target.end()) continue;
    weighted.emplace_back(b.amp * std::conj(it->second), &b.qubus);
  }
  Complex acc = 0.0;
  for (const auto& [wl, ql] : weighted) {
    for (const auto& [wr, qr] : weighted) acc += std::conj(wl) * wr * beam_overlap(*ql, *qr);
  }
  return acc.real() / (ideal_norm2 * state_norm2);
}

bool is_unitary(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Eigen::MatrixXcd d = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

HybridState apply_mode_unitary(const HybridState& state, const Mode& m0, const Mode& m1,
                               const Matrix2& matrix) {
  state.require_path(m0.path);
  state.require_path(m1.path);
  if (!is_unitary(matrix)) throw NonUnitaryMatrix("2x2 operation is not unitary within 1e-10");
  if (m0 == m1) throw PreconditionViolation("basis modes must differ");
  std::vector<Branch> out;
  out.reserve(state.branches().size() * 2);
  for (const auto& b : state.branches()) {
    const bool on0 = b.config.occupied(m0);
    const bool on1 = b.config.occupied(m1);
    if (on0 && on1) throw MultiPhotonCollision("two photons in a 2-mode operation");
    if (!on0 && !on1) {
      out.push_back(b);
      continue;
    }
    const Mode& src = on0 ? m0 : m1;
    const int col = on0 ? 0 : 1;
    const Complex c0 = matrix(0, col);
    const Complex c1 = matrix(1, col);
    if (c0 != Complex{}) out.push_back({b.amp * c0, b.config.moved(src, m0), b.qubus});
    if (c1 != Complex{}) out.push_back({b.amp * c1, b.config.moved(src, m1), b.qubus});
  }
  return canonicalize(HybridState::from_branches(std::move(out), state.beam_count(), state.paths()));
}

HybridState apply_photon_unitary(const HybridState& state, PathId path, const Matrix2& matrix) {
  return apply_mode_unitary(state, {path, Pol::H}, {path, Pol::V}, matrix);
}

HybridState swap_paths(const HybridState& state, PathId p, PathId q) {
  state.require_path(p);
  state.require_path(q);
  std::vector<Branch> out;
  out.reserve(state.branches().size());
  for (const auto& b : state.branches()) {
    std::vector<Mode> modes = b.config.modes();
    for (auto& m : modes) {
      if (m.path == p) {
        m.path = q;
      } else if (m.path == q) {
        m.path = p;
      }
    }
    out.push_back({b.amp, PhotonConfig(std::move(modes)), b.qubus});
  }
  return canonicalize(HybridState::from_branches(std::move(out), state.beam_count(), state.paths()));
}

}  // namespace qubus
