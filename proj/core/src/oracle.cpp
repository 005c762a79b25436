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

#include "qubus/oracle.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "qubus/errors.hpp"

namespace qubus {

namespace {

constexpr double kEncodeTail = 1e-10;
constexpr double kStepLeak = 1e-8;

std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

double log_factorial(long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// Fock coefficients e^{-|a|^2/2} a^n / sqrt(n!) for n = 0..cutoff.
std::vector<Complex> coherent_series(Complex a, int cutoff) {
  std::vector<Complex> c(static_cast<std::size_t>(cutoff) + 1);
  c[0] = std::exp(-std::norm(a) / 2.0);
  for (int n = 1; n <= cutoff; ++n) {
    c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n) - 1] * a / std::sqrt(double(n));
  }
  return c;
}

double squared_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

double total_norm2(const FockVector& v) {
  double s = 0.0;
  for (const auto& [cfg, block] : v.blocks) s += squared_norm(block);
  return s;
}

void require_beam(const FockVector& v, BeamId b) {
  if (b >= v.beams) throw UnknownBeam("oracle: beam " + std::to_string(b) + " not registered");
}

void require_path(const FockVector& v, PathId p) {
  if (!v.paths.count(p)) throw UnknownPath("oracle: path " + std::to_string(p) + " not registered");
}

bool selected(const PhotonConfig& cfg, const ModeSelector& sel) {
  int hits = 0;
  for (const auto& m : cfg.modes()) {
    if (m.path != sel.path) continue;
    if (sel.pol == PolFilter::Any || (sel.pol == PolFilter::H) == (m.pol == Pol::H)) ++hits;
  }
  if (hits > 1) throw MultiPhotonCollision("oracle: selector matches two photons");
  return hits == 1;
}

// Single-photon linear map: image of one mode as a list of (mode, coefficient).
using ModeImage = std::vector<std::pair<Mode, Complex>>;
using ModeMap = std::map<Mode, ModeImage>;

FockVector apply_mode_map(const FockVector& v, const ModeMap& map) {
  FockVector out = v;
  out.blocks.clear();
  for (const auto& [cfg, block] : v.blocks) {
    // Expand the product of per-photon images.
    std::vector<std::pair<std::vector<Mode>, Complex>> terms{{{}, 1.0}};
    for (const auto& m : cfg.modes()) {
      auto it = map.find(m);
      ModeImage image = it == map.end() ? ModeImage{{m, 1.0}} : it->second;
      std::vector<std::pair<std::vector<Mode>, Complex>> next;
      for (const auto& [modes, c] : terms) {
        for (const auto& [img, ic] : image) {
          if (ic == Complex(0.0)) continue;
          auto nm = modes;
          nm.push_back(img);
          next.emplace_back(std::move(nm), c * ic);
        }
      }
      terms = std::move(next);
    }
    for (auto& [modes, c] : terms) {
      PhotonConfig target(std::move(modes));
      auto& dst = out.blocks[target];
      if (dst.empty()) dst.assign(block.size(), 0.0);
      for (std::size_t i = 0; i < block.size(); ++i) dst[i] += c * block[i];
    }
  }
  for (auto it = out.blocks.begin(); it != out.blocks.end();) {
    if (squared_norm(it->second) < 1e-30) it = out.blocks.erase(it);
    else ++it;
  }
  return out;
}

ModeMap two_mode_map(const Mode& m0, const Mode& m1, const Matrix2& u) {
  ModeMap map;
  map[m0] = {{m0, u(0, 0)}, {m1, u(1, 0)}};
  map[m1] = {{m0, u(0, 1)}, {m1, u(1, 1)}};
  return map;
}

FockVector diag_beam(const FockVector& v, BeamId beam, double phi,
                     const ModeSelector* sel) {
  require_beam(v, beam);
  FockVector out = v;
  const std::size_t dim = static_cast<std::size_t>(v.cutoff) + 1;
  const std::size_t stride = ipow(dim, beam);
  for (auto& [cfg, block] : out.blocks) {
    if (sel && !selected(cfg, *sel)) continue;
    for (std::size_t i = 0; i < block.size(); ++i) {
      const auto n = static_cast<double>((i / stride) % dim);
      block[i] *= std::polar(1.0, n * phi);
    }
  }
  return out;
}

// a_i^dag -> (a_i^dag + a_j^dag)/sqrt2, a_j^dag -> (-a_i^dag + a_j^dag)/sqrt2.
FockVector beam_splitter(const FockVector& v, BeamId bi, BeamId bj) {
  require_beam(v, bi);
  require_beam(v, bj);
  if (bi == bj) throw PreconditionViolation("oracle: qubus BS needs two distinct beams");
  const long n_max = v.cutoff;
  const std::size_t dim = static_cast<std::size_t>(n_max) + 1;
  const std::size_t si = ipow(dim, bi), sj = ipow(dim, bj);
  FockVector out = v;
  for (auto& [cfg, block] : out.blocks) {
    const std::vector<Complex> in = block;
    std::fill(block.begin(), block.end(), Complex(0.0));
    for (std::size_t idx = 0; idx < in.size(); ++idx) {
      const long n1 = static_cast<long>((idx / si) % dim);
      const long n2 = static_cast<long>((idx / sj) % dim);
      if (n1 != 0 || n2 != 0) continue;  // iterate over the other beams once
      const std::size_t base = idx;
      for (long a = 0; a <= n_max; ++a) {
        for (long b = 0; b <= n_max; ++b) {
          const Complex x = in[base + static_cast<std::size_t>(a) * si + static_cast<std::size_t>(b) * sj];
          if (x == Complex(0.0)) continue;
          const double pre = -0.5 * static_cast<double>(a + b) * std::log(2.0) -
                             0.5 * (log_factorial(a) + log_factorial(b));
          for (long j = 0; j <= a; ++j) {
            const double cj = log_factorial(a) - log_factorial(j) - log_factorial(a - j);
            for (long k = 0; k <= b; ++k) {
              const long m1 = j + b - k;
              const long m2 = a - j + k;
              const double ck = log_factorial(b) - log_factorial(k) - log_factorial(b - k);
              double mag = std::exp(pre + cj + ck + 0.5 * (log_factorial(m1) + log_factorial(m2)));
              if ((b - k) % 2 != 0) mag = -mag;
              const Complex contrib = mag * x;
              if (m1 > n_max || m2 > n_max) continue;  // counted as leakage below
              block[base + static_cast<std::size_t>(m1) * si + static_cast<std::size_t>(m2) * sj] +=
                  contrib;
            }
          }
        }
      }
    }
  }
  const double lost = total_norm2(v) - total_norm2(out);
  if (lost > kStepLeak) {
    throw CutoffTooSmall("oracle: qubus BS leaks " + std::to_string(lost) + " past the cutoff");
  }
  out.truncation += std::max(0.0, lost);
  return out;
}

FockVector add_beam(const FockVector& v, Complex amp) {
  if (v.beams + 1 > kMaxFockBeams) {
    throw PreconditionViolation("oracle: at most two beams are supported");
  }
  const auto series = coherent_series(amp, v.cutoff);
  const double tail = std::max(0.0, 1.0 - squared_norm(series));
  if (tail > kEncodeTail) throw CutoffTooSmall("oracle: cutoff too small for added beam");
  FockVector out = v;
  out.beams = v.beams + 1;
  for (auto& [cfg, block] : out.blocks) {
    std::vector<Complex> nb;
    nb.reserve(block.size() * series.size());
    for (const auto& c : series) {
      for (const auto& x : block) nb.push_back(c * x);
    }
    block = std::move(nb);
  }
  out.truncation += tail;
  return out;
}

}  // namespace

std::size_t FockVector::block_size() const { return ipow(static_cast<std::size_t>(cutoff) + 1, beams); }

FockVector fock_encode(const HybridState& state, int cutoff) {
  if (cutoff < 0 || cutoff > kMaxFockCutoff) {
    throw PreconditionViolation("oracle: cutoff must lie in [0, 64]");
  }
  if (state.beam_count() > kMaxFockBeams) {
    throw PreconditionViolation("oracle: at most two beams are supported");
  }
  FockVector v;
  v.cutoff = cutoff;
  v.beams = state.beam_count();
  v.paths = state.paths();
  const std::size_t dim = static_cast<std::size_t>(cutoff) + 1;
  double worst_tail = 0.0;
  for (const auto& br : state.branches()) {
    std::vector<Complex> t{br.amp};
    for (const auto& a : br.qubus) {
      const auto series = coherent_series(a, cutoff);
      const double tail = std::max(0.0, 1.0 - squared_norm(series));
      if (tail > kEncodeTail) {
        throw CutoffTooSmall("oracle: cutoff " + std::to_string(cutoff) +
                             " too small for amplitude of modulus " + std::to_string(std::abs(a)));
      }
      worst_tail = std::max(worst_tail, tail);
      std::vector<Complex> nt;
      nt.reserve(t.size() * dim);
      for (const auto& c : series) {
        for (const auto& x : t) nt.push_back(c * x);
      }
      t = std::move(nt);
    }
    auto& block = v.blocks[br.config];
    if (block.empty()) block.assign(t.size(), 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) block[i] += t[i];
  }
  v.truncation = worst_tail;
  return v;
}

FockVector fock_apply(const FockVector& v, const Instruction& instr) {
  const double r = 1.0 / std::sqrt(2.0);
  if (const auto* o = std::get_if<op::PhotonBs>(&instr)) {
    require_path(v, o->a);
    require_path(v, o->b);
    ModeMap map;
    for (Pol p : {Pol::H, Pol::V}) {
      const Mode a{o->a, p}, b{o->b, p};
      map[a] = {{a, r}, {b, r}};
      map[b] = {{a, r}, {b, -r}};
    }
    return apply_mode_map(v, map);
  }
  if (const auto* o = std::get_if<op::PbsHv>(&instr)) {
    require_path(v, o->in);
    require_path(v, o->transmit);
    require_path(v, o->reflect);
    ModeMap map;
    map[{o->in, Pol::H}] = {{{o->transmit, Pol::H}, 1.0}};
    map[{o->in, Pol::V}] = {{{o->reflect, Pol::V}, 1.0}};
    return apply_mode_map(v, map);
  }
  if (const auto* o = std::get_if<op::PbsDiag>(&instr)) {
    require_path(v, o->in);
    require_path(v, o->transmit);
    require_path(v, o->reflect);
    const Mode th{o->transmit, Pol::H}, tv{o->transmit, Pol::V};
    const Mode rh{o->reflect, Pol::H}, rv{o->reflect, Pol::V};
    ModeMap map;
    map[{o->in, Pol::H}] = {{th, 0.5}, {tv, 0.5}, {rh, 0.5}, {rv, -0.5}};
    map[{o->in, Pol::V}] = {{th, 0.5}, {tv, 0.5}, {rh, -0.5}, {rv, 0.5}};
    return apply_mode_map(v, map);
  }
  if (const auto* o = std::get_if<op::PhaseShift>(&instr)) {
    require_path(v, o->sel.path);
    ModeMap map;
    const Complex ph = std::polar(1.0, o->phi);
    if (o->sel.pol != PolFilter::V) map[{o->sel.path, Pol::H}] = {{{o->sel.path, Pol::H}, ph}};
    if (o->sel.pol != PolFilter::H) map[{o->sel.path, Pol::V}] = {{{o->sel.path, Pol::V}, ph}};
    return apply_mode_map(v, map);
  }
  if (const auto* o = std::get_if<op::ModeUnitary>(&instr)) {
    require_path(v, o->m0.path);
    require_path(v, o->m1.path);
    return apply_mode_map(v, two_mode_map(o->m0, o->m1, o->matrix));
  }
  if (const auto* o = std::get_if<op::SwapPaths>(&instr)) {
    require_path(v, o->p);
    require_path(v, o->q);
    ModeMap map;
    for (Pol p : {Pol::H, Pol::V}) {
      map[{o->p, p}] = {{{o->q, p}, 1.0}};
      map[{o->q, p}] = {{{o->p, p}, 1.0}};
    }
    return apply_mode_map(v, map);
  }
  if (const auto* o = std::get_if<op::QubusBs>(&instr)) return beam_splitter(v, o->i, o->j);
  if (const auto* o = std::get_if<op::QubusPhase>(&instr)) return diag_beam(v, o->beam, o->phi, nullptr);
  if (const auto* o = std::get_if<op::Xpm>(&instr)) {
    require_path(v, o->sel.path);
    return diag_beam(v, o->beam, o->theta, &o->sel);
  }
  if (const auto* o = std::get_if<op::AddBeam>(&instr)) return add_beam(v, o->amp);
  if (const auto* o = std::get_if<op::InjectPhoton>(&instr)) {
    FockVector out = v;
    out.paths.insert(o->qubit.path);
    out.blocks.clear();
    const Mode h{o->qubit.path, Pol::H}, vv{o->qubit.path, Pol::V};
    for (const auto& [cfg, block] : v.blocks) {
      for (const auto& [m, c] : {std::pair{h, o->qubit.h}, std::pair{vv, o->qubit.v}}) {
        if (c == Complex(0.0)) continue;
        auto& dst = out.blocks[cfg.with(m)];
        if (dst.empty()) dst.assign(block.size(), 0.0);
        for (std::size_t i = 0; i < block.size(); ++i) dst[i] += c * block[i];
      }
    }
    return out;
  }
  if (const auto* o = std::get_if<op::RegisterPath>(&instr)) {
    FockVector out = v;
    out.paths.insert(o->path);
    return out;
  }
  throw PreconditionViolation("oracle: unsupported instruction");
}

FockVector fock_apply_all(FockVector v, const std::vector<Instruction>& program) {
  for (const auto& i : program) v = fock_apply(v, i);
  return v;
}

Complex fock_inner(const FockVector& a, const FockVector& b) {
  if (a.beams != b.beams || a.cutoff != b.cutoff) {
    throw ShapeMismatch("oracle: vectors differ in beams or cutoff");
  }
  Complex s = 0.0;
  for (const auto& [cfg, block] : a.blocks) {
    auto it = b.blocks.find(cfg);
    if (it == b.blocks.end()) continue;
    for (std::size_t i = 0; i < block.size(); ++i) s += std::conj(block[i]) * it->second[i];
  }
  return s;
}

double fock_norm(const FockVector& v) { return std::sqrt(total_norm2(v)); }

std::vector<double> fock_number_distribution(const FockVector& v, BeamId beam) {
  require_beam(v, beam);
  const std::size_t dim = static_cast<std::size_t>(v.cutoff) + 1;
  const std::size_t stride = ipow(dim, beam);
  std::vector<double> p(dim, 0.0);
  for (const auto& [cfg, block] : v.blocks) {
    for (std::size_t i = 0; i < block.size(); ++i) p[(i / stride) % dim] += std::norm(block[i]);
  }
  return p;
}

FockVector fock_project(const FockVector& v, BeamId beam, long n) {
  require_beam(v, beam);
  if (n < 0 || n > v.cutoff) throw PreconditionViolation("oracle: Fock number outside cutoff");
  const std::size_t dim = static_cast<std::size_t>(v.cutoff) + 1;
  const std::size_t stride = ipow(dim, beam);
  FockVector out = v;
  out.beams = v.beams - 1;
  out.blocks.clear();
  for (const auto& [cfg, block] : v.blocks) {
    std::vector<Complex> nb;
    nb.reserve(block.size() / dim);
    for (std::size_t i = 0; i < block.size(); ++i) {
      if ((i / stride) % dim == static_cast<std::size_t>(n)) nb.push_back(block[i]);
    }
    if (squared_norm(nb) > 0.0) out.blocks[cfg] = std::move(nb);
  }
  return out;
}

FockVector fock_filter_path(const FockVector& v, PathId path, bool present) {
  require_path(v, path);
  FockVector out = v;
  for (auto it = out.blocks.begin(); it != out.blocks.end();) {
    if ((it->first.count_on_path(path) == 1) != present) it = out.blocks.erase(it);
    else ++it;
  }
  return out;
}

FockVector fock_scaled(const FockVector& v, Complex factor) {
  FockVector out = v;
  for (auto& [cfg, block] : out.blocks) {
    for (auto& x : block) x *= factor;
  }
  return out;
}

double compare(const HybridState& state, const FockVector& fock) {
  if (state.beam_count() != fock.beams) {
    throw ShapeMismatch("compare: beam counts differ");
  }
  const FockVector e = fock_encode(state, fock.cutoff);
  return 1.0 - std::abs(fock_inner(e, fock)) + std::abs(fock_norm(e) - fock_norm(fock));
}

}  // namespace qubus
