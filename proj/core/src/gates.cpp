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

#include "qubus/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qubus/errors.hpp"

namespace qubus {

namespace {

constexpr double kPi = std::numbers::pi;

struct BeamReading {
  std::string value;
  std::optional<long> n;  // nullopt: the detector gave no usable number
  double probability = 0.0;
  HybridState state;
};

template <class T>
std::vector<T> pick(std::vector<T> all, const MeasureOptions& opts) {
  if (!opts.sampler || all.empty()) return all;
  std::vector<T> one;
  one.push_back(sample_record(all, *opts.sampler));
  return one;
}

std::vector<BeamReading> read_beam_all(const HybridState& s, BeamId beam, const MeasureOptions& opts,
                                   double theta) {
  std::vector<BeamReading> out;
  if (opts.mode == MeasureMode::Fock) {
    for (auto& f : enumerate_fock_outcomes(s, beam, std::nullopt, opts.tail)) {
      out.push_back({"n=" + std::to_string(f.n), f.n, f.probability, std::move(f.state)});
    }
    return out;
  }
  for (auto& r : qnd_detect(s, beam, opts.detector(theta), opts.tail)) {
    out.push_back({to_string(r.label) + " [n=" + std::to_string(r.fock_n) + "]",
                   inferred_count(r.label), r.probability, std::move(r.state)});
  }
  return out;
}

std::vector<BeamReading> read_beam(const HybridState& s, BeamId beam, const MeasureOptions& opts,
                                   double theta) {
  return pick(read_beam_all(s, beam, opts, theta), opts);
}

HybridState drop_spent_beam(const HybridState& s, BeamId beam) {
  if (auto dropped = s.without_product_beam(beam)) return *dropped;
  return s;
}

void require_single_photon(const HybridState& s, PathId path, const char* what) {
  s.require_path(path);
  for (const auto& b : s.branches()) {
    if (b.config.count_on_path(path) != 1) {
      throw PreconditionViolation(std::string(what) + ": path " + std::to_string(path) +
                                  " must hold exactly one photon in every branch");
    }
  }
}

void require_empty_path(const HybridState& s, PathId path, const char* what) {
  for (const auto& b : s.branches()) {
    if (b.config.count_on_path(path) != 0) {
      throw PreconditionViolation(std::string(what) + ": path " + std::to_string(path) +
                                  " is already occupied");
    }
  }
}

std::vector<PathId> allocate(HybridState& s, int count) {
  std::vector<PathId> ids;
  for (int i = 0; i < count; ++i) {
    ids.push_back(s.fresh_path());
    s = s.with_path(ids.back());
  }
  return ids;
}

std::vector<GateRecord> maybe_coalesce(std::vector<GateRecord> recs, const MeasureOptions& opts) {
  if (!opts.coalesce) return recs;
  return coalesce_records(std::move(recs));
}

bool same_sites(const std::vector<Outcome>& a, const std::vector<Outcome>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].site != b[i].site) return false;
  }
  return true;
}

void merge_values(std::vector<Outcome>& into, const std::vector<Outcome>& from) {
  for (std::size_t i = 0; i < into.size(); ++i) {
    for (const auto& v : from[i].values) {
      if (std::find(into[i].values.begin(), into[i].values.end(), v) == into[i].values.end()) {
        into[i].values.push_back(v);
      }
    }
  }
}

}  // namespace

double GateResult::total_probability() const {
  double t = 0.0;
  for (const auto& r : records) t += r.probability;
  return t;
}

ResourceReport resource_report(const ResourceTrace& trace, double theta) {
  ResourceReport r;
  for (const auto& e : trace) {
    if (e.kind == GateKind::CPath) ++r.c_path_count;
    else ++r.merging_count;
    if (e.fresh_ancilla) ++r.ancilla_photons_concurrent;
    r.xpm_coupling_count += e.xpm_couplings;
    ++r.qubus_uses;
  }
  r.cumulative_qubus_attenuation = std::pow(std::cos(theta), r.qubus_uses);
  return r;
}

std::vector<GateRecord> coalesce_records(std::vector<GateRecord> records, double tol) {
  std::vector<GateRecord> out;
  for (auto& rec : records) {
    bool merged = false;
    for (auto& o : out) {
      if (o.failed || rec.failed) continue;
      if (o.ancilla != rec.ancilla || !same_sites(o.outcomes, rec.outcomes)) continue;
      if (o.state.beam_count() != rec.state.beam_count()) continue;
      if (state_fidelity(o.state, rec.state) < 1.0 - tol) continue;
      o.probability += rec.probability;
      merge_values(o.outcomes, rec.outcomes);
      merged = true;
      break;
    }
    if (!merged) out.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Instruction> c_path_entangler(PathId first, PathId second,
                                          const std::vector<ModeSelector>& first_couplings,
                                          const std::vector<ModeSelector>& second_couplings,
                                          BeamId beam0, const QubusResources& res) {
  const BeamId beam1 = beam0 + 1;
  std::vector<Instruction> p;
  p.emplace_back(op::RegisterPath{second});
  p.emplace_back(op::PhotonBs{first, second});
  p.emplace_back(op::AddBeam{Complex(res.alpha)});
  p.emplace_back(op::AddBeam{Complex(res.alpha)});
  p.emplace_back(op::Xpm{ModeSelector::any(first), beam0, res.theta});
  for (const auto& c : first_couplings) p.emplace_back(op::Xpm{c, beam0, res.theta});
  p.emplace_back(op::Xpm{ModeSelector::any(second), beam1, res.theta});
  for (const auto& c : second_couplings) p.emplace_back(op::Xpm{c, beam1, res.theta});
  p.emplace_back(op::QubusPhase{beam0, -res.theta});
  p.emplace_back(op::QubusPhase{beam1, -res.theta});
  p.emplace_back(op::QubusBs{beam0, beam1});
  return p;
}

std::vector<Instruction> c_path_correction(long n, PathId first, PathId second) {
  std::vector<Instruction> p;
  if (n == 0) return p;
  p.emplace_back(op::SwapPaths{first, second});
  if (n % 2 != 0) p.emplace_back(op::PhaseShift{ModeSelector::any(second), kPi});
  return p;
}

std::vector<Instruction> merging_entangler(PathId src1, PathId src2, PathId dest, BeamId beam0,
                                           const QubusResources& res) {
  const BeamId beam1 = beam0 + 1;
  std::vector<Instruction> p;
  p.emplace_back(op::AddBeam{Complex(res.alpha)});
  p.emplace_back(op::AddBeam{Complex(res.alpha)});
  p.emplace_back(op::Xpm{ModeSelector::v(src1), beam0, res.theta});
  p.emplace_back(op::Xpm{ModeSelector::v(src2), beam0, res.theta});
  p.emplace_back(op::Xpm{ModeSelector::h(dest), beam0, res.theta});
  p.emplace_back(op::Xpm{ModeSelector::h(src1), beam1, res.theta});
  p.emplace_back(op::Xpm{ModeSelector::h(src2), beam1, res.theta});
  p.emplace_back(op::Xpm{ModeSelector::v(dest), beam1, res.theta});
  p.emplace_back(op::QubusPhase{beam0, -res.theta});
  p.emplace_back(op::QubusPhase{beam1, -res.theta});
  p.emplace_back(op::QubusBs{beam0, beam1});
  return p;
}

std::vector<Instruction> merging_entangler_correction(long n, PathId dest, AncillaSign sign) {
  std::vector<Instruction> p;
  if (n != 0) {
    p.emplace_back(op::ModeUnitary{Mode{dest, Pol::H}, Mode{dest, Pol::V}, gates2::pauli_x()});
  }
  const bool odd = n % 2 != 0;
  const bool minus = sign == AncillaSign::Minus;
  if (odd != minus) p.emplace_back(op::PhaseShift{ModeSelector::v(dest), kPi});
  return p;
}

std::vector<Instruction> merging_interferometer(PathId src1, PathId src2,
                                                const std::vector<PathId>& ports) {
  if (ports.size() != 4) throw PreconditionViolation("merging interferometer needs four ports");
  std::vector<Instruction> p;
  for (PathId q : ports) p.emplace_back(op::RegisterPath{q});
  p.emplace_back(op::PhotonBs{src1, src2});
  p.emplace_back(op::PbsDiag{src1, ports[0], ports[1]});
  p.emplace_back(op::PbsDiag{src2, ports[2], ports[3]});
  return p;
}

std::vector<Instruction> merging_locate_correction(int port, PathId dest,
                                                   const ModeSelector& marker) {
  std::vector<Instruction> p;
  if (port == 1 || port == 3) p.emplace_back(op::PhaseShift{ModeSelector::v(dest), kPi});
  if (port == 2 || port == 3) p.emplace_back(op::PhaseShift{marker, kPi});
  return p;
}

// ---------------------------------------------------------------------------

GateResult controlled_path(const HybridState& state, PathId first, PathId second,
                           const std::vector<ModeSelector>& first_couplings,
                           const std::vector<ModeSelector>& second_couplings,
                           const QubusResources& res, const MeasureOptions& opts) {
  require_single_photon(state, first, "c-path target");
  if (first == second) throw PreconditionViolation("c-path: target paths must differ");
  require_empty_path(state, second, "c-path");
  for (const auto& c : first_couplings) state.require_path(c.path);
  for (const auto& c : second_couplings) state.require_path(c.path);

  const BeamId beam0 = state.beam_count();
  const HybridState entangled =
      apply_all(state, c_path_entangler(first, second, first_couplings, second_couplings, beam0, res));

  GateResult result;
  result.theta = res.theta;
  result.recycled_qubus = Complex(std::sqrt(2.0) * res.alpha * std::cos(res.theta));
  result.trace.push_back(
      {GateKind::CPath,
       static_cast<int>(2 + first_couplings.size() + second_couplings.size()), false});

  for (auto& r : read_beam(entangled, beam0, opts, res.theta)) {
    GateRecord rec;
    rec.outcomes.push_back({"c-path", {r.value}});
    rec.probability = r.probability;
    if (!r.n) {
      rec.failed = true;
      rec.state = std::move(r.state);
    } else {
      rec.state = drop_spent_beam(apply_all(r.state, c_path_correction(*r.n, first, second)), beam0);
    }
    result.records.push_back(std::move(rec));
  }
  result.records = maybe_coalesce(std::move(result.records), opts);
  return result;
}

GateResult c_path(const HybridState& state, PathId control, PathId target, PathId second,
                  const QubusResources& res, const MeasureOptions& opts) {
  require_single_photon(state, control, "c-path control");
  if (control == target || control == second) {
    throw PreconditionViolation("c-path: control and target paths must differ");
  }
  return controlled_path(state, target, second, {ModeSelector::v(control)},
                         {ModeSelector::h(control)}, res, opts);
}

namespace {

struct Located {
  int port = -1;  // -1: no unique photon report
  std::string value;
  double probability = 0.0;
  HybridState state;
};

HybridState keep_port(const HybridState& s, PathId port, bool present) {
  std::vector<Branch> kept;
  for (const auto& b : s.branches()) {
    if ((b.config.count_on_path(port) == 1) == present) kept.push_back(b);
  }
  return HybridState::from_branches(std::move(kept), s.beam_count(),
                                    {s.paths().begin(), s.paths().end()});
}

std::vector<Located> locate_photon_all(const HybridState& s, const std::vector<PathId>& ports,
                                   const MeasureOptions& opts, double theta) {
  std::vector<Located> out;
  if (opts.mode == MeasureMode::Fock) {
    for (int i = 0; i < 4; ++i) {
      HybridState part = keep_port(s, ports[static_cast<std::size_t>(i)], true);
      const double p = std::pow(norm(part), 2);
      if (p <= kNegligibleProbability) continue;
      out.push_back({i, "q" + std::to_string(i + 5), p, normalized(part)});
    }
    return out;
  }
  // Probe every port in turn; a usable report is exactly one Peak(1).
  struct Partial {
    std::vector<PovmLabel> labels;
    double probability;
    HybridState state;
  };
  std::vector<Partial> partial{{{}, 1.0, s}};
  DetectorParams det = opts.detector(theta);
  for (PathId port : ports) {
    std::vector<Partial> next;
    for (const auto& pr : partial) {
      for (auto& r : detect_photon_presence(pr.state, port, det)) {
        if (r.probability * pr.probability <= kNegligibleProbability) continue;
        auto labels = pr.labels;
        labels.push_back(r.label);
        next.push_back({std::move(labels), pr.probability * r.probability, std::move(r.state)});
      }
    }
    partial = std::move(next);
  }
  for (auto& pr : partial) {
    int hit = -1;
    int hits = 0;
    std::string value;
    for (int i = 0; i < 4; ++i) {
      const auto& l = pr.labels[static_cast<std::size_t>(i)];
      if (i) value += ",";
      value += to_string(l);
      if (l.tag == PovmTag::Peak && l.k == 1) {
        hit = i;
        ++hits;
      } else if (l.tag == PovmTag::Ambiguous || l.tag == PovmTag::Peak) {
        hits = 99;
      }
    }
    out.push_back({hits == 1 ? hit : -1, value, pr.probability, std::move(pr.state)});
  }
  return out;
}

std::vector<Located> locate_photon(const HybridState& s, const std::vector<PathId>& ports,
                                   const MeasureOptions& opts, double theta) {
  return pick(locate_photon_all(s, ports, opts, theta), opts);
}

}  // namespace

GateResult merging(const HybridState& state, PathId src1, PathId src2, PathId dest,
                   const ModeSelector& marker, const std::optional<Ancilla>& recycled,
                   AncillaSign fresh_sign, const QubusResources& res, const MeasureOptions& opts) {
  state.require_path(src1);
  state.require_path(src2);
  if (src1 == src2 || dest == src1 || dest == src2) {
    throw PreconditionViolation("merging: source and destination paths must be distinct");
  }
  for (const auto& b : state.branches()) {
    if (b.config.count_on_path(src1) + b.config.count_on_path(src2) != 1) {
      throw PreconditionViolation("merging: exactly one photon must occupy the two sources");
    }
  }
  state.require_path(marker.path);

  HybridState s = state.with_path(dest);
  AncillaSign sign = fresh_sign;
  bool fresh = true;
  if (recycled) {
    require_single_photon(s, recycled->path, "merging ancilla");
    if (recycled->path != dest) {
      require_empty_path(s, dest, "merging destination");
      s = swap_paths(s, recycled->path, dest);
    }
    sign = recycled->sign;
    fresh = false;
  } else {
    require_empty_path(s, dest, "merging destination");
    s = s.with_photon(sign == AncillaSign::Plus ? PhotonQubit::plus(dest)
                                                : PhotonQubit::minus(dest));
  }

  const BeamId beam0 = s.beam_count();
  const HybridState entangled = apply_all(s, merging_entangler(src1, src2, dest, beam0, res));

  GateResult result;
  result.theta = res.theta;
  result.recycled_qubus = Complex(std::sqrt(2.0) * res.alpha * std::cos(res.theta));
  result.qubit_paths = {dest};
  result.trace.push_back({GateKind::Merging, 6, fresh});

  std::vector<GateRecord> stage1;
  for (auto& r : read_beam(entangled, beam0, opts, res.theta)) {
    GateRecord rec;
    rec.outcomes.push_back({"merge-parity", {r.value}});
    rec.probability = r.probability;
    if (!r.n) {
      rec.failed = true;
      rec.state = std::move(r.state);
    } else {
      rec.state =
          drop_spent_beam(apply_all(r.state, merging_entangler_correction(*r.n, dest, sign)), beam0);
    }
    stage1.push_back(std::move(rec));
  }
  stage1 = maybe_coalesce(std::move(stage1), opts);

  for (auto& parent : stage1) {
    if (parent.failed) {
      parent.outcomes.push_back({"merge-locate", {}});
      result.records.push_back(std::move(parent));
      continue;
    }
    HybridState here = parent.state;
    const std::vector<PathId> ports = allocate(here, 4);
    here = apply_all(here, merging_interferometer(src1, src2, ports));
    for (auto& loc : locate_photon(here, ports, opts, res.theta)) {
      GateRecord rec;
      rec.outcomes = parent.outcomes;
      rec.outcomes.push_back({"merge-locate", {loc.value}});
      rec.probability = parent.probability * loc.probability;
      if (loc.port < 0) {
        rec.failed = true;
        rec.state = std::move(loc.state);
      } else {
        rec.state = apply_all(loc.state, merging_locate_correction(loc.port, dest, marker));
        rec.ancilla = Ancilla{ports[static_cast<std::size_t>(loc.port)],
                              loc.port % 2 == 0 ? AncillaSign::Plus : AncillaSign::Minus};
      }
      result.records.push_back(std::move(rec));
    }
  }
  result.records = maybe_coalesce(std::move(result.records), opts);
  return result;
}

// ---------------------------------------------------------------------------

GateResult run_stages(const HybridState& input, const std::vector<Stage>& stages,
                      const std::optional<Ancilla>& ancilla, const MeasureOptions& opts,
                      double theta) {
  GateResult acc;
  acc.theta = theta;
  acc.records.push_back({{}, 1.0, input, ancilla, false});
  for (const auto& stage : stages) {
    std::vector<GateRecord> next;
    bool traced = false;
    for (auto& parent : acc.records) {
      if (parent.failed) {
        next.push_back(std::move(parent));
        continue;
      }
      GateResult step = stage(parent.state, parent.ancilla);
      if (!traced) {
        acc.trace.insert(acc.trace.end(), step.trace.begin(), step.trace.end());
        if (step.recycled_qubus) acc.recycled_qubus = step.recycled_qubus;
        traced = true;
      }
      for (auto& child : step.records) {
        GateRecord rec;
        rec.outcomes = parent.outcomes;
        rec.outcomes.insert(rec.outcomes.end(), child.outcomes.begin(), child.outcomes.end());
        rec.probability = parent.probability * child.probability;
        rec.state = std::move(child.state);
        rec.ancilla = child.ancilla ? child.ancilla : parent.ancilla;
        rec.failed = child.failed;
        next.push_back(std::move(rec));
      }
    }
    acc.records = maybe_coalesce(std::move(next), opts);
  }
  return acc;
}

}  // namespace qubus
