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

#include "qubus_cli/runner.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "qubus/detection.hpp"
#include "qubus/errors.hpp"
#include "qubus/instruction.hpp"
#include "qubus/linalg.hpp"
#include "qubus/verify.hpp"

namespace qubus::cli {

using nlohmann::json;

namespace {

std::string fmt(double x, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string fmt_complex(Complex c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%+.9f %+.9fi", c.real(), c.imag());
  return buf;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex to_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j[0].get<double>(), j[1].get<double>()};
}

Matrix2 matrix2(const json& j) {
  Matrix2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = to_complex(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  return m;
}

Matrix4 matrix4(const json& j) {
  Matrix4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = to_complex(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  return m;
}

PolFilter pol_of(const json& args, const char* key, PolFilter fallback) {
  if (!args.contains(key)) return fallback;
  const auto s = args[key].get<std::string>();
  if (s == "H") return PolFilter::H;
  if (s == "V") return PolFilter::V;
  return PolFilter::Any;
}

// Photon ids follow their qubit through gates that move it to a new path.
struct Tracker {
  std::vector<std::string> order;
  std::map<std::string, PathId> at;

  PathId resolve(const json& v) const {
    if (v.is_string()) return at.at(v.get<std::string>());
    return static_cast<PathId>(v.get<long long>());
  }
  std::vector<PathId> frame() const {
    std::vector<PathId> f;
    for (const auto& id : order) f.push_back(at.at(id));
    return f;
  }
};

using CallFn = std::function<GateResult(const HybridState&, const std::optional<Ancilla>&)>;

struct Plan {
  // Exactly one of these is set.
  std::vector<Instruction> local;
  CallFn gate;
  std::vector<PathId> inputs;  // qubit inputs, matched against qubit_paths
};

Plan plan_call(const GateCall& g, const Tracker& t, const RunSpec& run, const MeasureOptions& opts) {
  const json& a = g.args;
  auto ref = [&](const char* k) { return t.resolve(a[k]); };
  auto integer = [&](const char* k) { return static_cast<long long>(a[k].get<long long>()); };
  auto real = [&](const char* k) { return a[k].get<double>(); };
  const QubusResources res{a.contains("alpha") ? real("alpha") : run.alpha,
                           a.contains("theta") ? real("theta") : run.theta};
  Plan p;
  const std::string& op = g.op;
  if (op == "photon_bs") {
    p.local = {op::PhotonBs{ref("a"), ref("b")}};
  } else if (op == "pbs_hv" || op == "pbs_diag") {
    const auto tr = static_cast<PathId>(integer("transmit"));
    const auto rf = static_cast<PathId>(integer("reflect"));
    p.local = {op::RegisterPath{tr}, op::RegisterPath{rf}};
    if (op == "pbs_hv") p.local.push_back(op::PbsHv{ref("in"), tr, rf});
    else p.local.push_back(op::PbsDiag{ref("in"), tr, rf});
  } else if (op == "phase") {
    p.local = {op::PhaseShift{{ref("path"), pol_of(a, "pol", PolFilter::Any)}, real("phi")}};
  } else if (op == "unitary" || op == "hadamard" || op == "x" || op == "y" || op == "z") {
    const Matrix2 m = op == "unitary"    ? matrix2(a["matrix"])
                      : op == "hadamard" ? gates2::hadamard()
                      : op == "x"        ? gates2::pauli_x()
                      : op == "y"        ? gates2::pauli_y()
                                         : gates2::pauli_z();
    const PathId q = ref("path");
    p.local = {op::ModeUnitary{{q, Pol::H}, {q, Pol::V}, m}};
  } else if (op == "swap_paths") {
    p.local = {op::SwapPaths{ref("p"), ref("q")}};
  } else if (op == "qubus_bs") {
    p.local = {op::QubusBs{static_cast<BeamId>(integer("i")), static_cast<BeamId>(integer("j"))}};
  } else if (op == "qubus_phase") {
    p.local = {op::QubusPhase{static_cast<BeamId>(integer("beam")), real("phi")}};
  } else if (op == "xpm") {
    p.local = {op::Xpm{{ref("path"), pol_of(a, "pol", PolFilter::Any)},
                       static_cast<BeamId>(integer("beam")), real("theta")}};
  } else if (op == "add_beam") {
    p.local = {op::AddBeam{to_complex(a["amp"])}};
  } else if (op == "measure_beam") {
    const auto beam = static_cast<BeamId>(integer("beam"));
    p.gate = [beam, opts, res](const HybridState& s, const std::optional<Ancilla>&) {
      GateResult r;
      if (opts.mode == MeasureMode::Fock) {
        auto all = enumerate_fock_outcomes(s, beam, std::nullopt, opts.tail);
        if (opts.sampler) all = {sample_record(all, *opts.sampler)};
        for (auto& o : all) {
          r.records.push_back({{{"measure beam " + std::to_string(beam), {"n=" + std::to_string(o.n)}}},
                               o.probability, std::move(o.state), std::nullopt, false});
        }
      } else {
        auto all = qnd_detect(s, beam, opts.detector(res.theta), opts.tail);
        if (opts.sampler) all = {sample_record(all, *opts.sampler)};
        for (auto& o : all) {
          r.records.push_back({{{"measure beam " + std::to_string(beam),
                                 {to_string(o.label) + " [n=" + std::to_string(o.fock_n) + "]"}}},
                               o.probability, std::move(o.state), std::nullopt,
                               o.label.tag == PovmTag::Ambiguous});
        }
      }
      return r;
    };
  } else if (op == "c_path") {
    const PathId c = ref("control"), tg = ref("target");
    const std::optional<PathId> second =
        a.contains("second") ? std::optional<PathId>(static_cast<PathId>(integer("second"))) : std::nullopt;
    p.gate = [=](const HybridState& s, const std::optional<Ancilla>&) {
      return c_path(s, c, tg, second.value_or(s.fresh_path()), res, opts);
    };
  } else if (op == "merging") {
    const PathId s1 = ref("src1"), s2 = ref("src2");
    const ModeSelector marker{ref("marker"), pol_of(a, "marker_pol", PolFilter::V)};
    const std::optional<PathId> dest =
        a.contains("dest") ? std::optional<PathId>(static_cast<PathId>(integer("dest"))) : std::nullopt;
    p.inputs = {s1};
    p.gate = [=](const HybridState& s, const std::optional<Ancilla>& anc) {
      return merging(s, s1, s2, dest.value_or(s.fresh_path()), marker, anc, AncillaSign::Plus, res,
                     opts);
    };
  } else if (op == "cnot" || op == "cz" || op == "c_phase" || op == "controlled_pair") {
    const PathId c = ref("control"), tg = ref("target");
    Matrix2 u1 = gates2::identity(), u2 = gates2::pauli_x();
    if (op == "cz") u2 = gates2::pauli_z();
    if (op == "c_phase") u2 = gates2::phase(real("phi"));
    if (op == "controlled_pair") {
      u1 = matrix2(a["u1"]);
      u2 = matrix2(a["u2"]);
    }
    p.inputs = {c, tg};
    p.gate = [=](const HybridState& s, const std::optional<Ancilla>& anc) {
      return controlled_pair(s, c, tg, u1, u2, res, opts, anc);
    };
  } else if (op == "synth") {
    const PathId q1 = ref("q1"), q2 = ref("q2");
    const Matrix4 u = matrix4(a["matrix"]);
    p.inputs = {q1, q2};
    p.gate = [=](const HybridState& s, const std::optional<Ancilla>& anc) {
      return synth_two_qubit(s, q1, q2, u, res, opts, anc);
    };
  } else if (op == "fredkin") {
    const PathId c = ref("control"), t1 = ref("t1"), t2 = ref("t2");
    p.inputs = {c, t1, t2};
    p.gate = [=](const HybridState& s, const std::optional<Ancilla>& anc) {
      return fredkin(s, c, t1, t2, res, opts, anc);
    };
  } else if (op == "toffoli" || op == "multi_toffoli") {
    std::vector<PathId> controls;
    if (op == "toffoli") {
      controls = {ref("c1"), ref("c2")};
    } else {
      for (const auto& v : a["controls"]) controls.push_back(t.resolve(v));
    }
    const PathId tg = ref("target");
    p.inputs = controls;
    p.inputs.push_back(tg);
    p.gate = [=](const HybridState& s, const std::optional<Ancilla>& anc) {
      return multi_toffoli(s, controls, tg, res, opts, anc);
    };
  } else {
    throw ValidationError("unknown operation '" + op + "'");
  }
  return p;
}

MeasureOptions options_for(const RunSpec& run) {
  MeasureOptions o;
  o.mode = run.measure == "qnd" ? MeasureMode::Qnd : MeasureMode::Fock;
  o.eta = run.eta;
  o.gamma = run.gamma;
  o.probe_phase = run.probe_phase;
  o.coalesce = run.coalesce;
  return o;
}

std::string basis_label(std::size_t index, std::size_t k) {
  std::string s = "|";
  for (std::size_t b = 0; b < k; ++b) s += (index >> (k - 1 - b)) & 1u ? 'V' : 'H';
  return s + ">";
}

struct LogicalView {
  bool available = false;
  bool pure = false;
  Eigen::VectorXcd amplitudes;  // when pure, global phase fixed
  Eigen::VectorXd probabilities;
};

LogicalView logical_view(const HybridState& s, const std::vector<PathId>& frame) {
  LogicalView v;
  if (frame.empty()) return v;
  MatrixX rho;
  try {
    rho = logical_density(s, frame);
  } catch (const Error&) {
    return v;
  }
  if (std::abs(rho.trace().real() - 1.0) > 1e-9) return v;
  v.available = true;
  v.probabilities = rho.diagonal().real();
  if ((rho * rho).trace().real() < 1.0 - 1e-9) return v;
  Eigen::SelfAdjointEigenSolver<MatrixX> es(rho);
  Eigen::VectorXcd psi = es.eigenvectors().col(rho.rows() - 1);
  Eigen::Index best = 0;
  psi.cwiseAbs().maxCoeff(&best);
  psi *= std::conj(psi(best)) / std::abs(psi(best));
  for (auto& x : psi) {
    if (std::abs(x.real()) < 1e-13) x.real(0.0);
    if (std::abs(x.imag()) < 1e-13) x.imag(0.0);
  }
  v.pure = true;
  v.amplitudes = psi;
  return v;
}

std::string outcome_summary(const Outcome& o) {
  std::string s = o.site + " {";
  const std::size_t shown = std::min<std::size_t>(o.values.size(), 3);
  for (std::size_t i = 0; i < shown; ++i) s += (i ? ", " : "") + o.values[i];
  if (o.values.size() > shown) s += ", ... " + std::to_string(o.values.size()) + " outcomes";
  return s + "}";
}

json record_json(const GateRecord& r, const std::vector<PathId>& frame) {
  json j;
  j["probability"] = r.probability;
  j["failed"] = r.failed;
  if (r.ancilla) {
    j["ancilla"] = {{"path", r.ancilla->path}, {"sign", r.ancilla->sign == AncillaSign::Plus ? "+" : "-"}};
  } else {
    j["ancilla"] = nullptr;
  }
  j["outcomes"] = json::array();
  for (const auto& o : r.outcomes) j["outcomes"].push_back({{"site", o.site}, {"values", o.values}});
  const LogicalView v = logical_view(r.state, frame);
  if (v.available) {
    json l{{"paths", frame}, {"pure", v.pure}};
    l["probabilities"] = std::vector<double>(v.probabilities.data(),
                                             v.probabilities.data() + v.probabilities.size());
    if (v.pure) {
      l["amplitudes"] = json::array();
      for (const auto& x : v.amplitudes) l["amplitudes"].push_back(complex_json(x));
    }
    j["logical"] = l;
  } else {
    j["logical"] = nullptr;
  }
  j["branches"] = json::array();
  for (const auto& b : r.state.branches()) {
    json modes = json::array();
    for (const auto& m : b.config.modes()) modes.push_back(to_string(m));
    json q = json::array();
    for (const auto& x : b.qubus) q.push_back(complex_json(x));
    j["branches"].push_back({{"amp", complex_json(b.amp)}, {"modes", modes}, {"qubus", q}});
  }
  return j;
}

void record_text(std::ostream& os, const GateRecord& r, const std::vector<PathId>& frame,
                 const std::vector<std::string>& ids) {
  os << "  p=" << fmt(r.probability);
  if (r.failed) os << "  FAILED (ambiguous detection)";
  if (r.ancilla) {
    os << "  ancilla=path " << r.ancilla->path << " (" << (r.ancilla->sign == AncillaSign::Plus ? '+' : '-')
       << ")";
  }
  os << "\n";
  for (const auto& o : r.outcomes) os << "    " << outcome_summary(o) << "\n";
  const LogicalView v = logical_view(r.state, frame);
  if (!v.available) {
    os << "    state: " << r.state.branches().size() << " branches (not in logical form)\n";
    return;
  }
  os << "    logical [";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    os << (i ? " " : "") << ids[i] << "@" << frame[i];
  }
  os << "] " << (v.pure ? "pure" : "mixed") << "\n";
  for (Eigen::Index i = 0; i < v.probabilities.size(); ++i) {
    if (v.probabilities(i) < 1e-12) continue;
    os << "      " << basis_label(static_cast<std::size_t>(i), frame.size()) << "  ";
    if (v.pure) os << fmt_complex(v.amplitudes(i));
    else os << "p=" << fmt(v.probabilities(i));
    os << "\n";
  }
}

bool normalized_ok(const GateRecord& r) { return std::abs(norm(r.state) - 1.0) <= 1e-9; }

}  // namespace

std::vector<GateRecord> execute(const CircuitProgram& program, std::vector<GateRecord> records,
                                const MeasureOptions& opts, std::vector<PathId>* frame_out) {
  Tracker t;
  for (const auto& s : program.photons) {
    t.order.push_back(s.id);
    t.at[s.id] = s.path;
  }
  for (std::size_t i = 0; i < program.circuit.size(); ++i) {
    const GateCall& g = program.circuit[i];
    try {
      const Plan plan = plan_call(g, t, program.run, opts);
      std::vector<GateRecord> next;
      std::optional<std::vector<PathId>> outputs;
      for (auto& parent : records) {
        if (parent.failed) {
          next.push_back(std::move(parent));
          continue;
        }
        if (!plan.gate) {
          parent.state = apply_all(parent.state, plan.local);
          next.push_back(std::move(parent));
          continue;
        }
        GateResult step = plan.gate(parent.state, parent.ancilla);
        if (!outputs) outputs = step.qubit_paths;
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
      records = opts.coalesce ? coalesce_records(std::move(next)) : std::move(next);
      if (outputs && outputs->size() == plan.inputs.size()) {
        std::map<PathId, PathId> moves;
        for (std::size_t q = 0; q < plan.inputs.size(); ++q) moves[plan.inputs[q]] = (*outputs)[q];
        Tracker updated = t;
        for (auto& [id, p] : updated.at) {
          if (auto it = moves.find(t.at.at(id)); it != moves.end()) p = it->second;
        }
        t = updated;
      }
    } catch (const Error& e) {
      throw ProgramError(i, g.op, e.what());
    } catch (const std::out_of_range& e) {
      throw ProgramError(i, g.op, std::string("unresolved reference: ") + e.what());
    }
  }
  if (frame_out) *frame_out = t.frame();
  return records;
}

RunReport run_program(const CircuitProgram& program, const RunOverrides& overrides) {
  const std::string mode = overrides.mode.value_or(program.run.mode);
  const std::uint64_t seed = overrides.seed.value_or(program.run.seed);
  const int shots = overrides.shots.value_or(program.run.shots);
  if (mode != "exact" && mode != "sample") throw ValidationError("mode must be exact or sample");
  if (shots < 1) throw ValidationError("shots must be at least 1");

  std::vector<std::string> ids;
  for (const auto& s : program.photons) ids.push_back(s.id);
  const HybridState input = initial_state(program);
  MeasureOptions opts = options_for(program.run);

  RunReport report;
  std::ostringstream os;
  json& doc = report.document;
  doc["mode"] = mode;
  os << "qubus run: " << program.photons.size() << " photons, " << program.circuit.size()
     << " instructions, mode " << mode << ", measure " << program.run.measure << "\n";

  if (mode == "exact") {
    std::vector<PathId> frame;
    const auto records = execute(program, {{{}, 1.0, input, std::nullopt, false}}, opts, &frame);
    double total = 0.0, success = 0.0;
    bool norms = true;
    doc["records"] = json::array();
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      total += r.probability;
      if (!r.failed) success += r.probability;
      norms = norms && normalized_ok(r);
      os << "record " << i;
      record_text(os, r, frame, ids);
      doc["records"].push_back(record_json(r, frame));
    }
    const bool sum_ok = std::abs(total - 1.0) <= 1e-9;
    report.checks_ok = sum_ok && norms;
    os << "records: " << records.size() << "  total probability " << fmt(total, 12)
       << "  success " << fmt(success, 12) << "\n";
    os << "checks: probability sum " << (sum_ok ? "ok" : "FAILED") << ", state norms "
       << (norms ? "ok" : "FAILED") << "\n";
    doc["checks"] = {{"probability_sum", total}, {"success", success}, {"ok", report.checks_ok}};
  } else {
    Rng rng(seed);
    opts.sampler = &rng;
    opts.coalesce = false;
    doc["seed"] = seed;
    doc["shots"] = json::array();
    bool norms = true;
    os << "seed " << seed << ", " << shots << " shots\n";
    for (int s = 0; s < shots; ++s) {
      std::vector<PathId> frame;
      const auto records = execute(program, {{{}, 1.0, input, std::nullopt, false}}, opts, &frame);
      for (const auto& r : records) {
        norms = norms && normalized_ok(r);
        os << "shot " << s;
        record_text(os, r, frame, ids);
        json j = record_json(r, frame);
        j["shot"] = s;
        doc["shots"].push_back(j);
      }
    }
    report.checks_ok = norms;
    os << "checks: state norms " << (norms ? "ok" : "FAILED") << "\n";
    doc["checks"] = {{"ok", report.checks_ok}};
  }
  report.text = os.str();
  return report;
}

}  // namespace qubus::cli
