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

#include "qubus_cli/circuit.hpp"

#include <cmath>
#include <map>
#include <set>

#include "qubus/linalg.hpp"

namespace qubus::cli {

using nlohmann::json;

namespace {

enum class Kind { Ref, Int, Real, Complex, Matrix2, Matrix4, RefList, Pol };

struct ArgSpec {
  const char* name;
  Kind kind;
  bool required;
};

const std::map<std::string, std::vector<ArgSpec>>& catalog() {
  static const std::map<std::string, std::vector<ArgSpec>> ops = [] {
    const ArgSpec alpha{"alpha", Kind::Real, false}, theta{"theta", Kind::Real, false};
    std::map<std::string, std::vector<ArgSpec>> m;
    m["photon_bs"] = {{"a", Kind::Ref, true}, {"b", Kind::Ref, true}};
    m["pbs_hv"] = {{"in", Kind::Ref, true}, {"transmit", Kind::Int, true}, {"reflect", Kind::Int, true}};
    m["pbs_diag"] = m["pbs_hv"];
    m["phase"] = {{"path", Kind::Ref, true}, {"pol", Kind::Pol, false}, {"phi", Kind::Real, true}};
    m["unitary"] = {{"path", Kind::Ref, true}, {"matrix", Kind::Matrix2, true}};
    for (const char* g : {"hadamard", "x", "y", "z"}) m[g] = {{"path", Kind::Ref, true}};
    m["swap_paths"] = {{"p", Kind::Ref, true}, {"q", Kind::Ref, true}};
    m["qubus_bs"] = {{"i", Kind::Int, true}, {"j", Kind::Int, true}};
    m["qubus_phase"] = {{"beam", Kind::Int, true}, {"phi", Kind::Real, true}};
    m["xpm"] = {{"path", Kind::Ref, true}, {"pol", Kind::Pol, false}, {"beam", Kind::Int, true},
                {"theta", Kind::Real, true}};
    m["add_beam"] = {{"amp", Kind::Complex, true}};
    m["measure_beam"] = {{"beam", Kind::Int, true}};
    m["c_path"] = {{"control", Kind::Ref, true}, {"target", Kind::Ref, true},
                   {"second", Kind::Int, false}, alpha, theta};
    m["merging"] = {{"src1", Kind::Ref, true}, {"src2", Kind::Ref, true}, {"dest", Kind::Int, false},
                    {"marker", Kind::Ref, true}, {"marker_pol", Kind::Pol, false}, alpha, theta};
    m["cnot"] = {{"control", Kind::Ref, true}, {"target", Kind::Ref, true}, alpha, theta};
    m["cz"] = m["cnot"];
    m["c_phase"] = {{"control", Kind::Ref, true}, {"target", Kind::Ref, true},
                    {"phi", Kind::Real, true}, alpha, theta};
    m["controlled_pair"] = {{"control", Kind::Ref, true}, {"target", Kind::Ref, true},
                            {"u1", Kind::Matrix2, true}, {"u2", Kind::Matrix2, true}, alpha, theta};
    m["synth"] = {{"q1", Kind::Ref, true}, {"q2", Kind::Ref, true}, {"matrix", Kind::Matrix4, true},
                  alpha, theta};
    m["fredkin"] = {{"control", Kind::Ref, true}, {"t1", Kind::Ref, true}, {"t2", Kind::Ref, true},
                    alpha, theta};
    m["toffoli"] = {{"c1", Kind::Ref, true}, {"c2", Kind::Ref, true}, {"target", Kind::Ref, true},
                    alpha, theta};
    m["multi_toffoli"] = {{"controls", Kind::RefList, true}, {"target", Kind::Ref, true}, alpha,
                          theta};
    return m;
  }();
  return ops;
}

std::string where(const std::string& ptr) { return ptr.empty() ? "document root" : ptr; }

// Line/column of a byte offset, for parser diagnostics.
std::string locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Complex complex_at(const json& j, const std::string& ptr) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError(where(ptr) + ": expected a complex number [re, im]");
}

double real_at(const json& j, const std::string& ptr) {
  if (!j.is_number()) throw ParseError(where(ptr) + ": expected a number");
  return j.get<double>();
}

long long int_at(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw ParseError(where(ptr) + ": expected an integer");
  return j.get<long long>();
}

const json& object_at(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw ParseError(where(ptr) + ": expected an object");
  return j;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& ptr) {
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ValidationError(ptr + "/" + k + ": unknown field");
  }
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

void check_matrix(const json& j, int dim, const std::string& ptr) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(dim)) {
    throw ParseError(where(ptr) + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                     " matrix of [re, im] entries");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
      throw ParseError(where(ptr) + "/" + std::to_string(r) + ": row of wrong length");
    }
    for (int c = 0; c < dim; ++c) {
      m(r, c) = complex_at(row[static_cast<std::size_t>(c)],
                           ptr + "/" + std::to_string(r) + "/" + std::to_string(c));
    }
  }
  if (!is_unitary(m, 1e-9)) throw ValidationError(where(ptr) + ": matrix is not unitary");
}

void check_arg(const json& v, Kind kind, const std::string& ptr, const std::set<std::string>& ids) {
  switch (kind) {
    case Kind::Ref:
      if (v.is_string()) {
        if (!ids.count(v.get<std::string>())) {
          throw ValidationError(ptr + ": unknown photon id '" + v.get<std::string>() + "'");
        }
      } else if (v.is_number_integer()) {
        if (v.get<long long>() < 0) throw ValidationError(ptr + ": path ids are non-negative");
      } else {
        throw ParseError(ptr + ": expected a photon id or a path number");
      }
      break;
    case Kind::Int:
      if (int_at(v, ptr) < 0) throw ValidationError(ptr + ": must be non-negative");
      break;
    case Kind::Real:
      if (!std::isfinite(real_at(v, ptr))) throw ValidationError(ptr + ": must be finite");
      break;
    case Kind::Complex:
      complex_at(v, ptr);
      break;
    case Kind::Matrix2:
      check_matrix(v, 2, ptr);
      break;
    case Kind::Matrix4:
      check_matrix(v, 4, ptr);
      break;
    case Kind::RefList:
      if (!v.is_array() || v.empty()) throw ParseError(ptr + ": expected a non-empty list");
      for (std::size_t i = 0; i < v.size(); ++i) {
        check_arg(v[i], Kind::Ref, ptr + "/" + std::to_string(i), ids);
      }
      break;
    case Kind::Pol: {
      if (!v.is_string()) throw ParseError(ptr + ": expected \"H\", \"V\" or \"any\"");
      const auto s = v.get<std::string>();
      if (s != "H" && s != "V" && s != "any") {
        throw ValidationError(ptr + ": polarization must be H, V or any");
      }
      break;
    }
  }
}

}  // namespace

std::vector<std::string> known_operations() {
  std::vector<std::string> names;
  for (const auto& [k, v] : catalog()) names.push_back(k);
  return names;
}

CircuitProgram parse_circuit(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    const auto colon = msg.find("parse error");
    throw ParseError(locate(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                     (colon == std::string::npos ? msg : msg.substr(colon)));
  }
  object_at(doc, "");
  reject_unknown(doc, {"photons", "beams", "circuit", "run"}, "");

  CircuitProgram p;
  if (doc.contains("photons")) {
    const auto& ph = doc["photons"];
    if (!ph.is_array()) throw ParseError("/photons: expected an array");
    for (std::size_t i = 0; i < ph.size(); ++i) {
      const std::string ptr = "/photons/" + std::to_string(i);
      const auto& o = object_at(ph[i], ptr);
      reject_unknown(o, {"id", "path", "basis", "amplitudes"}, ptr);
      PhotonSpec s;
      if (!o.contains("id") || !o["id"].is_string()) throw ParseError(ptr + "/id: expected a string");
      s.id = o["id"].get<std::string>();
      if (!o.contains("path")) throw ParseError(ptr + "/path: missing");
      s.path = static_cast<PathId>(int_at(o["path"], ptr + "/path"));
      if (o.contains("basis")) {
        const auto& b = o["basis"];
        if (!b.is_string()) throw ParseError(ptr + "/basis: expected \"hv\" or \"pm\"");
        if (b == "hv") s.basis = Basis::HV;
        else if (b == "pm") s.basis = Basis::PM;
        else throw ValidationError(ptr + "/basis: must be hv or pm");
      }
      if (!o.contains("amplitudes") || !o["amplitudes"].is_array() || o["amplitudes"].size() != 2) {
        throw ParseError(ptr + "/amplitudes: expected two complex amplitudes");
      }
      s.a0 = complex_at(o["amplitudes"][0], ptr + "/amplitudes/0");
      s.a1 = complex_at(o["amplitudes"][1], ptr + "/amplitudes/1");
      p.photons.push_back(std::move(s));
    }
  }
  if (doc.contains("beams")) {
    const auto& b = doc["beams"];
    if (!b.is_array()) throw ParseError("/beams: expected an array");
    for (std::size_t i = 0; i < b.size(); ++i) {
      p.beams.push_back(complex_at(b[i], "/beams/" + std::to_string(i)));
    }
  }
  if (doc.contains("circuit")) {
    const auto& c = doc["circuit"];
    if (!c.is_array()) throw ParseError("/circuit: expected an array");
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::string ptr = "/circuit/" + std::to_string(i);
      const auto& o = object_at(c[i], ptr);
      if (!o.contains("op") || !o["op"].is_string()) throw ParseError(ptr + "/op: expected a string");
      GateCall g;
      g.op = o["op"].get<std::string>();
      for (const auto& [k, v] : o.items()) {
        if (k != "op") g.args[k] = v;
      }
      p.circuit.push_back(std::move(g));
    }
  }
  if (doc.contains("run")) {
    const auto& r = object_at(doc["run"], "/run");
    reject_unknown(r, {"mode", "measure", "seed", "shots", "eta", "gamma", "probe_phase", "alpha",
                       "theta", "coalesce"},
                   "/run");
    auto str = [&](const char* k, std::string& into) {
      if (!r.contains(k)) return;
      if (!r[k].is_string()) throw ParseError(std::string("/run/") + k + ": expected a string");
      into = r[k].get<std::string>();
    };
    auto real = [&](const char* k, double& into) {
      if (r.contains(k)) into = real_at(r[k], std::string("/run/") + k);
    };
    str("mode", p.run.mode);
    str("measure", p.run.measure);
    if (r.contains("seed")) {
      if (!r["seed"].is_number_unsigned()) throw ParseError("/run/seed: expected an unsigned integer");
      p.run.seed = r["seed"].get<std::uint64_t>();
    }
    if (r.contains("shots")) p.run.shots = static_cast<int>(int_at(r["shots"], "/run/shots"));
    real("eta", p.run.eta);
    real("gamma", p.run.gamma);
    real("alpha", p.run.alpha);
    real("theta", p.run.theta);
    if (r.contains("probe_phase")) p.run.probe_phase = real_at(r["probe_phase"], "/run/probe_phase");
    if (r.contains("coalesce")) {
      if (!r["coalesce"].is_boolean()) throw ParseError("/run/coalesce: expected true or false");
      p.run.coalesce = r["coalesce"].get<bool>();
    }
  }
  validate(p);
  return p;
}

void validate(const CircuitProgram& p) {
  std::set<std::string> ids;
  std::set<PathId> paths;
  for (std::size_t i = 0; i < p.photons.size(); ++i) {
    const auto& s = p.photons[i];
    const std::string ptr = "/photons/" + std::to_string(i);
    if (s.id.empty()) throw ValidationError(ptr + "/id: must not be empty");
    if (!ids.insert(s.id).second) throw ValidationError(ptr + "/id: duplicate id '" + s.id + "'");
    if (s.path < 0) throw ValidationError(ptr + "/path: must be non-negative");
    if (!paths.insert(s.path).second) {
      throw ValidationError(ptr + "/path: path " + std::to_string(s.path) + " already holds a photon");
    }
    const double n2 = std::norm(s.a0) + std::norm(s.a1);
    if (std::abs(n2 - 1.0) > 1e-9) {
      throw ValidationError(ptr + "/amplitudes: not normalized (norm^2 = " + std::to_string(n2) + ")");
    }
  }
  long beams = static_cast<long>(p.beams.size());
  auto beam_ref = [&](const json& v, const std::string& ptr) {
    if (v.get<long long>() >= beams) {
      throw ValidationError(ptr + ": beam " + std::to_string(v.get<long long>()) + " does not exist");
    }
  };
  for (std::size_t i = 0; i < p.circuit.size(); ++i) {
    const auto& g = p.circuit[i];
    const std::string ptr = "/circuit/" + std::to_string(i);
    const auto it = catalog().find(g.op);
    if (it == catalog().end()) throw ValidationError(ptr + "/op: unknown operation '" + g.op + "'");
    for (const auto& [k, v] : g.args.items()) {
      bool known = false;
      for (const auto& a : it->second) known = known || k == a.name;
      if (!known) throw ValidationError(ptr + "/" + k + ": unknown argument for " + g.op);
    }
    for (const auto& a : it->second) {
      const std::string aptr = ptr + "/" + a.name;
      if (!g.args.contains(a.name)) {
        if (a.required) throw ValidationError(aptr + ": missing argument");
        continue;
      }
      check_arg(g.args[a.name], a.kind, aptr, ids);
    }
    if (g.op == "qubus_bs") {
      beam_ref(g.args["i"], ptr + "/i");
      beam_ref(g.args["j"], ptr + "/j");
    } else if (g.op == "qubus_phase" || g.op == "xpm") {
      beam_ref(g.args["beam"], ptr + "/beam");
    } else if (g.op == "measure_beam") {
      beam_ref(g.args["beam"], ptr + "/beam");
      --beams;
    } else if (g.op == "add_beam") {
      ++beams;
    }
  }
  const auto& r = p.run;
  if (r.mode != "exact" && r.mode != "sample") throw ValidationError("/run/mode: must be exact or sample");
  if (r.measure != "fock" && r.measure != "qnd") throw ValidationError("/run/measure: must be fock or qnd");
  if (r.shots < 1) throw ValidationError("/run/shots: must be at least 1");
  if (!(r.eta > 0.0 && r.eta <= 1.0)) throw ValidationError("/run/eta: must lie in (0, 1]");
  if (!(r.gamma > 0.0)) throw ValidationError("/run/gamma: must be positive");
}

std::string serialize(const CircuitProgram& p) {
  json doc;
  doc["photons"] = json::array();
  for (const auto& s : p.photons) {
    doc["photons"].push_back({{"id", s.id},
                              {"path", s.path},
                              {"basis", s.basis == Basis::HV ? "hv" : "pm"},
                              {"amplitudes", json::array({complex_json(s.a0), complex_json(s.a1)})}});
  }
  doc["beams"] = json::array();
  for (const auto& b : p.beams) doc["beams"].push_back(complex_json(b));
  doc["circuit"] = json::array();
  for (const auto& g : p.circuit) {
    json o = g.args;
    o["op"] = g.op;
    doc["circuit"].push_back(o);
  }
  json r{{"mode", p.run.mode},   {"measure", p.run.measure}, {"seed", p.run.seed},
         {"shots", p.run.shots}, {"eta", p.run.eta},         {"gamma", p.run.gamma},
         {"alpha", p.run.alpha}, {"theta", p.run.theta},     {"coalesce", p.run.coalesce}};
  if (p.run.probe_phase) r["probe_phase"] = *p.run.probe_phase;
  doc["run"] = r;
  return doc.dump(2) + "\n";
}

HybridState initial_state(const CircuitProgram& p) {
  std::vector<PhotonQubit> qs;
  const double r = 1.0 / std::sqrt(2.0);
  for (const auto& s : p.photons) {
    if (s.basis == Basis::HV) {
      qs.push_back({s.path, s.a0, s.a1});
    } else {
      qs.push_back({s.path, r * (s.a0 + s.a1), r * (s.a0 - s.a1)});
    }
  }
  return HybridState::product(qs, p.beams);
}

}  // namespace qubus::cli
