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

#include "qubus_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "qubus/detection.hpp"
#include "qubus/errors.hpp"
#include "qubus/gates.hpp"
#include "qubus/linalg.hpp"
#include "qubus/oracle.hpp"
#include "qubus/verify.hpp"
#include "qubus_cli/circuit.hpp"

namespace qubus::cli {

namespace {

std::string fmt(double x, const char* spec = "%.9f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string label(std::size_t index, std::size_t k) {
  std::string s;
  for (std::size_t b = 0; b < k; ++b) s += (index >> (k - 1 - b)) & 1u ? 'V' : 'H';
  return s;
}

struct GateUnderTest {
  std::size_t qubits = 2;
  GateFn fn;
  MatrixX ideal;
};

GateUnderTest make_gate(const VerifyGateArgs& a) {
  const QubusResources res{a.alpha, a.theta};
  GateUnderTest g;
  auto two = [&](const Matrix4& u, const Matrix2& u1, const Matrix2& u2) {
    g.qubits = 2;
    g.ideal = u;
    if (a.via == "synth") {
      g.fn = [=](const HybridState& s) { return synth_two_qubit(s, 0, 1, u, res); };
    } else if (a.via == "pair") {
      g.fn = [=](const HybridState& s) { return controlled_pair(s, 0, 1, u1, u2, res); };
    } else {
      throw ValidationError("--via must be pair or synth");
    }
  };
  if (a.gate == "cnot") {
    two(cnot_matrix(), gates2::identity(), gates2::pauli_x());
  } else if (a.gate == "cz") {
    two(cz_matrix(), gates2::identity(), gates2::pauli_z());
  } else if (a.gate == "cphase") {
    two(controlled_pair_matrix(gates2::identity(), gates2::phase(a.phi)), gates2::identity(),
        gates2::phase(a.phi));
  } else if (a.gate == "swap" || a.gate == "synth") {
    Matrix4 u = swap_matrix();
    if (a.gate == "synth") {
      Rng rng(a.seed);
      u = random_unitary(4, rng);
    }
    g.qubits = 2;
    g.ideal = u;
    g.fn = [=](const HybridState& s) { return synth_two_qubit(s, 0, 1, u, res); };
  } else if (a.gate == "fredkin") {
    g.qubits = 3;
    g.ideal = fredkin_matrix();
    g.fn = [=](const HybridState& s) { return fredkin(s, 0, 1, 2, res); };
  } else if (a.gate == "toffoli") {
    g.qubits = 3;
    g.ideal = multi_controlled_x_matrix(2);
    g.fn = [=](const HybridState& s) { return toffoli(s, 0, 1, 2, res); };
  } else if (a.gate == "multi-toffoli") {
    if (a.controls < 1) throw ValidationError("--controls must be at least 1");
    const int k = a.controls;
    g.qubits = static_cast<std::size_t>(k) + 1;
    g.ideal = multi_controlled_x_matrix(k);
    std::vector<PathId> controls(static_cast<std::size_t>(k));
    std::iota(controls.begin(), controls.end(), 0);
    g.fn = [=](const HybridState& s) { return multi_toffoli(s, controls, k, res); };
  } else {
    throw ValidationError("unknown gate '" + a.gate +
                          "' (cnot, cz, cphase, swap, synth, fredkin, toffoli, multi-toffoli)");
  }
  return g;
}

}  // namespace

int verify_gate(const VerifyGateArgs& args, std::ostream& out) {
  const GateUnderTest g = make_gate(args);
  std::vector<PathId> frame(g.qubits);
  std::iota(frame.begin(), frame.end(), 0);
  const Eigen::MatrixXd table = truth_table(g.fn, frame);
  const std::size_t dim = std::size_t{1} << g.qubits;

  out << "# gate " << args.gate << " alpha=" << args.alpha << " theta=" << args.theta << "\n";
  out << "input";
  for (std::size_t i = 0; i < dim; ++i) out << "," << label(i, g.qubits);
  out << "\n";
  double table_err = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    out << label(j, g.qubits);
    for (std::size_t i = 0; i < dim; ++i) {
      const auto jj = static_cast<Eigen::Index>(j), ii = static_cast<Eigen::Index>(i);
      out << "," << fmt(table(jj, ii));
      table_err = std::max(table_err, std::abs(table(jj, ii) - std::norm(g.ideal(ii, jj))));
    }
    out << "\n";
  }
  const ProcessEstimate est = extract_process(g.fn, frame);
  const double residual = phase_insensitive_distance(est.matrix, g.ideal);
  const GateResult sample = g.fn(HybridState::logical(
      frame, std::vector<Complex>(dim, Complex(1.0 / std::sqrt(double(dim))))));
  const ResourceReport r = sample.resources();
  out << "# truth-table deviation " << fmt(table_err, "%.3e") << "\n";
  out << "# process residual " << fmt(residual, "%.3e") << " (tolerance 1e-8), min purity "
      << fmt(est.min_purity, "%.12f") << ", min success " << fmt(est.min_success, "%.12f") << "\n";
  out << "# resources: c-path " << r.c_path_count << ", merging " << r.merging_count
      << ", concurrent ancillas " << r.ancilla_photons_concurrent << "\n";
  const bool ok = residual <= 1e-8 && table_err <= 1e-8;
  out << "# " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kCheckFailed;
}

int error_curve(const ErrorCurveArgs& a, std::ostream& out) {
  out << "theta,alpha,gamma,eta,theta_p,alpha_sin_theta,exact,closed_form,vacuum_outcome\n";
  for (double theta : a.theta) {
    for (double alpha : a.alpha) {
      for (double gamma : a.gamma) {
        for (double eta : a.eta) {
          const std::vector<double> tps = a.theta_p.empty() ? std::vector<double>{theta} : a.theta_p;
          for (double tp : tps) {
            const DetectorParams det{eta, gamma, tp};
            const double mean = 2.0 * std::pow(alpha * std::sin(theta), 2);
            out << fmt(theta, "%.6g") << "," << fmt(alpha, "%.6g") << "," << fmt(gamma, "%.6g") << ","
                << fmt(eta, "%.6g") << "," << fmt(tp, "%.6g") << ","
                << fmt(alpha * std::sin(theta), "%.6g") << ","
                << fmt(detection_error_exact(alpha, theta, det), "%.12e") << ","
                << fmt(detection_error_closed_form(alpha, theta, det), "%.12e") << ","
                << fmt(vacuum_outcome_probability(mean, det), "%.12e") << "\n";
          }
        }
      }
    }
  }
  return kOk;
}

int resources(const std::string& gate, int qubits, std::ostream& out) {
  if (qubits < 2) throw ValidationError("--qubits must be at least 2");
  auto need = [&](int q) {
    if (qubits != q) {
      throw ValidationError(gate + " acts on " + std::to_string(q) + " qubits");
    }
  };
  std::vector<PathId> frame(static_cast<std::size_t>(qubits));
  std::iota(frame.begin(), frame.end(), 0);
  std::vector<Complex> amps(std::size_t{1} << qubits, 0.0);
  amps[0] = 1.0;
  const HybridState in = HybridState::logical(frame, amps);
  GateResult r;
  if (gate == "cnot") { need(2); r = cnot(in, 0, 1); }
  else if (gate == "cz") { need(2); r = cz(in, 0, 1); }
  else if (gate == "synth") { need(2); r = synth_two_qubit(in, 0, 1, swap_matrix()); }
  else if (gate == "fredkin") { need(3); r = fredkin(in, 0, 1, 2); }
  else if (gate == "toffoli") { need(3); r = toffoli(in, 0, 1, 2); }
  else if (gate == "multi-toffoli") {
    std::vector<PathId> controls(frame.begin(), frame.end() - 1);
    r = multi_toffoli(in, controls, frame.back());
  } else {
    throw ValidationError("unknown gate '" + gate + "' (cnot, cz, synth, fredkin, toffoli, multi-toffoli)");
  }
  const ResourceReport rep = r.resources();
  out << "gate " << gate << " on " << qubits << " qubits\n"
      << "c_path_count " << rep.c_path_count << "\n"
      << "merging_count " << rep.merging_count << "\n"
      << "ancilla_photons_concurrent " << rep.ancilla_photons_concurrent << "\n"
      << "xpm_coupling_count " << rep.xpm_coupling_count << "\n"
      << "qubus_uses " << rep.qubus_uses << "\n"
      << "cumulative_qubus_attenuation " << fmt(rep.cumulative_qubus_attenuation, "%.12f") << "\n";
  return kOk;
}

int oracle_check(const OracleCheckArgs& a, std::ostream& out) {
  out << "alpha,theta,check,distance,distribution_error,ok\n";
  bool all = true;
  for (double alpha : a.alpha) {
    for (double theta : a.theta) {
      for (const auto& c : oracle_equivalence_suite(alpha, theta, a.cutoff, a.seed)) {
        const bool ok = c.distance <= 1e-6 && c.distribution_error <= 1e-8;
        all = all && ok;
        out << fmt(alpha, "%.6g") << "," << fmt(theta, "%.6g") << "," << c.name << ","
            << fmt(c.distance, "%.3e") << "," << fmt(c.distribution_error, "%.3e") << ","
            << (ok ? "yes" : "no") << "\n";
      }
    }
  }
  return all ? kOk : kCheckFailed;
}

}  // namespace qubus::cli
