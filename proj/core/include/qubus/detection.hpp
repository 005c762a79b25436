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

#include <optional>
#include <random>
#include <vector>

#include "qubus/state.hpp"

namespace qubus {

using Rng = std::mt19937_64;

/// QND records lighter than this are dropped from enumerations.
inline constexpr double kNegligibleProbability = 1e-15;

/// Uniform double in [0, 1) built from the top 53 bits of one draw, so the
/// stream is identical on every standard library.
double uniform01(Rng& rng);

double poisson_pmf(long n, double mean);
/// P(X > n) for X ~ Poisson(mean).
double poisson_tail(long n, double mean);
/// Smallest n with P(X > n) < tail.
long poisson_cutoff(double mean, double tail);

// ---------------------------------------------------------------------------
// Exact photon-number projection on a qubus beam

struct FockOutcome {
  long n = 0;
  double probability = 0.0;
  HybridState state;  // normalized, measured beam removed
};

/// Project beam `beam` onto |n> for every n up to the cutoff. Without an
/// explicit cutoff one is chosen so the largest branch Poisson tail is below
/// `tail`. An explicit cutoff whose tail exceeds 1e-9 raises CutoffTooSmall.
std::vector<FockOutcome> enumerate_fock_outcomes(const HybridState& state, BeamId beam,
                                                 std::optional<long> cutoff = std::nullopt,
                                                 double tail = 1e-12);

/// Projection onto a single Fock number; probability is the squared norm.
FockOutcome project_fock(const HybridState& state, BeamId beam, long n);

/// Draw n from the exact outcome distribution.
FockOutcome sample_fock(const HybridState& state, BeamId beam, Rng& rng, double tail = 1e-12);

// ---------------------------------------------------------------------------
// Indirect (QND) number-resolving detection

struct DetectorParams {
  double eta = 0.9;      // quantum efficiency
  double gamma = 100.0;  // probe amplitude |gamma|
  double theta_p = 0.1;  // probe XPM phase per signal photon
};

/// Poisson mean of the probe difference mode for signal Fock number n:
/// |(gamma e^{i n theta_p} - gamma)/sqrt2|^2 = gamma^2 (1 - cos(n theta_p)).
double probe_mean(const DetectorParams& det, long n);

struct PovmBin {
  long k = 0;
  long lo = 0;  // n_k
  long hi = 0;  // n_k'
};

struct PovmBins {
  double gamma = 0.0;
  double theta_p = 0.0;
  std::vector<PovmBin> bins;  // k = 0..k_max, disjoint and ordered
};

/// Bin boundaries at midpoints of adjacent probe means. Throws BinsOverlap if
/// two adjacent means are closer than 3 sqrt(mean) each.
PovmBins povm_bins(const DetectorParams& det, long k_max);

enum class PovmTag { Vacuum, Peak, Ambiguous };

struct PovmLabel {
  PovmTag tag = PovmTag::Vacuum;
  long k = 0;  // meaningful for Peak

  bool operator==(const PovmLabel&) const = default;
  auto operator<=>(const PovmLabel&) const = default;
};

struct PovmOutcome {
  PovmLabel label;
  double probability = 0.0;
};

std::string to_string(const PovmLabel& l);

/// Every label of the alphabet for `bins`: Vacuum, Peak(0..k_max), Ambiguous.
std::vector<PovmLabel> povm_alphabet(const PovmBins& bins);

/// Diagonal entry <m| Pi_label |m> of the POVM element.
double povm_element(const PovmBins& bins, const DetectorParams& det, const PovmLabel& label,
                    long m);

/// <delta| Pi_label |delta> for a coherent probe difference mode with mean |delta|^2.
double povm_weight(const PovmBins& bins, const DetectorParams& det, const PovmLabel& label,
                   double mean);

/// Signal Fock number reported by an outcome (nullopt for Ambiguous).
std::optional<long> inferred_count(const PovmLabel& label);

struct QndRecord {
  PovmLabel label;
  long fock_n = 0;  // true signal photon number behind this record
  double probability = 0.0;
  HybridState state;  // normalized, signal beam removed
};

/// Full QND chain on beam `beam`: probe rotation per signal photon, probe
/// beam splitter, POVM on the difference mode. Records are split by the true
/// signal photon number, so each post-state stays pure.
std::vector<QndRecord> qnd_detect(const HybridState& state, BeamId beam, const DetectorParams& det,
                                  double tail = 1e-12);

std::vector<PovmOutcome> outcome_distribution(const std::vector<QndRecord>& records);

struct PresenceRecord {
  PovmLabel label;
  bool present = false;  // whether the photon really was on the path
  double probability = 0.0;
  HybridState state;
};

/// QND module probing whether a single photon occupies `path`.
std::vector<PresenceRecord> detect_photon_presence(const HybridState& state, PathId path,
                                                   const DetectorParams& det);

/// Probability that an n >= 1 signal of mean photon number `signal_mean` is
/// read as vacuum.
double vacuum_misread_probability(double signal_mean, const DetectorParams& det);

/// Probability of the Vacuum outcome including the n = 0 term.
double vacuum_outcome_probability(double signal_mean, const DetectorParams& det);

/// Probability that the QND outcome does not report the true signal number.
double misclassification_probability(double signal_mean, const DetectorParams& det,
                                     double tail = 1e-12);

/// Exact misread-as-vacuum probability for a C-path signal beta = i sqrt2 alpha sin(theta).
double detection_error_exact(double alpha, double theta, const DetectorParams& det);

/// Closed form exp{-2 (1 - e^{-eta gamma^2 theta_p^2 / 2}) alpha^2 sin^2 theta}.
double detection_error_closed_form(double alpha, double theta, const DetectorParams& det);

/// Pick one entry of `records` with probability proportional to `.probability`.
template <class Record>
const Record& sample_record(const std::vector<Record>& records, Rng& rng) {
  double total = 0.0;
  for (const auto& r : records) total += r.probability;
  double u = uniform01(rng) * total;
  for (const auto& r : records) {
    if (u < r.probability) return r;
    u -= r.probability;
  }
  return records.back();
}

}  // namespace qubus
