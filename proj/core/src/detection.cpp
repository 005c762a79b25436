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

#include "qubus/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "qubus/errors.hpp"

namespace qubus {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double poisson_pmf(long n, double mean) {
  if (n < 0) return 0.0;
  if (mean <= 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(n) * std::log(mean) - mean -
                  std::lgamma(static_cast<double>(n) + 1.0));
}

double poisson_tail(long n, double mean) {
  if (n < 0) return 1.0;
  if (mean <= 0.0) return 0.0;
  if (static_cast<double>(n) >= mean) {
    // Upper tail summed directly; terms decay at least geometrically here.
    long double acc = 0.0L;
    for (long k = n + 1;; ++k) {
      const double t = poisson_pmf(k, mean);
      acc += t;
      if (t < 1e-30 || t < 1e-20 * static_cast<double>(acc)) break;
    }
    return static_cast<double>(acc);
  }
  long double cdf = 0.0L;
  for (long k = 0; k <= n; ++k) cdf += poisson_pmf(k, mean);
  return static_cast<double>(std::max(0.0L, 1.0L - cdf));
}

long poisson_cutoff(double mean, double tail) {
  long n = static_cast<long>(std::floor(mean));
  while (poisson_tail(n, mean) >= tail) ++n;
  // Walk back down in case floor(mean) already overshot for tiny means.
  while (n > 0 && poisson_tail(n - 1, mean) < tail) --n;
  return n;
}

// ---------------------------------------------------------------------------
// Fock projection

namespace {

Complex fock_coefficient(Complex beta, long n) {
  const double r2 = std::norm(beta);
  if (r2 == 0.0) return n == 0 ? Complex{1.0} : Complex{};
  const double logmag = -0.5 * r2 + static_cast<double>(n) * 0.5 * std::log(r2) -
                        0.5 * std::lgamma(static_cast<double>(n) + 1.0);
  return std::polar(std::exp(logmag), static_cast<double>(n) * std::arg(beta));
}

double max_beam_mean(const HybridState& state, BeamId beam) {
  double m = 0.0;
  for (const auto& b : state.branches()) m = std::max(m, std::norm(b.qubus[beam]));
  return m;
}

/// Unnormalized projection; beam removed.
HybridState project_raw(const HybridState& state, BeamId beam, long n) {
  std::vector<Branch> out;
  out.reserve(state.branches().size());
  for (const auto& b : state.branches()) {
    const Complex c = fock_coefficient(b.qubus[beam], n);
    if (c == Complex{}) continue;
    Branch nb{b.amp * c, b.config, b.qubus};
    nb.qubus.erase(nb.qubus.begin() + static_cast<std::ptrdiff_t>(beam));
    out.push_back(std::move(nb));
  }
  return HybridState::from_branches(std::move(out), state.beam_count() - 1, state.paths());
}

FockOutcome finish(HybridState raw, long n) {
  const double p = inner(raw, raw).real();
  FockOutcome out;
  out.n = n;
  out.probability = std::max(0.0, p);
  out.state = p > 0.0 ? canonicalize(raw.scaled(1.0 / std::sqrt(p))) : std::move(raw);
  return out;
}

}  // namespace

FockOutcome project_fock(const HybridState& state, BeamId beam, long n) {
  state.require_beam(beam);
  return finish(project_raw(state, beam, n), n);
}

std::vector<FockOutcome> enumerate_fock_outcomes(const HybridState& state, BeamId beam,
                                                 std::optional<long> cutoff, double tail) {
  state.require_beam(beam);
  const double mean = max_beam_mean(state, beam);
  long n_max = 0;
  if (cutoff) {
    if (*cutoff < 0) throw CutoffTooSmall("negative Fock cutoff");
    if (poisson_tail(*cutoff, mean) > 1e-9) {
      throw CutoffTooSmall("Fock cutoff " + std::to_string(*cutoff) +
                           " leaves a Poisson tail above 1e-9");
    }
    n_max = *cutoff;
  } else {
    n_max = poisson_cutoff(mean, tail);
  }
  std::vector<FockOutcome> out;
  for (long n = 0; n <= n_max; ++n) {
    FockOutcome o = finish(project_raw(state, beam, n), n);
    if (o.probability > 0.0) out.push_back(std::move(o));
  }
  return out;
}

FockOutcome sample_fock(const HybridState& state, BeamId beam, Rng& rng, double tail) {
  const auto outcomes = enumerate_fock_outcomes(state, beam, std::nullopt, tail);
  return sample_record(outcomes, rng);
}

// ---------------------------------------------------------------------------
// POVM

double probe_mean(const DetectorParams& det, long n) {
  return det.gamma * det.gamma * (1.0 - std::cos(static_cast<double>(n) * det.theta_p));
}

PovmBins povm_bins(const DetectorParams& det, long k_max) {
  if (k_max < 0) throw PreconditionViolation("k_max must be non-negative");
  if (det.eta < 0.0 || det.eta > 1.0) throw PreconditionViolation("efficiency must lie in [0,1]");
  PovmBins bins;
  bins.gamma = det.gamma;
  bins.theta_p = det.theta_p;
  std::vector<double> means;
  for (long k = 0; k <= k_max + 1; ++k) means.push_back(probe_mean(det, k));
  long lo = 0;
  for (long k = 0; k <= k_max; ++k) {
    const double a = means[static_cast<std::size_t>(k)];
    const double b = means[static_cast<std::size_t>(k) + 1];
    if (b - a < 3.0 * (std::sqrt(a) + std::sqrt(b))) {
      throw BinsOverlap("probe peaks " + std::to_string(k) + " and " + std::to_string(k + 1) +
                        " overlap (means " + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    const long hi = static_cast<long>(std::floor(0.5 * (a + b)));
    bins.bins.push_back({k, lo, hi});
    lo = hi + 1;
  }
  return bins;
}

std::string to_string(const PovmLabel& l) {
  switch (l.tag) {
    case PovmTag::Vacuum: return "vacuum";
    case PovmTag::Peak: return "peak" + std::to_string(l.k);
    case PovmTag::Ambiguous: return "ambiguous";
  }
  return "?";
}

std::vector<PovmLabel> povm_alphabet(const PovmBins& bins) {
  std::vector<PovmLabel> out{{PovmTag::Vacuum, 0}};
  for (const auto& b : bins.bins) out.push_back({PovmTag::Peak, b.k});
  out.push_back({PovmTag::Ambiguous, 0});
  return out;
}

double povm_element(const PovmBins& bins, const DetectorParams& det, const PovmLabel& label,
                    long m) {
  const double miss = std::pow(1.0 - det.eta, static_cast<double>(m));
  switch (label.tag) {
    case PovmTag::Vacuum: return miss;
    case PovmTag::Peak: {
      const auto& b = bins.bins.at(static_cast<std::size_t>(label.k));
      return (m >= b.lo && m <= b.hi) ? 1.0 - miss : 0.0;
    }
    case PovmTag::Ambiguous: return m > bins.bins.back().hi ? 1.0 - miss : 0.0;
  }
  return 0.0;
}

namespace {

/// sum_{m=lo}^{hi} Poisson(m; mean). Terms are built by ratio recurrence out
/// of the mode and normalized over a +-12 sigma window (outside mass below
/// e^-72), which avoids the cancellation of exp(-mean + m log mean - lgamma)
/// at large means.
double poisson_range(long lo, long hi, double mean) {
  if (mean <= 0.0) return (lo <= 0 && hi >= 0) ? 1.0 : 0.0;
  const double spread = 12.0 * std::sqrt(mean) + 30.0;
  const long a = std::max(0L, static_cast<long>(std::floor(mean - spread)));
  const long b = static_cast<long>(std::ceil(mean + spread));
  lo = std::max(lo, a);
  hi = std::min(hi, b);
  if (lo > hi) return 0.0;
  const long mode = std::clamp(static_cast<long>(std::floor(mean)), a, b);
  long double total = 0.0L, part = 0.0L;
  const auto add = [&](long m, long double t) {
    total += t;
    if (m >= lo && m <= hi) part += t;
  };
  long double t = 1.0L;
  add(mode, t);
  for (long m = mode; m < b; ++m) {
    t *= mean / static_cast<long double>(m + 1);
    add(m + 1, t);
  }
  t = 1.0L;
  for (long m = mode; m > a; --m) {
    t *= static_cast<long double>(m) / mean;
    add(m - 1, t);
  }
  return static_cast<double>(part / total);
}

double peak_weight(const PovmBin& b, const DetectorParams& det, double mean) {
  // sum Pois(m; mu) [1 - (1-eta)^m] = S(mu) - e^{-eta mu} S(mu (1-eta))
  const double all = poisson_range(b.lo, b.hi, mean);
  const double missed = std::exp(-det.eta * mean) * poisson_range(b.lo, b.hi, mean * (1.0 - det.eta));
  return std::max(0.0, all - missed);
}

}  // namespace

double povm_weight(const PovmBins& bins, const DetectorParams& det, const PovmLabel& label,
                   double mean) {
  switch (label.tag) {
    case PovmTag::Vacuum: return std::exp(-det.eta * mean);
    case PovmTag::Peak: return peak_weight(bins.bins.at(static_cast<std::size_t>(label.k)), det, mean);
    case PovmTag::Ambiguous: {
      // The bins tile [0, hi] without gaps, so only clicks above the last bin remain.
      const PovmBin above{-1, bins.bins.back().hi + 1, std::numeric_limits<long>::max() / 4};
      return peak_weight(above, det, mean);
    }
  }
  return 0.0;
}

std::optional<long> inferred_count(const PovmLabel& label) {
  switch (label.tag) {
    case PovmTag::Vacuum: return 0;
    case PovmTag::Peak: return label.k;
    case PovmTag::Ambiguous: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<QndRecord> qnd_detect(const HybridState& state, BeamId beam, const DetectorParams& det,
                                  double tail) {
  state.require_beam(beam);
  const long n_max = poisson_cutoff(max_beam_mean(state, beam), tail);
  const PovmBins bins = povm_bins(det, n_max);
  const auto alphabet = povm_alphabet(bins);
  std::vector<QndRecord> out;
  for (long n = 0; n <= n_max; ++n) {
    FockOutcome f = finish(project_raw(state, beam, n), n);
    if (f.probability <= 0.0) continue;
    const double mu = probe_mean(det, n);
    for (const auto& label : alphabet) {
      const double p = f.probability * povm_weight(bins, det, label, mu);
      if (p <= kNegligibleProbability) continue;
      out.push_back({label, n, p, f.state});
    }
  }
  return out;
}

std::vector<PovmOutcome> outcome_distribution(const std::vector<QndRecord>& records) {
  std::map<PovmLabel, double> acc;
  for (const auto& r : records) acc[r.label] += r.probability;
  std::vector<PovmOutcome> out;
  for (const auto& [label, p] : acc) out.push_back({label, p});
  return out;
}

std::vector<PresenceRecord> detect_photon_presence(const HybridState& state, PathId path,
                                                   const DetectorParams& det) {
  state.require_path(path);
  std::vector<Branch> on, off;
  for (const auto& b : state.branches()) {
    const int c = b.config.count_on_path(path);
    if (c > 1) throw MultiPhotonCollision("two photons on one QND-probed path");
    (c == 1 ? on : off).push_back(b);
  }
  const PovmBins bins = povm_bins(det, 1);
  std::vector<PresenceRecord> out;
  for (const bool present : {false, true}) {
    HybridState part = HybridState::from_branches(present ? on : off, state.beam_count(), state.paths());
    const double p = inner(part, part).real();
    if (p <= 0.0) continue;
    part = canonicalize(part.scaled(1.0 / std::sqrt(p)));
    const double mu = present ? probe_mean(det, 1) : 0.0;
    for (const auto& label : povm_alphabet(bins)) {
      const double w = p * povm_weight(bins, det, label, mu);
      if (w <= kNegligibleProbability) continue;
      out.push_back({label, present, w, part});
    }
  }
  return out;
}

double vacuum_misread_probability(double signal_mean, const DetectorParams& det) {
  long double acc = 0.0L;
  const double stop = signal_mean + 10.0 * std::sqrt(signal_mean) + 20.0;
  for (long n = 1;; ++n) {
    const double p = poisson_pmf(n, signal_mean);
    acc += p * std::exp(-det.eta * probe_mean(det, n));
    if (static_cast<double>(n) > stop && p < 1e-18) break;
    if (signal_mean == 0.0) break;
  }
  return static_cast<double>(acc);
}

double vacuum_outcome_probability(double signal_mean, const DetectorParams& det) {
  return std::exp(-signal_mean) + vacuum_misread_probability(signal_mean, det);
}

double misclassification_probability(double signal_mean, const DetectorParams& det, double tail) {
  const long n_max = poisson_cutoff(signal_mean, tail);
  const PovmBins bins = povm_bins(det, n_max);
  long double err = 0.0L;
  for (long n = 0; n <= n_max; ++n) {
    const double mu = probe_mean(det, n);
    double correct = povm_weight(bins, det, {PovmTag::Peak, n}, mu);
    if (n == 0) correct += povm_weight(bins, det, {PovmTag::Vacuum, 0}, mu);
    err += poisson_pmf(n, signal_mean) * std::max(0.0, 1.0 - correct);
  }
  return static_cast<double>(err);
}

double detection_error_exact(double alpha, double theta, const DetectorParams& det) {
  const double s = std::sin(theta);
  return vacuum_misread_probability(2.0 * alpha * alpha * s * s, det);
}

double detection_error_closed_form(double alpha, double theta, const DetectorParams& det) {
  const double s = std::sin(theta);
  const double probe = 1.0 - std::exp(-0.5 * det.eta * det.gamma * det.gamma * det.theta_p * det.theta_p);
  return std::exp(-2.0 * probe * alpha * alpha * s * s);
}

}  // namespace qubus
