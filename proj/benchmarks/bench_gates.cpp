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


#include <benchmark/benchmark.h>

#include <vector>

#include "qubus/detection.hpp"
#include "qubus/gates.hpp"
#include "qubus/instruction.hpp"
#include "qubus/kak.hpp"
#include "qubus/linalg.hpp"
#include "qubus/oracle.hpp"

namespace {

using namespace qubus;

std::vector<Complex> random_amplitudes(int dim, std::uint64_t seed) {
  Rng rng(seed);
  const MatrixX u = random_unitary(dim, rng);
  return {u.col(0).data(), u.col(0).data() + dim};
}

const std::vector<PathId> kTwo{0, 1};
const std::vector<PathId> kThree{0, 1, 2};

void BM_CPath(benchmark::State& st) {
  const auto in = HybridState::logical(kTwo, random_amplitudes(4, 1));
  const QubusResources res{static_cast<double>(st.range(0)), 0.1};
  for (auto _ : st) benchmark::DoNotOptimize(c_path(in, 0, 1, 2, res));
}
BENCHMARK(BM_CPath)->Arg(20)->Arg(60)->Arg(120)->Unit(benchmark::kMicrosecond);

void BM_Cnot(benchmark::State& st) {
  const auto in = HybridState::logical(kTwo, random_amplitudes(4, 2));
  for (auto _ : st) benchmark::DoNotOptimize(cnot(in, 0, 1));
}
BENCHMARK(BM_Cnot)->Unit(benchmark::kMillisecond);

void BM_Toffoli(benchmark::State& st) {
  const auto in = HybridState::logical(kThree, random_amplitudes(8, 3));
  for (auto _ : st) benchmark::DoNotOptimize(toffoli(in, 0, 1, 2));
}
BENCHMARK(BM_Toffoli)->Unit(benchmark::kMillisecond);

void BM_QndDetect(benchmark::State& st) {
  const std::vector<PhotonQubit> photons{PhotonQubit::horizontal(0)};
  const std::vector<Complex> beams{Complex(static_cast<double>(st.range(0)))};
  const auto in = HybridState::product(photons, beams);
  const DetectorParams det{0.9, 1000.0, 0.01};
  for (auto _ : st) benchmark::DoNotOptimize(qnd_detect(in, 0, det));
}
BENCHMARK(BM_QndDetect)->Arg(2)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_FockOracleEntangler(benchmark::State& st) {
  const auto in = HybridState::logical(kTwo, random_amplitudes(4, 4)).with_path(2);
  const auto prog = c_path_entangler(1, 2, {ModeSelector::v(0)}, {ModeSelector::h(0)}, 0, {1.5, 0.5});
  const auto encoded = fock_encode(in, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(fock_apply_all(encoded, prog));
}
BENCHMARK(BM_FockOracleEntangler)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Kak(benchmark::State& st) {
  Rng rng(5);
  const Matrix4 u = random_unitary(4, rng);
  for (auto _ : st) benchmark::DoNotOptimize(kak_decompose(u));
}
BENCHMARK(BM_Kak)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
