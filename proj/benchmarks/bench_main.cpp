// Copyright 2026 The cohscat Authors
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

#include "cohscat/coherence.hpp"
#include "cohscat/maps.hpp"
#include "cohscat/scan.hpp"
#include "cohscat/specfun.hpp"

using namespace cohscat;

namespace {

// Default map medium: 300 scatterers in 6 x 6 wavelengths, k ell = 5.
Medium2D default_medium(PolMode mode) {
  const double side = 6 * kTwoPi;
  const double alpha = alpha_bare_for_k_ell(5.0, 300 / (side * side), mode);
  return generate_medium(42, 300, {-side / 2, -side / 2, side, side}, alpha, 0.05 * kTwoPi, mode);
}

void BM_Hankel01(benchmark::State& state) {
  const double x0 = static_cast<double>(state.range(0)) / 10.0;
  double x = x0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::hankel01(x));
    x = x < 2 * x0 ? x * 1.0001 : x0;
  }
}
BENCHMARK(BM_Hankel01)->Arg(5)->Arg(50)->Arg(150)->Arg(1000);

void BM_Assemble(benchmark::State& state) {
  const Medium2D m = default_medium(state.range(0) ? PolMode::TE : PolMode::TM);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(m));
}
BENCHMARK(BM_Assemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BigG2Pixel(benchmark::State& state) {
  const SystemFactorization fact = assemble(default_medium(PolMode::TE));
  EmitterPair em;
  em.r2 = {1.3, 2.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(big_g2(fact, em));
    em.r2.x += 1e-6;
  }
}
BENCHMARK(BM_BigG2Pixel)->Unit(benchmark::kMicrosecond);

void BM_G2MapRow(benchmark::State& state) {
  const SystemFactorization fact = assemble(default_medium(PolMode::TE));
  const double side = 6 * kTwoPi;
  const GridSpec row{{-side / 2, 0.1}, side, 0.01, 201, 1};
  for (auto _ : state) benchmark::DoNotOptimize(g2_map(fact, {{0, 0}}, {}, row));
  state.SetItemsProcessed(state.iterations() * 201);
}
BENCHMARK(BM_G2MapRow)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
