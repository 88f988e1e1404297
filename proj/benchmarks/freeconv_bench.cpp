// Copyright 2026 The laprmt Authors.
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

#include "laprmt/laprmt.hpp"

namespace {

using namespace laprmt;

void BM_Faddeeva(benchmark::State& state) {
  Complex z(0.3, 1e-3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(faddeeva(z));
    z += Complex(1e-9, 0.0);
  }
}
BENCHMARK(BM_Faddeeva);

void BM_SolveNearAxis(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_mfc(Complex(0.7, 1e-6)));
}
BENCHMARK(BM_SolveNearAxis)->Unit(benchmark::kMicrosecond);

void BM_SolveWarmStart(benchmark::State& state) {
  const Complex guess = solve_mfc(Complex(0.7, 0.011));
  for (auto _ : state) benchmark::DoNotOptimize(solve_mfc_detailed(Complex(0.7, 0.01), {}, guess));
}
BENCHMARK(BM_SolveWarmStart)->Unit(benchmark::kMicrosecond);

void BM_DensityTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tabulate_density());
}
BENCHMARK(BM_DensityTable)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_ClassicalLocations(benchmark::State& state) {
  const auto table = tabulate_density();
  for (auto _ : state) benchmark::DoNotOptimize(classical_locations(1000, table));
}
BENCHMARK(BM_ClassicalLocations)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
