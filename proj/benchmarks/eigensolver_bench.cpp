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

void BM_EigenvaluesOnly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = sample_laplacian_type(EnsembleSpec::from_exponent(n, 0.35), 1);
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_eigenvalues(h.h));
  state.SetComplexityN(n);
}
BENCHMARK(BM_EigenvaluesOnly)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);

void BM_EigenpairsWithTrivialRemoval(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = sample_laplacian_type(EnsembleSpec::from_exponent(n, 0.35), 2);
  for (auto _ : state) benchmark::DoNotOptimize(nontrivial_spectrum(h));
}
BENCHMARK(BM_EigenpairsWithTrivialRemoval)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);

void BM_ProjectedEigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = sample_laplacian_type(EnsembleSpec::from_exponent(n, 0.35), 3);
  const auto basis = projection_basis(n);
  for (auto _ : state) benchmark::DoNotOptimize(nontrivial_eigenvalues(h.h, basis));
}
BENCHMARK(BM_ProjectedEigenvalues)->Arg(256)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Resolvent(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = sample_laplacian_type(EnsembleSpec::from_exponent(n, 0.35), 4);
  for (auto _ : state) benchmark::DoNotOptimize(resolvent(h.h, Complex(0.1, 0.01)));
}
BENCHMARK(BM_Resolvent)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
