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

void BM_PhiloxNormals(benchmark::State& state) {
  CounterStream s(1, StreamTag::kMisc, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.normal());
}
BENCHMARK(BM_PhiloxNormals);

void BM_SampleBernoulli(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = EnsembleSpec::from_exponent(n, 0.35);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_laplacian_type(spec, seed++));
}
BENCHMARK(BM_SampleBernoulli)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SampleGaussian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = EnsembleSpec::from_exponent(n, 0.5, EntryLaw::kGaussian);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_laplacian_type(spec, seed++));
}
BENCHMARK(BM_SampleGaussian)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SampleGoe(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_goe(n, seed++));
}
BENCHMARK(BM_SampleGoe)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_DecomposeGaussian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto basis = projection_basis(n);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decompose_gaussian(n, seed++, basis));
}
BENCHMARK(BM_DecomposeGaussian)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
