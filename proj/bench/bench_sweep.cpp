// Copyright 2026 The weakquasi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "weakquasi/sweep.hpp"

using namespace weakquasi;

namespace {

SweepOptions sampled_grid(int points) {
  SweepOptions o;
  for (int i = 0; i < points; ++i) o.K_grid.push_back(static_cast<double>(i) / (points - 1));
  o.shots = 1000000;
  o.resamples = 200;
  o.seed = 1;
  return o;
}

void BM_sweep_parallel(benchmark::State &state) {
  const Scenario sc = qubit_scenario(10.6);
  const SweepOptions o = sampled_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(sc, o));
}

void BM_sweep_serial(benchmark::State &state) {
  const Scenario sc = qubit_scenario(10.6);
  const SweepOptions o = sampled_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario_serial(sc, o));
}

CountTable big_table() {
  CountTable t;
  t.counts.resize(4, 4);
  for (Eigen::Index k = 0; k < t.counts.size(); ++k) t.counts(k) = 1000 * (k + 1);
  return t;
}

void BM_resample_parallel(benchmark::State &state) {
  const CountTable t = big_table();
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_with_errors(t, static_cast<int>(state.range(0)), 3));
  }
}

void BM_resample_serial(benchmark::State &state) {
  const CountTable t = big_table();
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_with_errors_serial(t, static_cast<int>(state.range(0)), 3));
  }
}

}  // namespace

BENCHMARK(BM_sweep_parallel)->Arg(11)->Arg(101)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sweep_serial)->Arg(11)->Arg(101)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_resample_parallel)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_resample_serial)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
