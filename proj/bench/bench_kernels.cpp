// Copyright 2026 The Hyperbit Lab Authors
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

// Serial reference kernels vs their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "hyperbit/protocol.hpp"
#include "hyperbit/region.hpp"

using namespace hyperbit;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_SimulateProtocol(benchmark::State& state) {
  const RegionPoint p{0.4, -0.3, 0.6};
  const Strategy s = PWStrategy::make(p.y, pw_q(p.x, p.y).value);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_protocol(p, s, 1'000'000, 1, SharedBitMode::independent, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_SimulateProtocol)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_VolumeCounts(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(volume_counts(1'000'000, 1, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_VolumeCounts)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_ScanRegionWithGap(benchmark::State& state) {
  ScanGrid grid;
  grid.nx = grid.ny = grid.nz = 41;
  grid.with_gap = true;
  grid.volume_samples = 100'000;
  for (auto _ : state) benchmark::DoNotOptimize(scan_region(grid, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 41 * 41 * 41);
}
BENCHMARK(BM_ScanRegionWithGap)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
