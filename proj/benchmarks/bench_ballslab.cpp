// Copyright 2026 The ballslab Authors.
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

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ballslab/expectation.hpp"
#include "ballslab/geometry.hpp"
#include "ballslab/random_polytope.hpp"

namespace {

using namespace ballslab;

void BM_Alpha(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BallGeometry g = BallGeometry::of(n);
  const double t = ApproxParams::analytic(n, n * std::log(double(n))).t;
  double r = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(alpha(g, r, t));
    r = r < 1.5 ? r + 1e-4 : 1.0;
  }
}
BENCHMARK(BM_Alpha)->Arg(3)->Arg(30)->Arg(300);

void BM_ExpectedSymDiff(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ApproxParams p = ApproxParams::analytic(n, n * std::log(double(n)));
  for (auto _ : state) benchmark::DoNotOptimize(expected_sym_diff(p).total);
}
BENCHMARK(BM_ExpectedSymDiff)->Arg(4)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_Radial(benchmark::State& state) {
  const SlabPolytope p = realize(4, state.range(0), 0.99, 1);
  CounterRng rng(2);
  std::vector<double> u(4);
  for (auto _ : state) {
    sample_direction(rng, u);
    benchmark::DoNotOptimize(radial(p, u));
  }
  state.SetItemsProcessed(state.iterations() * p.slab_count());
}
BENCHMARK(BM_Radial)->Arg(64)->Arg(10000);

void BM_EstimateSymDiff(benchmark::State& state) {
  const SlabPolytope p = realize(4, 10000, 0.9976, 1);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_sym_diff(p, 2000, 3).sym_diff.value);
}
BENCHMARK(BM_EstimateSymDiff)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
