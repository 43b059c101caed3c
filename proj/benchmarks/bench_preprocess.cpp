// Copyright 2026 The stmatch Authors
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

#include "stmatch/generate.hpp"
#include "stmatch/instance.hpp"
#include "stmatch/preprocess.hpp"

namespace {

using namespace stmatch;

Instance instance_for(int n, double density) {
  SmtiGenParams p;
  p.n1 = n;
  p.n2 = n;
  p.list_min = 5;
  p.list_max = 5;
  p.tie_density_row = density;
  p.tie_density_col = density;
  p.seed = 7;
  return gen_smti(p);
}

void bm_reduce_fixpoint(benchmark::State& state) {
  const Instance inst = instance_for(static_cast<int>(state.range(0)), 0.5);
  long long removed = 0;
  for (auto _ : state) {
    auto [reduced, removals] = reduce_fixpoint(inst);
    removed = static_cast<long long>(removals.entries.size());
    benchmark::DoNotOptimize(reduced);
  }
  state.counters["pairs"] = static_cast<double>(inst.num_pairs());
  state.counters["removed"] = static_cast<double>(removed);
}
BENCHMARK(bm_reduce_fixpoint)->Arg(100)->Arg(200)->Arg(400)->Arg(800);

void bm_first_rank_family(benchmark::State& state) {
  const Instance inst = instance_for(static_cast<int>(state.range(0)), 0.85);
  for (auto _ : state) {
    RemovalSet removals = first_rank_family(inst);
    benchmark::DoNotOptimize(removals);
  }
}
BENCHMARK(bm_first_rank_family)->Arg(200)->Arg(800);

void bm_full_child_preferences(benchmark::State& state) {
  const Instance inst = instance_for(static_cast<int>(state.range(0)), 0.85);
  for (auto _ : state) {
    RemovalSet removals = full_child_preferences(inst);
    benchmark::DoNotOptimize(removals);
  }
}
BENCHMARK(bm_full_child_preferences)->Arg(200)->Arg(800);

}  // namespace
