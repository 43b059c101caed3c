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

#include <string>

#include "stmatch/generate.hpp"
#include "stmatch/heuristics.hpp"
#include "stmatch/ilp_build.hpp"
#include "stmatch/instance.hpp"
#include "stmatch/lp_format.hpp"
#include "stmatch/solve.hpp"

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
  p.seed = 11;
  return gen_smti(p);
}

IlpModel model_for(const Instance& inst, const std::string& preset) {
  ModelConfig cfg = ModelConfig::preset(preset);
  return build_smti_model(inst, nullptr, cfg);
}

void bm_build_model(benchmark::State& state, const std::string& preset) {
  const Instance inst = instance_for(static_cast<int>(state.range(0)), 0.85);
  for (auto _ : state) {
    IlpModel model = model_for(inst, preset);
    benchmark::DoNotOptimize(model);
  }
  const ModelStats stats = model_stats(model_for(inst, preset));
  state.counters["nnz"] = static_cast<double>(stats.nonzeros);
}
void bm_build_m1(benchmark::State& state) { bm_build_model(state, "m1"); }
void bm_build_m2(benchmark::State& state) { bm_build_model(state, "m2"); }
void bm_build_m4(benchmark::State& state) { bm_build_model(state, "m4"); }
BENCHMARK(bm_build_m1)->Arg(100)->Arg(400);
BENCHMARK(bm_build_m2)->Arg(100)->Arg(400);
BENCHMARK(bm_build_m4)->Arg(100)->Arg(400);

void bm_builtin_solve_exact(benchmark::State& state) {
  const Instance inst = instance_for(static_cast<int>(state.range(0)), 0.85);
  const IlpModel model = model_for(inst, "m1");
  const Backend backend;
  for (auto _ : state) {
    SolveResult r = solve(model, backend, 60.0);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(bm_builtin_solve_exact)->Arg(10)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

void bm_warm_start_heuristic(benchmark::State& state) {
  const Instance inst = instance_for(static_cast<int>(state.range(0)), 0.85);
  for (auto _ : state) {
    Matching m = best_of_k(inst, Objective::kSize, 10, 3);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(bm_warm_start_heuristic)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void bm_write_lp(benchmark::State& state) {
  const Instance inst = instance_for(static_cast<int>(state.range(0)), 0.85);
  const IlpModel model = model_for(inst, "m2");
  for (auto _ : state) {
    std::string text = to_lp_string(model);
    benchmark::DoNotOptimize(text);
  }
}
BENCHMARK(bm_write_lp)->Arg(200)->Arg(800);

}  // namespace
