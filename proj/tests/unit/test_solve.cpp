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

#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "stmatch/generate.hpp"
#include "stmatch/heuristics.hpp"
#include "stmatch/ilp_build.hpp"
#include "stmatch/solve.hpp"
#include "stmatch/stability.hpp"
#include "test_util.hpp"

using namespace stmatch;
using testutil::load_grp;
using testutil::load_instance;

namespace {

const Backend kBuiltin{};

IlpModel model_for(const std::string& preset, const Instance& inst,
                   const GrpInstance* grp = nullptr,
                   Objective objective = Objective::kSize) {
  ModelConfig cfg = ModelConfig::preset(preset);
  cfg.objective = objective;
  return cfg.problem == Problem::kHrt ? build_hrt_model(inst, cfg)
                                      : build_smti_model(inst, grp, cfg);
}

}  // namespace

TEST_CASE("backend specs parse") {
  CHECK(Backend::parse("builtin").kind == Backend::Kind::kBuiltin);
  const Backend ext = Backend::parse("cmd:/usr/bin/mysolver");
  CHECK(ext.kind == Backend::Kind::kExternal);
  CHECK(ext.command == "/usr/bin/mysolver");
  CHECK_THROWS_AS(Backend::parse("gurobi"), ValidationError);
  CHECK_THROWS_AS(Backend::parse("cmd:"), ValidationError);
}

TEST_CASE("builtin solves the weighted example to optimality") {
  const GrpInstance grp = load_grp("ex1.grp");
  const Instance inst = derive_preferences(grp);
  const SolveResult r =
      solve(model_for("m1", inst, &grp, Objective::kWeight), kBuiltin, 10.0);
  CHECK(r.status == SolveStatus::kOptimal);
  CHECK(r.objective == 255.0);
  CHECK(r.wall_time >= 0.0);
  CHECK(r.stats.variables == 9);

  const Matching m = extract_matching(inst, r);
  CHECK(m.pairs == std::vector<std::pair<Index, Index>>{{1, 2}, {2, 1}, {3, 3}});
  CHECK(matching_value(inst, m, Objective::kWeight, &grp) == 255.0);
}

TEST_CASE("every one-to-one preset agrees on both examples") {
  const GrpInstance grp1 = load_grp("ex1.grp");
  const Instance ex1 = derive_preferences(grp1);
  const Instance ex2 = load_instance("ex2.smti");
  const GrpInstance grp2 = load_grp("ex2.grp");
  for (const char* preset : {"m1", "m2", "m3", "m4", "m5", "m6"}) {
    CAPTURE(preset);
    const SolveResult w =
        solve(model_for(preset, ex1, &grp1, Objective::kWeight), kBuiltin, 10.0);
    CHECK(w.status == SolveStatus::kOptimal);
    CHECK(w.objective == 255.0);
    const SolveResult s = solve(model_for(preset, ex2), kBuiltin, 10.0);
    CHECK(s.status == SolveStatus::kOptimal);
    CHECK(s.objective == 4.0);
    const SolveResult w2 =
        solve(model_for(preset, ex2, &grp2, Objective::kWeight), kBuiltin, 10.0);
    CHECK(w2.objective == 11.0);
  }
}

TEST_CASE("every one-to-many preset agrees on the fixtures") {
  const Instance tiny = load_instance("tiny.hrt");
  const Instance cap2 = load_instance("cap2.hrt");
  for (const char* preset : {"n1", "n2", "n3", "n4", "n5", "n6", "n7", "n8", "n9",
                             "n10", "n11", "n12"}) {
    CAPTURE(preset);
    const SolveResult t = solve(model_for(preset, tiny), kBuiltin, 10.0);
    CHECK(t.status == SolveStatus::kOptimal);
    CHECK(t.objective == 1.0);
    const SolveResult c = solve(model_for(preset, cap2), kBuiltin, 10.0);
    CHECK(c.objective == 2.0);
    const Matching m = extract_matching(cap2, c);
    CHECK(m.pairs == std::vector<std::pair<Index, Index>>{{1, 1}, {2, 1}});
  }
}

TEST_CASE("relaxed models maximize cardinality") {
  const Instance ex2 = load_instance("ex2.smti");
  ModelConfig cfg = ModelConfig::preset("m1");
  cfg.include_stability = false;
  const SolveResult r = solve(build_smti_model(ex2, nullptr, cfg), kBuiltin, 10.0);
  CHECK(r.objective == 4.0);

  const Instance tiny = load_instance("tiny.hrt");
  ModelConfig zfg = ModelConfig::preset("n3");
  zfg.include_stability = false;
  CHECK(solve(build_hrt_model(tiny, zfg), kBuiltin, 10.0).objective == 2.0);
}

TEST_CASE("infeasible artificial model") {
  IlpModel m;
  const int x = m.add_var("x_1_1", VarKind::kBinary);
  m.add_con("ge_one", {{x, 1.0}}, Rel::kGe, 1.0);
  m.add_con("le_zero", {{x, 1.0}}, Rel::kLe, 0.0);
  const SolveResult r = solve(m, kBuiltin, 10.0);
  CHECK(r.status == SolveStatus::kInfeasible);
  CHECK(r.assignment.empty());
}

TEST_CASE("time limit must be positive") {
  IlpModel m;
  m.add_var("x_1_1", VarKind::kBinary);
  CHECK_THROWS_AS(solve(m, kBuiltin, 0.0), ValidationError);
  CHECK_THROWS_AS(solve(m, kBuiltin, -1.0), ValidationError);
}

TEST_CASE("non-integer data is rejected up front") {
  IlpModel m;
  const int x = m.add_var("x_1_1", VarKind::kBinary);
  m.add_con("frac", {{x, 0.5}}, Rel::kLe, 1.0);
  CHECK_THROWS_AS(solve(m, kBuiltin, 10.0), ValidationError);
}

TEST_CASE("warm incumbents survive timeouts") {
  // Sparse tied lists at 200 agents leave no perfect matching for the
  // cardinality bound to close on, so a short budget ends in a timeout and
  // the warm incumbent comes back as the answer.
  SmtiGenParams p;
  p.n1 = 200;
  p.n2 = 200;
  p.list_min = 5;
  p.list_max = 5;
  p.tie_density_row = 0.85;
  p.tie_density_col = 0.85;
  p.seed = 5;
  const Instance inst = gen_smti(p);
  const Matching warm = best_of_k(inst, Objective::kSize, 3, 7);
  const IlpModel model =
      attach_warm_start(model_for("m1", inst), inst, warm);
  const SolveResult r = solve(model, kBuiltin, 0.25);
  CHECK(r.status == SolveStatus::kTimeout);
  const Matching got = extract_matching_relaxed(inst, r);
  CHECK(matching_value(inst, got, Objective::kSize) >=
        matching_value(inst, warm, Objective::kSize));

  // extract_matching (strict) refuses timeout results.
  CHECK_THROWS_AS(extract_matching(inst, r), ValidationError);
}

TEST_CASE("warm starts never worsen the solved objective") {
  const GrpInstance grp = load_grp("ex1.grp");
  const Instance inst = derive_preferences(grp);
  const Matching warm = best_of_k(inst, Objective::kWeight, 3, 1, &grp);
  const double warm_value = matching_value(inst, warm, Objective::kWeight, &grp);
  const IlpModel model = attach_warm_start(
      model_for("m1", inst, &grp, Objective::kWeight), inst, warm);
  const SolveResult r = solve(model, kBuiltin, 10.0);
  CHECK(r.status == SolveStatus::kOptimal);
  CHECK(r.objective >= warm_value);
  CHECK(r.objective == 255.0);
}

TEST_CASE("solver runs are deterministic") {
  const Instance inst = load_instance("ex2.smti");
  const SolveResult a = solve(model_for("m2", inst), kBuiltin, 10.0);
  const SolveResult b = solve(model_for("m2", inst), kBuiltin, 10.0);
  CHECK(a.objective == b.objective);
  CHECK(a.assignment == b.assignment);
}

TEST_CASE("extraction guards against corrupt assignments") {
  const Instance inst = load_instance("ex2.smti");
  SolveResult fake;
  fake.status = SolveStatus::kOptimal;
  fake.meta.include_stability = false;

  // All-zero assignment extracts the empty matching.
  for (const char* name : {"x_1_1", "x_2_1", "x_2_2"}) fake.assignment[name] = 0.0;
  CHECK(extract_matching(inst, fake).size() == 0);

  // A row matched twice is a solver or model bug, not user input.
  fake.assignment["x_2_1"] = 1.0;
  fake.assignment["x_2_2"] = 1.0;
  CHECK_THROWS_AS(extract_matching(inst, fake), IntegrityError);

  // Fractional values are equally fatal.
  fake.assignment["x_2_2"] = 0.0;
  fake.assignment["x_2_1"] = 0.6;
  CHECK_THROWS_AS(extract_matching(inst, fake), IntegrityError);

  // An unstable extraction fails the stability gate when the model carried
  // stability rows.
  fake.assignment["x_2_1"] = 0.0;
  fake.assignment["x_1_1"] = 1.0;
  fake.meta.include_stability = true;
  CHECK_THROWS_AS(extract_matching(inst, fake), IntegrityError);
  fake.meta.include_stability = false;
  CHECK(extract_matching(inst, fake).size() == 1);
}

TEST_CASE("solved assignments follow branching priorities without changing optima") {
  const Instance tiny = load_instance("tiny.hrt");
  IlpModel prioritized = set_priorities(model_for("n3", tiny), PriorityScheme::kZ);
  const SolveResult r = solve(prioritized, kBuiltin, 10.0);
  CHECK(r.status == SolveStatus::kOptimal);
  CHECK(r.objective == 1.0);
}
