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
#include <vector>

#include "doctest.h"
#include "stmatch/ilp_build.hpp"
#include "test_util.hpp"

using namespace stmatch;
using testutil::load_grp;
using testutil::load_instance;

namespace {

IlpModel build(const std::string& preset, const Instance& inst,
               const GrpInstance* grp = nullptr,
               Objective objective = Objective::kSize) {
  ModelConfig cfg = ModelConfig::preset(preset);
  cfg.objective = objective;
  return cfg.problem == Problem::kHrt ? build_hrt_model(inst, cfg)
                                      : build_smti_model(inst, grp, cfg);
}

const Constraint& find_con(const IlpModel& m, const std::string& name) {
  for (const Constraint& c : m.cons) {
    if (c.name == name) return c;
  }
  REQUIRE_MESSAGE(false, "constraint not found: " << name);
  static Constraint dummy;
  return dummy;
}

}  // namespace

TEST_CASE("one-to-one preset sizes on the weighted example") {
  const GrpInstance grp = load_grp("ex1.grp");
  const Instance inst = derive_preferences(grp);

  struct Expect {
    const char* preset;
    long long vars, cons, nnz;
  };
  // Hand-derived from the 3x3 instance: row group counts 3+2+3 = 8, column
  // group counts 2+3+2 = 7, 9 acceptable pairs.
  const Expect table[] = {
      {"m1", 9, 15, 48}, {"m2", 24, 24, 60}, {"m3", 9, 14, 45},
      {"m4", 24, 23, 59}, {"m5", 9, 21, 71}, {"m6", 24, 30, 75},
  };
  for (const Expect& e : table) {
    CAPTURE(e.preset);
    const ModelStats s = model_stats(build(e.preset, inst, &grp, Objective::kWeight));
    CHECK(s.variables == e.vars);
    CHECK(s.constraints == e.cons);
    CHECK(s.nonzeros == e.nnz);
  }
}

TEST_CASE("constraint family counts follow the closed forms") {
  const GrpInstance grp = load_grp("ex1.grp");
  const Instance inst = derive_preferences(grp);

  const IlpModel m1 = build("m1", inst);
  CHECK(count_constraints(m1, kConAssignRow) == 3);
  CHECK(count_constraints(m1, kConAssignCol) == 3);
  CHECK(count_constraints(m1, kConStability) == inst.num_pairs());

  const IlpModel m2 = build("m2", inst);
  CHECK(count_constraints(m2, kConCoherenceRow) == 8);
  CHECK(count_constraints(m2, kConCoherenceCol) == 7);
  CHECK(count_constraints(m2, kConStability) == 9);

  const IlpModel m4 = build("m4", inst);
  CHECK(count_constraints(m4, kConMergedStability) == 8);  // sum of row group counts

  const IlpModel m5 = build("m5", inst);
  CHECK(count_constraints(m5, kConMergedStability) == 8);
  CHECK(count_constraints(m5, kConDoubleStability) == 7);  // sum of col group counts
}

TEST_CASE("variable naming and kinds") {
  const Instance inst = derive_preferences(load_grp("ex1.grp"));
  const IlpModel m2 = build("m2", inst);
  CHECK(m2.var_id("x_1_2") >= 0);
  CHECK(m2.var_id("y_2_2") >= 0);
  CHECK(m2.var_id("yp_3_1") >= 0);
  CHECK(m2.var_id("x_9_9") == -1);
  for (const Variable& v : m2.vars) CHECK(v.kind == VarKind::kBinary);

  // One-to-many column dummies count assignees, so they are general integers.
  const IlpModel n2 = build("n2", load_instance("tiny.hrt"));
  CHECK(n2.vars[static_cast<std::size_t>(n2.var_id("yp_1_1"))].kind == VarKind::kInteger);
  CHECK(n2.vars[static_cast<std::size_t>(n2.var_id("y_1_1"))].kind == VarKind::kBinary);
}

TEST_CASE("objectives") {
  const GrpInstance grp = load_grp("ex1.grp");
  const Instance inst = derive_preferences(grp);

  const IlpModel weight = build("m1", inst, &grp, Objective::kWeight);
  CHECK(weight.vars[static_cast<std::size_t>(weight.var_id("x_1_1"))].obj == 95.0);
  CHECK(weight.vars[static_cast<std::size_t>(weight.var_id("x_3_2"))].obj == 45.0);

  const IlpModel size = build("m1", inst);
  for (const Variable& v : size.vars) CHECK(v.obj == 1.0);

  // Dummy models count matched rows through the last cumulative indicator.
  const IlpModel m2 = build("m2", inst);
  CHECK(m2.vars[static_cast<std::size_t>(m2.var_id("y_1_3"))].obj == 1.0);
  CHECK(m2.vars[static_cast<std::size_t>(m2.var_id("y_2_2"))].obj == 1.0);
  CHECK(m2.vars[static_cast<std::size_t>(m2.var_id("y_1_1"))].obj == 0.0);
  CHECK(m2.vars[static_cast<std::size_t>(m2.var_id("x_1_1"))].obj == 0.0);
}

TEST_CASE("stability rows merge duplicate terms") {
  // In ex2, pair (2,1): row 2 ranks column 1 in its only (tied) group and
  // column 1 ranks row 2 first, so x_2_1 appears in both prefix sums.
  const Instance inst = load_instance("ex2.smti");
  const IlpModel m1 = build("m1", inst);
  const Constraint& c = find_con(m1, "stab_2_1");
  REQUIRE(c.terms.size() == 2);  // merged x_2_1 plus x_2_2
  CHECK(c.rel == Rel::kGe);
  CHECK(c.rhs == 1.0);
  bool saw_merged = false;
  for (const auto& [var, coef] : c.terms) {
    if (m1.vars[static_cast<std::size_t>(var)].name == "x_2_1") {
      saw_merged = true;
      CHECK(coef == 2.0);
    }
  }
  CHECK(saw_merged);
}

TEST_CASE("capacitated base model on the capacity-two fixture") {
  const Instance inst = load_instance("cap2.hrt");
  const IlpModel n1 = build("n1", inst);
  // Doctor 1 is ranked first by the only hospital (capacity 2), so its
  // stability row collapses to 3 x_1_1 >= 2.
  const Constraint& c = find_con(n1, "stab_1_1");
  REQUIRE(c.terms.size() == 1);
  CHECK(c.terms[0].second == 3.0);
  CHECK(c.rel == Rel::kGe);
  CHECK(c.rhs == 2.0);
}

TEST_CASE("one-to-many preset shapes on the tiny fixture") {
  const Instance inst = load_instance("tiny.hrt");

  const ModelStats n1 = model_stats(build("n1", inst));
  CHECK(n1.variables == 3);
  CHECK(n1.constraints == 7);  // 2 assignment + 2 capacity + 3 stability
  CHECK(n1.nonzeros == 11);

  const IlpModel n3 = build("n3", inst);
  // z_j_k for k = 1..groups+1: 3 for hospital 1, 2 for hospital 2.
  CHECK(model_stats(n3).variables == 3 + 5);
  CHECK(count_constraints(n3, kConZUpper) == inst.num_pairs());
  CHECK(count_constraints(n3, kConZMono) == 3);
  CHECK(count_constraints(n3, kConZStability) == 3);
  CHECK(count_constraints(n3, kConZFull) == 2);

  const IlpModel n5 = build("n5", inst);
  CHECK(count_constraints(n5, kConZMergedStability) == 3);  // sum of col group counts
  CHECK(count_constraints(n5, kConZStability) == 0);

  const IlpModel n11 = build("n11", inst);
  CHECK(count_constraints(n11, kConZMix) == 3);
  CHECK(count_constraints(n11, kConZFull) == 0);  // mix replaces the full-column row

  const IlpModel n2 = build("n2", inst);
  CHECK(count_constraints(n2, kConCapacityY) == 2);
  CHECK(count_constraints(n2, kConCapacity) == 0);
}

TEST_CASE("configuration validation") {
  const Instance smti = load_instance("ex2.smti");
  const Instance hrt = load_instance("tiny.hrt");
  const GrpInstance grp = load_grp("ex2.grp");

  CHECK_THROWS_AS(ModelConfig::preset("m7"), ValidationError);
  CHECK_THROWS_AS(ModelConfig::preset("n13"), ValidationError);
  CHECK_THROWS_AS(ModelConfig::preset(""), ValidationError);

  // Problem shape mismatches.
  CHECK_THROWS_AS(build("m1", hrt), ValidationError);
  CHECK_THROWS_AS(build("n1", smti), ValidationError);

  // Weight objective needs the weight table; one-to-many has no weights.
  CHECK_THROWS_AS(build("m1", smti, nullptr, Objective::kWeight), ValidationError);
  CHECK_THROWS_AS(build("n1", hrt, nullptr, Objective::kWeight), ValidationError);

  // Double stability pairs with the merged child rows.
  ModelConfig bad = ModelConfig::preset("m1");
  bad.double_stability = true;
  CHECK_THROWS_AS(build_smti_model(smti, nullptr, bad), ValidationError);

  // Mixed z rows exclude the base rows, and z options need the z set.
  ModelConfig mixbase = ModelConfig::preset("n11");
  mixbase.hrt.base = true;
  CHECK_THROWS_AS(build_hrt_model(hrt, mixbase), ValidationError);
  ModelConfig merged_only;
  merged_only.problem = Problem::kHrt;
  merged_only.hrt.z_merged = true;
  CHECK_THROWS_AS(build_hrt_model(hrt, merged_only), ValidationError);
}

TEST_CASE("no-stability relaxation drops exactly the stability rows") {
  const Instance inst = derive_preferences(load_grp("ex1.grp"));
  ModelConfig cfg = ModelConfig::preset("m1");
  cfg.include_stability = false;
  const IlpModel relaxed = build_smti_model(inst, nullptr, cfg);
  CHECK(count_constraints(relaxed, kConStability) == 0);
  CHECK(model_stats(relaxed).constraints == 6);
  CHECK_FALSE(relaxed.meta.include_stability);

  // The z support rows survive so the threshold variables stay pinned down.
  const Instance hrt = load_instance("tiny.hrt");
  ModelConfig zfg = ModelConfig::preset("n3");
  zfg.include_stability = false;
  const IlpModel zrelaxed = build_hrt_model(hrt, zfg);
  CHECK(count_constraints(zrelaxed, kConZStability) == 0);
  CHECK(count_constraints(zrelaxed, kConZMono) == 3);
  CHECK(count_constraints(zrelaxed, kConZUpper) == 3);
}

TEST_CASE("warm starts fill every variable and check stability") {
  const GrpInstance grp = load_grp("ex1.grp");
  const Instance inst = derive_preferences(grp);
  const Matching best = make_matching({{1, 2}, {2, 1}, {3, 3}});

  IlpModel m2 = attach_warm_start(build("m2", inst), inst, best);
  for (const Variable& v : m2.vars) REQUIRE(v.warm.has_value());
  auto warm = [&](const char* name) {
    return *m2.vars[static_cast<std::size_t>(m2.var_id(name))].warm;
  };
  CHECK(warm("x_1_2") == 1.0);
  CHECK(warm("x_1_1") == 0.0);
  CHECK(warm("y_1_1") == 0.0);
  CHECK(warm("y_1_2") == 1.0);
  CHECK(warm("y_1_3") == 1.0);
  CHECK(warm("yp_3_1") == 0.0);
  CHECK(warm("yp_3_2") == 1.0);

  // An unstable matching is rejected while stability rows are present...
  const Matching lone = make_matching({{1, 1}});
  CHECK_THROWS_AS((void)attach_warm_start(build("m1", inst), inst, lone),
                  ValidationError);
  // ...but accepted by the relaxation.
  ModelConfig cfg = ModelConfig::preset("m1");
  cfg.include_stability = false;
  CHECK_NOTHROW((void)attach_warm_start(build_smti_model(inst, nullptr, cfg), inst, lone));

  // Capacitated column dummies count assignees.
  const Instance cap2 = load_instance("cap2.hrt");
  IlpModel n2 = attach_warm_start(build("n2", cap2), cap2,
                                  make_matching({{1, 1}, {2, 1}}));
  CHECK(*n2.vars[static_cast<std::size_t>(n2.var_id("yp_1_2"))].warm == 2.0);
  CHECK(*n2.vars[static_cast<std::size_t>(n2.var_id("yp_1_1"))].warm == 1.0);
}

TEST_CASE("branching priorities") {
  const Instance inst = derive_preferences(load_grp("ex1.grp"));
  IlpModel m2 = set_priorities(build("m2", inst), PriorityScheme::kDummy);
  for (const Variable& v : m2.vars) {
    CHECK(v.priority == (v.name[0] == 'y' ? 1 : 0));
  }
  m2 = set_priorities(std::move(m2), PriorityScheme::kNone);
  for (const Variable& v : m2.vars) CHECK(v.priority == 0);

  CHECK_THROWS_AS((void)set_priorities(build("m1", inst), PriorityScheme::kZ),
                  ValidationError);

  IlpModel n3 = set_priorities(build("n3", load_instance("tiny.hrt")),
                               PriorityScheme::kZ);
  int elevated = 0;
  for (const Variable& v : n3.vars) elevated += v.priority;
  CHECK(elevated == 5);
}
