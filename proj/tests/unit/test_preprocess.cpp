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

#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "stmatch/generate.hpp"
#include "stmatch/oracle.hpp"
#include "stmatch/preprocess.hpp"
#include "test_util.hpp"

using namespace stmatch;
using testutil::load_instance;

TEST_CASE("first scan rule on the worked reduction instance") {
  const Instance inst = load_instance("sec4.smti");
  const RemovalSet r = first_rank_family(inst);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].row == 2);
  CHECK(r.entries[0].col == 5);
  CHECK(std::string(r.entries[0].rule) == kRuleFirstRankFamily);
}

TEST_CASE("second scan rule fires only after the first removal") {
  const Instance inst = load_instance("sec4.smti");
  const Instance step1 = remove_pairs(inst, first_rank_family(inst));
  const RemovalSet r = full_child_preferences(step1);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].row == 1);
  CHECK(r.entries[0].col == 4);
  CHECK(std::string(r.entries[0].rule) == kRuleFullChildPreferences);
}

TEST_CASE("fixpoint reduction log and reduced instance") {
  const Instance inst = load_instance("sec4.smti");
  const auto [reduced, log] = reduce_fixpoint(inst);
  REQUIRE(log.entries.size() == 2);
  CHECK(log.entries[0].row == 2);
  CHECK(log.entries[0].col == 5);
  CHECK(std::string(log.entries[0].rule) == kRuleFirstRankFamily);
  CHECK(log.entries[1].row == 1);
  CHECK(log.entries[1].col == 4);
  CHECK(std::string(log.entries[1].rule) == kRuleFullChildPreferences);

  CHECK(serialize(reduced) ==
        "SMTI 4 5\n"
        "(1 2 3)\n"
        "(2 3 4)\n"
        "(1 3 4)\n"
        "(1 2 4)\n"
        "(1 3) 4\n"
        "(1 2) 4\n"
        "(2 3) 1\n"
        "2 (3 4)\n"
        "\n");
  // Reduced instances are valid and idempotent under reduction.
  CHECK_NOTHROW(validate_instance(reduced));
  CHECK(reduce_fixpoint(reduced).second.empty());
}

TEST_CASE("family rule needs the exact same top set and enough members") {
  // Columns 1 and 2 both have top set {1}; two columns cover one row, so row
  // 1 keeps nothing below its worst member of the family (column 3 goes).
  Instance inst;
  inst.n1 = 2;
  inst.n2 = 3;
  inst.rows = {PreferenceList({{1}, {2}, {3}}), PreferenceList({{2}, {3}})};
  inst.cols = {PreferenceList(std::vector<std::vector<Index>>{{1}}),
               PreferenceList({{1}, {2}}), PreferenceList({{2}, {1}})};
  validate_instance(inst);
  const RemovalSet r = first_rank_family(inst);
  REQUIRE(r.pairs() == std::vector<std::pair<Index, Index>>{{1, 3}});

  // A singleton family whose top set is larger than itself must not fire.
  Instance no_fire;
  no_fire.n1 = 2;
  no_fire.n2 = 1;
  no_fire.rows = {PreferenceList(std::vector<std::vector<Index>>{{1}}),
                  PreferenceList(std::vector<std::vector<Index>>{{1}})};
  no_fire.cols = {PreferenceList({{1, 2}})};
  validate_instance(no_fire);
  CHECK(first_rank_family(no_fire).empty());
}

TEST_CASE("removal keeps emptied agents in place") {
  const Instance inst = load_instance("sec4.smti");
  const auto [reduced, log] = reduce_fixpoint(inst);
  CHECK(reduced.n1 == 4);
  CHECK(reduced.n2 == 5);
  CHECK(reduced.col(5).empty());
  CHECK(reduced.num_pairs() == inst.num_pairs() - 2);
}

TEST_CASE("scan rules are one-to-one only") {
  const Instance hrt = load_instance("tiny.hrt");
  CHECK_THROWS_AS(first_rank_family(hrt), ValidationError);
  CHECK_THROWS_AS(full_child_preferences(hrt), ValidationError);
  CHECK_THROWS_AS(reduce_fixpoint(hrt), ValidationError);
}

TEST_CASE("reduction preserves the stable matching set on random instances") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (double density : {0.0, 0.5, 1.0}) {
      SmtiGenParams p;
      p.n1 = 5;
      p.n2 = 5;
      p.list_min = 1;
      p.list_max = 5;
      p.tie_density_row = density;
      p.tie_density_col = density;
      p.seed = seed;
      const Instance inst = gen_smti(p);
      const auto [reduced, log] = reduce_fixpoint(inst);
      const auto before = all_stable_matchings(inst);
      const auto after = all_stable_matchings(reduced);
      REQUIRE(before.size() == after.size());
      for (std::size_t k = 0; k < before.size(); ++k) {
        REQUIRE(before[k].pairs == after[k].pairs);
      }
      checked += 1;
    }
  }
  CHECK(checked == 60);
}
