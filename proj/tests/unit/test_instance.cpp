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
#include "stmatch/instance.hpp"
#include "test_util.hpp"

using namespace stmatch;
using testutil::data_path;
using testutil::load_grp;
using testutil::load_instance;

TEST_CASE("preference list ranks and flattening") {
  PreferenceList list({{2}, {1, 3}, {4}});
  CHECK(list.num_groups() == 3);
  CHECK(list.num_entries() == 4);
  CHECK(list.rank_of(2) == 1);
  CHECK(list.rank_of(1) == 2);
  CHECK(list.rank_of(3) == 2);
  CHECK(list.rank_of(4) == 3);
  CHECK(list.rank_of(9) == 0);
  CHECK(list.flatten() == std::vector<Index>{2, 1, 3, 4});
  CHECK(list.group(2) == std::vector<Index>{1, 3});

  CHECK_THROWS_AS(PreferenceList({{1}, {}}), ValidationError);
  CHECK_THROWS_AS(PreferenceList({{1}, {2, 1}}), ValidationError);
}

TEST_CASE("smti parse, validate, serialize round trip") {
  const Instance inst = load_instance("ex2.smti");
  CHECK(inst.n1 == 4);
  CHECK(inst.n2 == 4);
  CHECK_FALSE(inst.one_to_many());
  CHECK(inst.num_pairs() == 7);
  CHECK(inst.row(2).groups() == std::vector<std::vector<Index>>{{1, 2}});
  CHECK(inst.row(3).flatten() == std::vector<Index>{3, 2});
  CHECK(inst.col(3).groups() == std::vector<std::vector<Index>>{{3, 4}});

  const std::string canon = serialize(inst);
  const Instance again = parse_instance(canon);
  CHECK(serialize(again) == canon);
  CHECK(canon ==
        "SMTI 4 4\n"
        "1\n"
        "(1 2)\n"
        "3 2\n"
        "3 4\n"
        "2 1\n"
        "2 3\n"
        "(3 4)\n"
        "4\n");
}

TEST_CASE("hrt parse carries capacities") {
  const Instance inst = load_instance("tiny.hrt");
  CHECK(inst.one_to_many());
  CHECK(inst.capacity(1) == 1);
  CHECK(inst.capacity(2) == 1);
  const Instance again = parse_instance(serialize(inst));
  CHECK(serialize(again) == serialize(inst));
}

TEST_CASE("empty list lines round trip") {
  const std::string text = "SMTI 2 2\n1\n\n1\n\n";
  const Instance inst = parse_instance(text);
  CHECK(inst.row(1).num_entries() == 1);
  CHECK(inst.row(2).empty());
  CHECK(inst.col(2).empty());
  CHECK(serialize(parse_instance(serialize(inst))) == serialize(inst));
}

TEST_CASE("instance parser rejects malformed text") {
  CHECK_THROWS_AS(parse_instance("SMTI 2\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("BOGUS 2 2\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("SMTI 1 1\n1\n"), ParseError);         // missing column block
  CHECK_THROWS_AS(parse_instance("SMTI 1 1\n(1\n1\n"), ParseError);     // unclosed tie
  CHECK_THROWS_AS(parse_instance("SMTI 1 1\n()\n1\n"), ParseError);     // empty tie
  CHECK_THROWS_AS(parse_instance("SMTI 1 2\n1 (2 1)\n1\n1\n"), ParseError);  // duplicate entry
  // Structural problems are ParseErrors; range and capacity checks happen
  // during semantic validation and surface as ValidationErrors.
  CHECK_THROWS_AS(parse_instance("SMTI 1 1\n2\n1\n"), ValidationError);  // index out of range
  CHECK_THROWS_AS(parse_instance("HRT 1 1\n1\n1\n"), ParseError);        // missing capacities
  CHECK_THROWS_AS(parse_instance("HRT 1 2\n1\n1\n1\n\n"), ParseError);   // capacity count
  CHECK_THROWS_AS(parse_instance("HRT 1 1\n0\n1\n1\n"), ValidationError);  // capacity < 1
}

TEST_CASE("validate rejects one-sided acceptability") {
  // Row 1 lists column 1 but column 1 does not list row 1 back.
  Instance inst;
  inst.n1 = 1;
  inst.n2 = 1;
  inst.rows = {PreferenceList(std::vector<std::vector<Index>>{{1}})};
  inst.cols = {PreferenceList()};
  CHECK_THROWS_AS(validate_instance(inst), ValidationError);
  CHECK_THROWS_AS(parse_instance("SMTI 1 1\n1\n\n"), ValidationError);
}

TEST_CASE("grp parse, weights, serialization") {
  const GrpInstance grp = load_grp("ex1.grp");
  CHECK(grp.n1 == 3);
  CHECK(grp.n2 == 3);
  CHECK(grp.pairs.size() == 9);
  CHECK(grp.weight_of(1, 1) == 95.0);
  CHECK(grp.weight_of(3, 2) == 45.0);
  CHECK_FALSE(grp.weight_of(1, 4).has_value());
  const GrpInstance again = parse_grp(serialize(grp));
  CHECK(serialize(again) == serialize(grp));

  CHECK_THROWS_AS(parse_grp("GRP 1 1 2\n1 1 5\n1 1 6\n"), ValidationError);  // duplicate pair
  CHECK_THROWS_AS(parse_grp("GRP 1 1 1\n1 2 5\n"), ValidationError);  // col out of range
  CHECK_THROWS_AS(parse_grp("GRP 1 1 2\n1 1 5\n"), ParseError);       // wrong pair count
}

TEST_CASE("derived preferences of the weighted examples") {
  // Weights strictly order partners; exact ties become tie groups.
  const Instance ex1 = derive_preferences(load_grp("ex1.grp"));
  CHECK(serialize(ex1) ==
        "SMTI 3 3\n"
        "1 2 3\n"
        "1 (2 3)\n"
        "1 3 2\n"
        "(1 2) 3\n"
        "1 2 3\n"
        "(1 2) 3\n");

  // The .smti fixture is the frozen derivation of the .grp fixture.
  const Instance ex2 = derive_preferences(load_grp("ex2.grp"));
  CHECK(serialize(ex2) == serialize(load_instance("ex2.smti")));
}

TEST_CASE("threshold refinement keeps exactly the heavy pairs") {
  const GrpInstance grp = load_grp("ex1.grp");
  const GrpInstance cut = apply_threshold(grp, 80.0);
  CHECK(cut.pairs.size() == 7);
  CHECK_FALSE(cut.weight_of(3, 2).has_value());  // weight 45
  CHECK_FALSE(cut.weight_of(3, 3).has_value());  // weight 75
  CHECK(cut.weight_of(3, 1) == 80.0);            // boundary stays (>= t)

  // t above every weight leaves an instance with empty lists.
  const GrpInstance none = apply_threshold(grp, 1000.0);
  CHECK(none.pairs.empty());
  CHECK(derive_preferences(none).row(1).empty());
}

TEST_CASE("tie density formula and degenerate flag") {
  // Rows: "1 (2 3)" and "(1 2 3)" give g=3, e=6, n=2: 1 - (3-2)/(6-2) = 0.75.
  Instance inst;
  inst.n1 = 2;
  inst.n2 = 3;
  inst.rows = {PreferenceList({{1}, {2, 3}}), PreferenceList({{1, 2, 3}})};
  inst.cols = {PreferenceList({{1, 2}}), PreferenceList({{1, 2}}), PreferenceList({{1, 2}})};
  validate_instance(inst);
  CHECK(tie_density(inst, Side::kRow).value == doctest::Approx(0.75));
  CHECK_FALSE(tie_density(inst, Side::kRow).degenerate);

  // Strict lists: zero density.
  const Instance strict = load_instance("cap2.hrt");
  CHECK(tie_density(strict, Side::kCol).value == 0.0);
  CHECK_FALSE(tie_density(strict, Side::kCol).degenerate);

  // Single-entry lists: e == n, the ratio is 0/0.
  const TieDensity d = tie_density(strict, Side::kRow);
  CHECK(d.degenerate);
  CHECK(d.value == 0.0);
}

TEST_CASE("transpose swaps the sides") {
  const Instance inst = load_instance("ex2.smti");
  const Instance t = transpose(inst);
  CHECK(t.n1 == inst.n2);
  CHECK(serialize(transpose(t)) == serialize(inst));
  CHECK(t.row(3).groups() == std::vector<std::vector<Index>>{{3, 4}});
  CHECK_THROWS_AS(transpose(load_instance("tiny.hrt")), ValidationError);
}

TEST_CASE("matchings parse, canonicalize and reject duplicates") {
  const Matching m = parse_matching("# comment\n2 1\n1 2\n");
  CHECK(m.size() == 2);
  CHECK(m.pairs == std::vector<std::pair<Index, Index>>{{1, 2}, {2, 1}});
  CHECK(serialize(m) == "1 2\n2 1\n");
  CHECK_THROWS_AS(make_matching({{1, 1}, {1, 1}}), ValidationError);
  CHECK_THROWS_AS(parse_matching("1\n"), ParseError);
}

TEST_CASE("kind sniffing") {
  CHECK(sniff_kind("SMTI 1 1\n") == InstanceKind::kSmti);
  CHECK(sniff_kind("# note\nHRT 1 1\n") == InstanceKind::kHrt);
  CHECK(sniff_kind("GRP 1 1 0\n") == InstanceKind::kGrp);
  CHECK_THROWS_AS(sniff_kind("???\n"), ParseError);
}

TEST_CASE("shortest round-trip doubles") {
  CHECK(format_double(255.0) == "255");
  CHECK(format_double(0.85) == "0.85");
  CHECK(format_double(-2.5) == "-2.5");
}
