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
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "stmatch/generate.hpp"
#include "test_util.hpp"

using namespace stmatch;
using testutil::load_grp;

namespace {

SmtiGenParams smti_params(Index n, int len, double density, std::uint64_t seed) {
  SmtiGenParams p;
  p.n1 = n;
  p.n2 = n;
  p.list_min = len;
  p.list_max = len;
  p.tie_density_row = density;
  p.tie_density_col = density;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("two-sided generator is deterministic and valid") {
  const SmtiGenParams p = smti_params(30, 5, 0.6, 17);
  const Instance a = gen_smti(p);
  const Instance b = gen_smti(p);
  CHECK(serialize(a) == serialize(b));
  CHECK(serialize(a) != serialize(gen_smti(smti_params(30, 5, 0.6, 18))));
  CHECK_NOTHROW(validate_instance(a));
  CHECK(a.n1 == 30);
  for (Index i = 1; i <= a.n1; ++i) CHECK(a.row(i).num_entries() == 5);
}

TEST_CASE("list lengths draw from the configured range") {
  SmtiGenParams p = smti_params(40, 0, 0.0, 3);
  p.list_min = 2;
  p.list_max = 6;
  const Instance inst = gen_smti(p);
  int lo = 99, hi = 0;
  for (Index i = 1; i <= inst.n1; ++i) {
    lo = std::min(lo, inst.row(i).num_entries());
    hi = std::max(hi, inst.row(i).num_entries());
  }
  CHECK(lo >= 2);
  CHECK(hi <= 6);
  CHECK(lo < hi);  // 40 draws from a 5-wide range collapse with odds ~0
}

TEST_CASE("tie density endpoints are exact") {
  const Instance strict = gen_smti(smti_params(50, 4, 0.0, 5));
  CHECK(tie_density(strict, Side::kRow).value == 0.0);
  CHECK(tie_density(strict, Side::kCol).value == 0.0);
  for (Index i = 1; i <= strict.n1; ++i) {
    for (const auto& g : strict.row(i).groups()) CHECK(g.size() == 1);
  }

  const Instance tied = gen_smti(smti_params(50, 4, 1.0, 5));
  CHECK(tie_density(tied, Side::kRow).value == 1.0);
  for (Index i = 1; i <= tied.n1; ++i) {
    CHECK(tied.row(i).num_groups() == 1);
  }
}

TEST_CASE("measured tie density tracks the target at scale") {
  const Instance inst = gen_smti(smti_params(1000, 5, 0.85, 1));
  CHECK(tie_density(inst, Side::kRow).value == doctest::Approx(0.85).epsilon(0.06));
  CHECK(tie_density(inst, Side::kCol).value == doctest::Approx(0.85).epsilon(0.06));
}

TEST_CASE("generator parameter validation") {
  CHECK_THROWS_AS(gen_smti(smti_params(0, 1, 0.0, 1)), ValidationError);
  CHECK_THROWS_AS(gen_smti(smti_params(5, 6, 0.0, 1)), ValidationError);  // list > n2
  CHECK_THROWS_AS(gen_smti(smti_params(5, 0, 0.0, 1)), ValidationError);  // empty range
  CHECK_THROWS_AS(gen_smti(smti_params(5, 3, 1.5, 1)), ValidationError);
  CHECK_THROWS_AS(gen_smti(smti_params(5, 3, -0.1, 1)), ValidationError);
}

TEST_CASE("capacitated generator splits posts and keeps doctor lists strict") {
  HrtGenParams p;
  p.n_doctors = 60;
  p.n_hospitals = 7;
  p.n_posts = 60;
  p.list_min = 3;
  p.list_max = 5;
  p.tie_density_hospitals = 0.5;
  p.seed = 9;
  const Instance inst = gen_hrt(p);
  CHECK_NOTHROW(validate_instance(inst));
  CHECK(inst.one_to_many());
  CHECK(std::accumulate(inst.capacities.begin(), inst.capacities.end(), 0) == 60);
  // Floor split of 60 over 7 leaves 4 lucky hospitals with one extra post.
  for (int c : inst.capacities) CHECK((c == 8 || c == 9));
  for (Index i = 1; i <= inst.n1; ++i) {
    const int len = inst.row(i).num_entries();
    CHECK(len >= 3);
    CHECK(len <= 5);
    CHECK(inst.row(i).num_groups() == len);  // strict
  }
  CHECK(serialize(gen_hrt(p)) == serialize(inst));

  HrtGenParams starved = p;
  starved.n_posts = 5;
  CHECK_THROWS_AS(gen_hrt(starved), ValidationError);
}

TEST_CASE("single-grade master lists collapse hospital lists to one tie") {
  HrtGenParams p;
  p.n_doctors = 40;
  p.n_hospitals = 4;
  p.n_posts = 40;
  p.list_min = 2;
  p.list_max = 3;
  p.master = MasterListParams{1, 1.0};
  p.seed = 2;
  const Instance inst = gen_hrt(p);
  for (Index j = 1; j <= inst.n2; ++j) {
    if (!inst.col(j).empty()) CHECK(inst.col(j).num_groups() == 1);
  }
  CHECK(tie_density(inst, Side::kCol).value == 1.0);
}

TEST_CASE("master list grades follow the skew weights") {
  // Complete lists: every hospital sees every doctor, grouped by grade in
  // descending order. With skew 3 over 5 grades the most common grade
  // (weight 3, listed last) outnumbers the rarest (weight 1, listed first)
  // by [(2.4)x, (3.6)x] at this sample size.
  HrtGenParams p;
  p.n_doctors = 20000;
  p.n_hospitals = 5;
  p.n_posts = 20000;
  p.list_min = 5;
  p.list_max = 5;
  p.master = MasterListParams{5, 3.0};
  p.seed = 4;
  const Instance inst = gen_hrt(p);
  const auto& groups = inst.col(1).groups();
  REQUIRE(groups.size() == 5);
  const double first = static_cast<double>(groups.front().size());
  const double last = static_cast<double>(groups.back().size());
  CHECK(last / first > 2.4);
  CHECK(last / first < 3.6);
}

TEST_CASE("augmentation scales the weighted instance") {
  const GrpInstance g = load_grp("ex1.grp");
  const GrpInstance doubled = augment_grp(g, 2, 5);
  CHECK(doubled.n1 == 6);
  CHECK(doubled.n2 == 6);
  CHECK(doubled.pairs.size() == 36);
  CHECK_NOTHROW(validate_grp(doubled));
  CHECK(serialize(augment_grp(g, 2, 5)) == serialize(doubled));

  // Every acceptable original pair stays acceptable in every copy block,
  // with weights drawn from the original value pool.
  std::set<double> pool;
  for (const WeightedPair& wp : g.pairs) pool.insert(wp.weight);
  for (const WeightedPair& wp : doubled.pairs) {
    CHECK(pool.count(wp.weight) == 1);
    const Index oi = (wp.row - 1) % 3 + 1;
    const Index oj = (wp.col - 1) % 3 + 1;
    CHECK(g.weight_of(oi, oj).has_value());
  }
}

TEST_CASE("zero-shift perturbation reproduces the table exactly") {
  const GrpInstance g = load_grp("ex1.grp");
  const PerturbDist zero = {{0, 1.0}};
  const GrpInstance same = augment_grp(g, 1, 77, zero);
  CHECK(serialize(same) == serialize(g));

  const GrpInstance doubled = augment_grp(g, 2, 77, zero);
  for (const WeightedPair& wp : doubled.pairs) {
    const Index oi = (wp.row - 1) % 3 + 1;
    const Index oj = (wp.col - 1) % 3 + 1;
    CHECK(wp.weight == g.weight_of(oi, oj));
  }
}

TEST_CASE("rare weight classes shift apart from common ones") {
  // Weight 7 carries half of all pairs (common, single-value class: frozen).
  // The other half are one-off values (uncommon class with a wide value
  // list: perturbed within that list).
  GrpInstance g;
  g.n1 = 20;
  g.n2 = 10;
  std::set<double> rare;
  for (Index i = 1; i <= 20; ++i) {
    for (Index j = 1; j <= 10; ++j) {
      WeightedPair wp;
      wp.row = i;
      wp.col = j;
      if (j <= 5) {
        wp.weight = 7.0;
      } else {
        wp.weight = 1000.0 + static_cast<double>((i - 1) * 10 + j);
        rare.insert(wp.weight);
      }
      g.pairs.push_back(wp);
    }
  }
  validate_grp(g);
  const GrpInstance out = augment_grp(g, 1, 13);
  bool moved = false;
  for (std::size_t k = 0; k < out.pairs.size(); ++k) {
    const double before = g.pairs[k].weight;
    const double after = out.pairs[k].weight;
    if (before == 7.0) {
      CHECK(after == 7.0);  // single common value: class too small to move
    } else {
      CHECK(rare.count(after) == 1);  // stays inside the uncommon value list
      moved = moved || after != before;
    }
  }
  CHECK(moved);
}

TEST_CASE("augmentation parameter validation") {
  const GrpInstance g = load_grp("ex1.grp");
  CHECK_THROWS_AS(augment_grp(g, 0, 1), ValidationError);
  CHECK_THROWS_AS(augment_grp(g, 2, 1, PerturbDist{{0, 0.5}}), ValidationError);
  CHECK_THROWS_AS(augment_grp(g, 2, 1, PerturbDist{{0, 1.5}, {1, -0.5}}),
                  ValidationError);
}
