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

#ifndef STMATCH_GENERATE_HPP_
#define STMATCH_GENERATE_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stmatch/instance.hpp"

namespace stmatch {

// Two-sided random instances with incomplete lists and ties. Each row agent
// samples its list uniformly; each column list holds the consistent rows in
// random order; then every adjacent pair in every list independently merges
// into a tie with the side's probability. The seeded draw order is fixed:
// row samples (ascending row), column shuffles (ascending column), row merge
// draws, column merge draws.
struct SmtiGenParams {
  Index n1 = 0;
  Index n2 = 0;
  int list_min = 0;  // list length, drawn uniformly in [list_min, list_max]
  int list_max = 0;
  double tie_density_row = 0.0;
  double tie_density_col = 0.0;
  std::uint64_t seed = 0;
};

// Doctors graded 1..grade_range; sampling weight falls linearly from skew at
// grade 1 (the most common) to 1 at grade_range. Hospitals rank applicants by
// descending grade, equal grades tied.
struct MasterListParams {
  int grade_range = 1;
  double skew = 1.0;
};

// One-to-many instances: strict doctor lists of length in [list_min,
// list_max], hospital capacities summing exactly to n_posts (floor split,
// remainder to randomly chosen hospitals). Hospital lists use the adjacent
// merge rule, or grades when a master list is configured (the merge
// probability is then unused). Draw order: doctor lists (ascending doctor),
// remainder hospitals, grades or shuffles, merge draws.
struct HrtGenParams {
  Index n_doctors = 0;
  Index n_hospitals = 0;
  int n_posts = 0;
  int list_min = 5;
  int list_max = 6;
  double tie_density_hospitals = 0.0;
  std::optional<MasterListParams> master;
  std::uint64_t seed = 0;
};

// Position shift distribution for weight perturbation: (shift, probability)
// entries summing to one.
using PerturbDist = std::vector<std::pair<int, double>>;

const PerturbDist& default_perturb_dist();

Instance gen_smti(const SmtiGenParams& p);

Instance gen_hrt(const HrtGenParams& p);

// Scales a weighted instance by kappa in both dimensions: copy a of row i
// becomes row (a-1)*n1+i, copy b of column j becomes column (b-1)*n2+j, and
// every copy pair's weight is re-drawn near the original: the weight's class
// (common = a distinct weight carried by at least 1% of all pairs) owns a
// sorted list of its distinct weights, the position of the original weight
// shifts by a draw from dist, clamped to the list; classes with fewer than 5
// distinct weights keep the original weight. Draws happen per original pair
// (sorted order), then per row copy, then per column copy.
GrpInstance augment_grp(const GrpInstance& g, int kappa, std::uint64_t seed,
                        const PerturbDist& dist = default_perturb_dist());

}  // namespace stmatch

#endif  // STMATCH_GENERATE_HPP_
