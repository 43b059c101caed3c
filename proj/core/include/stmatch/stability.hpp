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

#ifndef STMATCH_STABILITY_HPP_
#define STMATCH_STABILITY_HPP_

#include <utility>
#include <vector>

#include "stmatch/instance.hpp"

namespace stmatch {

enum class Objective { kSize, kWeight };

struct BlockingReport {
  bool stable = true;
  std::vector<std::pair<Index, Index>> pairs;  // sorted by (row, col)
};

// Validity: every matched pair is mutually acceptable, every row is matched
// at most once and every column holds at most capacity(j) rows. Throws
// ValidationError describing the first violation.
void check_matching(const Instance& inst, const Matching& m);

// All pairs (i, j) that block m. A pair blocks when both agents would
// accept it: i is unmatched or strictly prefers j to its partner, and j has
// a free slot or strictly prefers i to one of its assignees. Requires a
// valid matching.
BlockingReport blocking_pairs(const Instance& inst, const Matching& m);

// Size of the matching, or total weight of its pairs under grp. Weight
// requires grp and every matched pair to carry a weight.
double matching_value(const Instance& inst, const Matching& m, Objective objective,
                      const GrpInstance* grp = nullptr);

}  // namespace stmatch

#endif  // STMATCH_STABILITY_HPP_
