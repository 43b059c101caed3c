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

#ifndef STMATCH_HEURISTICS_HPP_
#define STMATCH_HEURISTICS_HPP_

#include <cstdint>

#include "stmatch/instance.hpp"
#include "stmatch/stability.hpp"

namespace stmatch {

// Replaces every tie group by a uniformly random strict order of its
// members. Deterministic in seed; both sides are processed in index order.
Instance break_ties(const Instance& inst, std::uint64_t seed);

// Row-proposing deferred acceptance. Requires strict lists on both sides.
// A full column rejects its worst-ranked assignee when a better row
// proposes. The result is stable for the strict instance.
Matching gale_shapley(const Instance& inst);

// k rounds of break_ties + gale_shapley, keeping the matching with the best
// objective value on the original instance. Round r uses the derived seed
// split_seed(seed + r). Any matching stable for a strict refinement of inst
// is stable for inst itself, so the result is stable for inst.
Matching best_of_k(const Instance& inst, Objective objective, int k,
                   std::uint64_t seed, const GrpInstance* grp = nullptr);

}  // namespace stmatch

#endif  // STMATCH_HEURISTICS_HPP_
