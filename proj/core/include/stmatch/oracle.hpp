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

#ifndef STMATCH_ORACLE_HPP_
#define STMATCH_ORACLE_HPP_

#include "stmatch/instance.hpp"
#include "stmatch/stability.hpp"

namespace stmatch {

struct OracleResult {
  Matching best_matching;
  double best_value = 0.0;
  long long count_stable = 0;
};

inline constexpr long long kDefaultNodeBudget = 50'000'000;

// Exhaustive reference optimum: depth-first assignment of every row agent
// to an acceptable column with remaining capacity or to nothing, keeping
// the best stable leaf. Objective ties go to the lexicographically smallest
// pair set. Weight objectives need grp. require_stable=false switches the
// leaf filter off, turning the result into a plain maximum (b-)matching
// optimum. Throws BudgetExceededError instead of ever answering from a
// truncated search.
OracleResult solve_exact_oracle(const Instance& inst, Objective objective,
                                long long node_budget = kDefaultNodeBudget,
                                const GrpInstance* grp = nullptr,
                                bool require_stable = true);

// Every stable matching of the instance, sorted. Same budget semantics.
std::vector<Matching> all_stable_matchings(const Instance& inst,
                                           long long node_budget = kDefaultNodeBudget);

}  // namespace stmatch

#endif  // STMATCH_ORACLE_HPP_
