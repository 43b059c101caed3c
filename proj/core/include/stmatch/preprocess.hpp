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

#ifndef STMATCH_PREPROCESS_HPP_
#define STMATCH_PREPROCESS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "stmatch/instance.hpp"

namespace stmatch {

// Pairs that can be deleted without changing the set of stable matchings,
// each tagged with the scan rule that found it.
struct RemovalSet {
  struct Entry {
    Index row = 0;
    Index col = 0;
    const char* rule = "";
  };
  std::vector<Entry> entries;

  bool empty() const { return entries.empty(); }
  std::vector<std::pair<Index, Index>> pairs() const;
};

// Scan rule names used in RemovalSet provenance and preprocess logs.
inline constexpr const char* kRuleFirstRankFamily = "first-rank-family";
inline constexpr const char* kRuleFirstRankChild = "first-rank-child";
inline constexpr const char* kRuleFullChildPreferences = "full-child-preferences";
inline constexpr const char* kRuleFullFamilyPreferences = "full-family-preferences";

// Groups columns by their exact rank-1 row set. Whenever a set of columns F
// shares the same rank-1 row set C and |F| >= |C|, every row in C is matched
// within its worst-ranked member of F in every stable matching, so all pairs
// the row ranks strictly worse can go. One-to-one instances only.
RemovalSet first_rank_family(const Instance& inst);

// For each row, walks its list best rank first (ties in increasing index
// order), growing F = columns seen and C = union over j in F of the rows j
// ranks no worse than this row. At the first prefix with |F| >= |C| the
// row's strictly worse pairs are removed and the scan moves on to the next
// row. One-to-one instances only.
RemovalSet full_child_preferences(const Instance& inst);

// Deletes the pairs from both sides' lists, dropping emptied tie groups.
// Agents whose lists become empty stay in the instance.
Instance remove_pairs(const Instance& inst, const RemovalSet& removals);

// Applies first-rank-family, then its transpose, then full-child-preferences,
// then its transpose, deleting as it goes, until one full round removes
// nothing. Returns the reduced instance and the cumulative log in removal
// order.
std::pair<Instance, RemovalSet> reduce_fixpoint(const Instance& inst);

}  // namespace stmatch

#endif  // STMATCH_PREPROCESS_HPP_
