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

#include "stmatch/heuristics.hpp"

#include <algorithm>
#include <vector>

#include "stmatch/rng.hpp"

namespace stmatch {

namespace {

std::vector<PreferenceList> break_side(const std::vector<PreferenceList>& lists,
                                       Rng& rng) {
  std::vector<PreferenceList> out;
  out.reserve(lists.size());
  for (const PreferenceList& l : lists) {
    std::vector<std::vector<Index>> groups;
    groups.reserve(static_cast<std::size_t>(l.num_entries()));
    for (const auto& g : l.groups()) {
      std::vector<Index> order = g;
      shuffle_vec(order, rng);
      for (Index p : order) groups.push_back({p});
    }
    out.emplace_back(std::move(groups));
  }
  return out;
}

void require_strict(const std::vector<PreferenceList>& lists, const char* side) {
  for (std::size_t a = 0; a < lists.size(); ++a) {
    for (const auto& g : lists[a].groups()) {
      if (g.size() > 1) {
        throw ValidationError(std::string(side) + " " + std::to_string(a + 1) +
                              " has a tie; deferred acceptance needs strict lists");
      }
    }
  }
}

}  // namespace

Instance break_ties(const Instance& inst, std::uint64_t seed) {
  Rng rng(seed);
  Instance out;
  out.n1 = inst.n1;
  out.n2 = inst.n2;
  out.capacities = inst.capacities;
  out.rows = break_side(inst.rows, rng);
  out.cols = break_side(inst.cols, rng);
  return out;
}

Matching gale_shapley(const Instance& inst) {
  require_strict(inst.rows, "row");
  require_strict(inst.cols, "column");

  std::vector<std::vector<Index>> choices(static_cast<std::size_t>(inst.n1));
  for (Index i = 1; i <= inst.n1; ++i) {
    choices[static_cast<std::size_t>(i - 1)] = inst.row(i).flatten();
  }
  std::vector<std::size_t> next(static_cast<std::size_t>(inst.n1), 0);
  std::vector<std::vector<Index>> assigned(static_cast<std::size_t>(inst.n2) + 1);
  std::vector<Index> stack;
  for (Index i = inst.n1; i >= 1; --i) stack.push_back(i);

  while (!stack.empty()) {
    const Index i = stack.back();
    auto& pos = next[static_cast<std::size_t>(i - 1)];
    const auto& list = choices[static_cast<std::size_t>(i - 1)];
    if (pos >= list.size()) {
      stack.pop_back();  // exhausted, stays unmatched
      continue;
    }
    const Index j = list[pos++];
    auto& members = assigned[static_cast<std::size_t>(j)];
    if (static_cast<int>(members.size()) < inst.capacity(j)) {
      members.push_back(i);
      stack.pop_back();
      continue;
    }
    // Full: compare against the worst currently assigned row.
    std::size_t worst = 0;
    for (std::size_t k = 1; k < members.size(); ++k) {
      if (inst.col(j).rank_of(members[k]) > inst.col(j).rank_of(members[worst])) {
        worst = k;
      }
    }
    if (inst.col(j).rank_of(i) < inst.col(j).rank_of(members[worst])) {
      std::swap(stack.back(), members[worst]);  // i in, displaced row resumes
    }
  }

  std::vector<std::pair<Index, Index>> pairs;
  for (Index j = 1; j <= inst.n2; ++j) {
    for (Index i : assigned[static_cast<std::size_t>(j)]) pairs.emplace_back(i, j);
  }
  return make_matching(std::move(pairs));
}

Matching best_of_k(const Instance& inst, Objective objective, int k,
                   std::uint64_t seed, const GrpInstance* grp) {
  if (k < 1) throw ValidationError("iteration count must be positive");
  Matching best;
  double best_value = 0.0;
  bool have = false;
  for (int r = 0; r < k; ++r) {
    Instance strict = break_ties(inst, split_seed(seed + static_cast<std::uint64_t>(r)));
    Matching m = gale_shapley(strict);
    double value = matching_value(inst, m, objective, grp);
    if (!have || value > best_value) {
      have = true;
      best_value = value;
      best = std::move(m);
    }
  }
  return best;
}

}  // namespace stmatch
