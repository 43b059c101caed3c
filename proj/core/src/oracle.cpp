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

#include "stmatch/oracle.hpp"

#include <algorithm>

namespace stmatch {

namespace {

// Shared DFS over row assignments. visit() is called on every complete
// (stability-filtered) leaf with the sorted pair vector.
class Enumerator {
 public:
  Enumerator(const Instance& inst, long long budget, bool require_stable)
      : inst_(inst), budget_(budget), require_stable_(require_stable) {
    validate_instance(inst);
    partner_.assign(static_cast<std::size_t>(inst.n1) + 1, 0);
    load_.assign(static_cast<std::size_t>(inst.n2) + 1, 0);
    for (Index i = 1; i <= inst.n1; ++i) {
      if (!inst.row(i).empty()) active_.push_back(i);
    }
  }

  template <class Visit>
  void run(Visit&& visit) {
    dfs(0, visit);
  }

 private:
  void spend() {
    if (--budget_ < 0) {
      throw BudgetExceededError("exact enumeration exceeded its node budget");
    }
  }

  bool leaf_is_stable() const {
    for (Index i = 1; i <= inst_.n1; ++i) {
      const Index cur = partner_[static_cast<std::size_t>(i)];
      const int cur_rank = cur == 0 ? 0 : inst_.row(i).rank_of(cur);
      int rank = 0;
      for (const auto& g : inst_.row(i).groups()) {
        ++rank;
        if (cur != 0 && rank >= cur_rank) break;
        for (Index j : g) {
          if (load_[static_cast<std::size_t>(j)] < inst_.capacity(j)) return false;
          if (worst_rank(j) > inst_.col(j).rank_of(i)) return false;
        }
      }
    }
    return true;
  }

  int worst_rank(Index j) const {
    int worst = 0;
    for (Index i = 1; i <= inst_.n1; ++i) {
      if (partner_[static_cast<std::size_t>(i)] == j) {
        worst = std::max(worst, inst_.col(j).rank_of(i));
      }
    }
    return worst;
  }

  template <class Visit>
  void dfs(std::size_t depth, Visit& visit) {
    spend();
    if (depth == active_.size()) {
      if (!require_stable_ || leaf_is_stable()) {
        std::vector<std::pair<Index, Index>> pairs;
        for (Index i = 1; i <= inst_.n1; ++i) {
          if (partner_[static_cast<std::size_t>(i)] != 0) {
            pairs.emplace_back(i, partner_[static_cast<std::size_t>(i)]);
          }
        }
        visit(pairs);
      }
      return;
    }
    const Index i = active_[depth];
    for (const auto& g : inst_.row(i).groups()) {
      for (Index j : g) {
        if (load_[static_cast<std::size_t>(j)] >= inst_.capacity(j)) continue;
        partner_[static_cast<std::size_t>(i)] = j;
        load_[static_cast<std::size_t>(j)] += 1;
        dfs(depth + 1, visit);
        load_[static_cast<std::size_t>(j)] -= 1;
        partner_[static_cast<std::size_t>(i)] = 0;
      }
    }
    dfs(depth + 1, visit);  // row i stays unmatched
  }

  const Instance& inst_;
  long long budget_;
  bool require_stable_;
  std::vector<Index> partner_;
  std::vector<int> load_;
  std::vector<Index> active_;
};

}  // namespace

OracleResult solve_exact_oracle(const Instance& inst, Objective objective,
                                long long node_budget, const GrpInstance* grp,
                                bool require_stable) {
  if (objective == Objective::kWeight && grp == nullptr) {
    throw ValidationError("weight objective needs a weight table");
  }
  OracleResult result;
  bool have = false;
  std::vector<std::pair<Index, Index>> best_pairs;
  Enumerator e(inst, node_budget, require_stable);
  e.run([&](const std::vector<std::pair<Index, Index>>& pairs) {
    ++result.count_stable;
    double value = 0.0;
    if (objective == Objective::kSize) {
      value = static_cast<double>(pairs.size());
    } else {
      for (const auto& [i, j] : pairs) value += *grp->weight_of(i, j);
    }
    if (!have || value > result.best_value ||
        (value == result.best_value && pairs < best_pairs)) {
      have = true;
      result.best_value = value;
      best_pairs = pairs;
    }
  });
  if (have) result.best_matching = make_matching(best_pairs);
  if (require_stable && have) {
    BlockingReport check = blocking_pairs(inst, result.best_matching);
    if (!check.stable) {
      throw IntegrityError("oracle picked an unstable matching");
    }
  }
  return result;
}

std::vector<Matching> all_stable_matchings(const Instance& inst,
                                           long long node_budget) {
  std::vector<Matching> out;
  Enumerator e(inst, node_budget, /*require_stable=*/true);
  e.run([&](const std::vector<std::pair<Index, Index>>& pairs) {
    out.push_back(make_matching(pairs));
  });
  std::sort(out.begin(), out.end(),
            [](const Matching& a, const Matching& b) { return a.pairs < b.pairs; });
  return out;
}

}  // namespace stmatch
