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

#include "stmatch/stability.hpp"

#include <algorithm>
#include <string>

namespace stmatch {

namespace {

// Row partner (0 = unmatched) and per-column load / worst assigned rank.
struct MatchView {
  std::vector<Index> row_partner;
  std::vector<int> col_load;
  std::vector<int> col_worst_rank;  // 0 when the column is empty
};

MatchView build_view(const Instance& inst, const Matching& m) {
  MatchView v;
  v.row_partner.assign(static_cast<std::size_t>(inst.n1) + 1, 0);
  v.col_load.assign(static_cast<std::size_t>(inst.n2) + 1, 0);
  v.col_worst_rank.assign(static_cast<std::size_t>(inst.n2) + 1, 0);
  for (const auto& [i, j] : m.pairs) {
    v.row_partner[static_cast<std::size_t>(i)] = j;
    v.col_load[static_cast<std::size_t>(j)] += 1;
    v.col_worst_rank[static_cast<std::size_t>(j)] =
        std::max(v.col_worst_rank[static_cast<std::size_t>(j)], inst.col(j).rank_of(i));
  }
  return v;
}

}  // namespace

void check_matching(const Instance& inst, const Matching& m) {
  std::vector<int> row_seen(static_cast<std::size_t>(inst.n1) + 1, 0);
  std::vector<int> col_load(static_cast<std::size_t>(inst.n2) + 1, 0);
  for (const auto& [i, j] : m.pairs) {
    if (i < 1 || i > inst.n1 || j < 1 || j > inst.n2) {
      throw ValidationError("matched pair (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") out of range");
    }
    if (inst.row(i).rank_of(j) == 0) {
      throw ValidationError("matched pair (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") is not acceptable");
    }
    if (++row_seen[static_cast<std::size_t>(i)] > 1) {
      throw ValidationError("row " + std::to_string(i) + " matched more than once");
    }
    if (++col_load[static_cast<std::size_t>(j)] > inst.capacity(j)) {
      throw ValidationError("column " + std::to_string(j) + " exceeds capacity " +
                            std::to_string(inst.capacity(j)));
    }
  }
}

BlockingReport blocking_pairs(const Instance& inst, const Matching& m) {
  check_matching(inst, m);
  MatchView v = build_view(inst, m);
  BlockingReport report;
  for (Index i = 1; i <= inst.n1; ++i) {
    const Index cur = v.row_partner[static_cast<std::size_t>(i)];
    const int cur_rank = cur == 0 ? 0 : inst.row(i).rank_of(cur);
    int rank = 0;
    for (const auto& g : inst.row(i).groups()) {
      ++rank;
      // Ranks at or past the current partner cannot improve row i.
      if (cur != 0 && rank >= cur_rank) break;
      for (Index j : g) {
        const bool has_slot =
            v.col_load[static_cast<std::size_t>(j)] < inst.capacity(j);
        const bool prefers =
            v.col_worst_rank[static_cast<std::size_t>(j)] > inst.col(j).rank_of(i);
        if (has_slot || prefers) report.pairs.emplace_back(i, j);
      }
    }
  }
  std::sort(report.pairs.begin(), report.pairs.end());
  report.stable = report.pairs.empty();
  return report;
}

double matching_value(const Instance& inst, const Matching& m, Objective objective,
                      const GrpInstance* grp) {
  check_matching(inst, m);
  if (objective == Objective::kSize) return static_cast<double>(m.pairs.size());
  if (grp == nullptr) {
    throw ValidationError("weight value requested without a weight table");
  }
  double total = 0.0;
  for (const auto& [i, j] : m.pairs) {
    std::optional<double> w = grp->weight_of(i, j);
    if (!w) {
      throw ValidationError("matched pair (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") carries no weight");
    }
    total += *w;
  }
  return total;
}

}  // namespace stmatch
