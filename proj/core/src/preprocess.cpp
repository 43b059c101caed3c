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

#include "stmatch/preprocess.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

namespace stmatch {

namespace {

void require_one_to_one(const Instance& inst) {
  if (inst.one_to_many()) {
    throw ValidationError("preprocessing requires a one-to-one instance");
  }
}

struct VecHash {
  std::size_t operator()(const std::vector<Index>& v) const {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (Index x : v) {
      h ^= static_cast<std::uint64_t>(x);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Pairs (i, j') of row i ranked strictly worse than limit_rank.
void collect_worse(const Instance& inst, Index i, int limit_rank,
                   const char* rule, RemovalSet& out) {
  const auto& groups = inst.row(i).groups();
  for (int k = limit_rank + 1; k <= static_cast<int>(groups.size()); ++k) {
    for (Index j : groups[static_cast<std::size_t>(k - 1)]) {
      out.entries.push_back({i, j, rule});
    }
  }
}

RemovalSet dedupe(RemovalSet in) {
  RemovalSet out;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& e : in.entries) {
    std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.row)) << 32) |
                        static_cast<std::uint32_t>(e.col);
    if (seen.insert(key).second) out.entries.push_back(e);
  }
  return out;
}

RemovalSet with_rule(RemovalSet r, const char* rule) {
  for (auto& e : r.entries) e.rule = rule;
  return r;
}

// Swaps the pair orientation of removals found on the transposed instance.
RemovalSet flip(RemovalSet r) {
  for (auto& e : r.entries) std::swap(e.row, e.col);
  return r;
}

}  // namespace

std::vector<std::pair<Index, Index>> RemovalSet::pairs() const {
  std::vector<std::pair<Index, Index>> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.emplace_back(e.row, e.col);
  return out;
}

RemovalSet first_rank_family(const Instance& inst) {
  require_one_to_one(inst);
  // Rank-1 row set -> columns sharing it. Keys are recorded in first-seen
  // order so the scan below is deterministic.
  std::unordered_map<std::vector<Index>, std::vector<Index>, VecHash> by_top;
  std::vector<const std::vector<Index>*> key_order;
  for (Index j = 1; j <= inst.n2; ++j) {
    if (inst.col(j).empty()) continue;
    auto [it, inserted] = by_top.try_emplace(inst.col(j).group(1));
    if (inserted) key_order.push_back(&it->first);
    it->second.push_back(j);
  }
  RemovalSet removals;
  for (const auto* key : key_order) {
    const std::vector<Index>& rows = *key;
    const std::vector<Index>& fams = by_top[*key];
    if (fams.size() < rows.size()) continue;
    for (Index i : rows) {
      int limit = 0;
      for (Index j : fams) limit = std::max(limit, inst.row(i).rank_of(j));
      collect_worse(inst, i, limit, kRuleFirstRankFamily, removals);
    }
  }
  return dedupe(std::move(removals));
}

RemovalSet full_child_preferences(const Instance& inst) {
  require_one_to_one(inst);
  RemovalSet removals;
  std::vector<int> mark(static_cast<std::size_t>(inst.n1) + 1, 0);
  int epoch = 0;
  for (Index i = 1; i <= inst.n1; ++i) {
    if (inst.row(i).empty()) continue;
    ++epoch;
    int f_count = 0;
    int c_count = 0;
    const auto& groups = inst.row(i).groups();
    bool done = false;
    for (int k = 1; k <= static_cast<int>(groups.size()) && !done; ++k) {
      for (Index j : groups[static_cast<std::size_t>(k - 1)]) {
        ++f_count;
        // Rows that column j ranks no worse than row i.
        const int ji_rank = inst.col(j).rank_of(i);
        for (int r = 1; r <= ji_rank; ++r) {
          for (Index other : inst.col(j).group(r)) {
            if (mark[static_cast<std::size_t>(other)] != epoch) {
              mark[static_cast<std::size_t>(other)] = epoch;
              ++c_count;
            }
          }
        }
        if (f_count >= c_count) {
          collect_worse(inst, i, k, kRuleFullChildPreferences, removals);
          done = true;
          break;
        }
      }
    }
  }
  return dedupe(std::move(removals));
}

Instance remove_pairs(const Instance& inst, const RemovalSet& removals) {
  std::vector<std::unordered_set<Index>> drop_row(static_cast<std::size_t>(inst.n1) + 1);
  std::vector<std::unordered_set<Index>> drop_col(static_cast<std::size_t>(inst.n2) + 1);
  for (const auto& e : removals.entries) {
    if (e.row < 1 || e.row > inst.n1 || e.col < 1 || e.col > inst.n2 ||
        inst.row(e.row).rank_of(e.col) == 0) {
      throw ValidationError("removal (" + std::to_string(e.row) + ", " +
                            std::to_string(e.col) + ") is not an acceptable pair");
    }
    drop_row[static_cast<std::size_t>(e.row)].insert(e.col);
    drop_col[static_cast<std::size_t>(e.col)].insert(e.row);
  }
  auto filter = [](const PreferenceList& list, const std::unordered_set<Index>& gone) {
    if (gone.empty()) return list;
    std::vector<std::vector<Index>> groups;
    for (const auto& g : list.groups()) {
      std::vector<Index> kept;
      for (Index p : g) {
        if (!gone.count(p)) kept.push_back(p);
      }
      if (!kept.empty()) groups.push_back(std::move(kept));
    }
    return PreferenceList(std::move(groups));
  };
  Instance out;
  out.n1 = inst.n1;
  out.n2 = inst.n2;
  out.capacities = inst.capacities;
  out.rows.reserve(static_cast<std::size_t>(inst.n1));
  out.cols.reserve(static_cast<std::size_t>(inst.n2));
  for (Index i = 1; i <= inst.n1; ++i) {
    out.rows.push_back(filter(inst.row(i), drop_row[static_cast<std::size_t>(i)]));
  }
  for (Index j = 1; j <= inst.n2; ++j) {
    out.cols.push_back(filter(inst.col(j), drop_col[static_cast<std::size_t>(j)]));
  }
  return out;
}

std::pair<Instance, RemovalSet> reduce_fixpoint(const Instance& inst) {
  require_one_to_one(inst);
  Instance cur = inst;
  RemovalSet log;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int step = 0; step < 4; ++step) {
      RemovalSet found;
      switch (step) {
        case 0:
          found = first_rank_family(cur);
          break;
        case 1:
          found = flip(with_rule(first_rank_family(transpose(cur)), kRuleFirstRankChild));
          break;
        case 2:
          found = full_child_preferences(cur);
          break;
        default:
          found = flip(with_rule(full_child_preferences(transpose(cur)),
                                 kRuleFullFamilyPreferences));
          break;
      }
      if (found.empty()) continue;
      cur = remove_pairs(cur, found);
      log.entries.insert(log.entries.end(), found.entries.begin(), found.entries.end());
      changed = true;
    }
  }
  return {std::move(cur), std::move(log)};
}

}  // namespace stmatch
