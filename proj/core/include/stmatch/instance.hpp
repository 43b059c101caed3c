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

#ifndef STMATCH_INSTANCE_HPP_
#define STMATCH_INSTANCE_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stmatch/error.hpp"

namespace stmatch {

// Agents are addressed by 1-based indices on both sides.
using Index = int;

enum class Side { kRow, kCol };

// One agent's preference list: an ordered sequence of tie groups, most
// preferred first. Members of a group are kept sorted by index. The list
// owns a flat (partner -> group rank) index for O(log e) rank lookups.
class PreferenceList {
 public:
  PreferenceList() = default;
  // Validates: no empty group, no partner listed twice.
  explicit PreferenceList(std::vector<std::vector<Index>> groups);

  const std::vector<std::vector<Index>>& groups() const { return groups_; }
  // 1-based access to the k-th tie group.
  const std::vector<Index>& group(int k) const { return groups_[static_cast<std::size_t>(k - 1)]; }
  int num_groups() const { return static_cast<int>(groups_.size()); }
  int num_entries() const { return entries_; }
  bool empty() const { return groups_.empty(); }
  // 1-based rank of the group containing partner, 0 if not listed.
  int rank_of(Index partner) const;
  // All partners in preference order (group by group, ascending inside).
  std::vector<Index> flatten() const;

 private:
  std::vector<std::vector<Index>> groups_;
  std::vector<std::pair<Index, int>> rank_;  // sorted by partner
  int entries_ = 0;
};

// A two-sided matching instance. Rows are matched to at most one column;
// columns take at most capacity(j) rows. capacities is either empty
// (one-to-one) or holds one positive entry per column (one-to-many).
struct Instance {
  int n1 = 0;
  int n2 = 0;
  std::vector<PreferenceList> rows;
  std::vector<PreferenceList> cols;
  std::vector<int> capacities;

  bool one_to_many() const { return !capacities.empty(); }
  const PreferenceList& row(Index i) const { return rows[static_cast<std::size_t>(i - 1)]; }
  const PreferenceList& col(Index j) const { return cols[static_cast<std::size_t>(j - 1)]; }
  int capacity(Index j) const {
    return capacities.empty() ? 1 : capacities[static_cast<std::size_t>(j - 1)];
  }
  // Total number of acceptable pairs.
  long long num_pairs() const;
};

// Index ranges, list consistency (i lists j iff j lists i), capacities.
// Throws ValidationError on the first problem found.
void validate_instance(const Instance& inst);

struct WeightedPair {
  Index row = 0;
  Index col = 0;
  double weight = 0.0;
};

// A weighted compatibility table. Preference lists are induced: an agent
// prefers partner a to partner b iff weight(a) is strictly greater, and is
// indifferent on exact equality. pairs is sorted by (row, col).
struct GrpInstance {
  int n1 = 0;
  int n2 = 0;
  std::vector<WeightedPair> pairs;

  std::optional<double> weight_of(Index i, Index j) const;
};

void validate_grp(const GrpInstance& grp);

// A matching as an explicit pair set, sorted by (row, col).
struct Matching {
  std::vector<std::pair<Index, Index>> pairs;

  std::size_t size() const { return pairs.size(); }
};

// Canonicalizes (sorts) and rejects exact duplicates.
Matching make_matching(std::vector<std::pair<Index, Index>> pairs);

struct TieDensity {
  double value = 0.0;
  // Set when every nonempty list on the side is a single entry, which makes
  // the usual ratio 0/0; value is reported as 0 in that case.
  bool degenerate = false;
};

// ---- text formats -------------------------------------------------------
//
// Instance files are line oriented. Lines whose first non-blank character
// is '#' are comments. The header names the kind:
//
//   SMTI <n1> <n2>       followed by n1 row lists, then n2 column lists
//   HRT <n1> <n2>        followed by one line of n2 capacities, then lists
//   GRP <n1> <n2> <m>    followed by m lines "<row> <col> <weight>"
//
// A preference list line holds partner indices in preference order; a tie
// group is parenthesized, e.g. "2 (1 3)". Inside the list block a line of
// only whitespace is an empty list. Matching files hold "<row> <col>" lines.

enum class InstanceKind { kSmti, kHrt, kGrp };

// Reads the header keyword of an instance file body.
InstanceKind sniff_kind(const std::string& text);

Instance parse_instance(const std::string& text);
GrpInstance parse_grp(const std::string& text);
Matching parse_matching(const std::string& text);

std::string serialize(const Instance& inst);
std::string serialize(const GrpInstance& grp);
std::string serialize(const Matching& m);

// ---- transformations ----------------------------------------------------

// Builds the instance whose preferences are induced by the weights.
Instance derive_preferences(const GrpInstance& grp);

// Keeps exactly the pairs with weight >= t.
GrpInstance apply_threshold(const GrpInstance& grp, double t);

// Tie density of one side: 1 - (g - n) / (e - n) with g the number of tie
// groups, e the number of list entries and n the number of agents with a
// nonempty list on that side. e == n yields the degenerate flag.
TieDensity tie_density(const Instance& inst, Side side);

// Swaps the two sides. Requires a one-to-one instance.
Instance transpose(const Instance& inst);

// ---- small file helpers --------------------------------------------------

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

}  // namespace stmatch

#endif  // STMATCH_INSTANCE_HPP_
