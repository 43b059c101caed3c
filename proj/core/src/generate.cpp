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

#include "stmatch/generate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "stmatch/error.hpp"
#include "stmatch/rng.hpp"

namespace stmatch {
namespace {

// Splits a strictly ordered element sequence into tie groups, merging each
// adjacent pair with the given probability. Consumes one draw per boundary.
PreferenceList merge_adjacent(const std::vector<Index>& order, double density, Rng& rng) {
  std::vector<std::vector<Index>> groups;
  for (size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || !rand_bool(rng, density)) {
      groups.emplace_back();
    }
    groups.back().push_back(order[k]);
  }
  return PreferenceList(std::move(groups));
}

PreferenceList strict_list(const std::vector<Index>& order) {
  std::vector<std::vector<Index>> groups;
  groups.reserve(order.size());
  for (Index v : order) groups.push_back({v});
  return PreferenceList(std::move(groups));
}

int sample_weighted(const std::vector<double>& weights, Rng& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  double u = rand_unit(rng) * total;
  for (size_t k = 0; k < weights.size(); ++k) {
    u -= weights[k];
    if (u < 0.0) return static_cast<int>(k);
  }
  return static_cast<int>(weights.size()) - 1;
}

void check_density(double d, const char* what) {
  if (d < 0.0 || d > 1.0) {
    throw ValidationError(std::string(what) + " must lie in [0, 1]");
  }
}

void check_list_range(int lo, int hi, Index side_size) {
  if (lo < 1 || hi < lo) throw ValidationError("list length range is invalid");
  if (hi > side_size) {
    throw ValidationError("list length " + std::to_string(hi) + " exceeds the other side (" +
                          std::to_string(side_size) + ")");
  }
}

}  // namespace

const PerturbDist& default_perturb_dist() {
  static const PerturbDist dist = {{-2, 0.1}, {-1, 0.2}, {0, 0.4}, {1, 0.2}, {2, 0.1}};
  return dist;
}

Instance gen_smti(const SmtiGenParams& p) {
  if (p.n1 < 1 || p.n2 < 1) throw ValidationError("generator needs at least one agent per side");
  check_list_range(p.list_min, p.list_max, p.n2);
  check_density(p.tie_density_row, "row tie density");
  check_density(p.tie_density_col, "column tie density");

  Rng rng(p.seed);
  std::vector<std::vector<Index>> row_order(static_cast<size_t>(p.n1));
  for (Index i = 1; i <= p.n1; ++i) {
    int len = p.list_min == p.list_max ? p.list_min : rand_in(rng, p.list_min, p.list_max);
    row_order[static_cast<size_t>(i - 1)] = sample_distinct(rng, p.n2, len);
  }
  std::vector<std::vector<Index>> col_order(static_cast<size_t>(p.n2));
  for (Index i = 1; i <= p.n1; ++i) {
    for (Index j : row_order[static_cast<size_t>(i - 1)]) {
      col_order[static_cast<size_t>(j - 1)].push_back(i);
    }
  }
  for (Index j = 1; j <= p.n2; ++j) shuffle_vec(col_order[static_cast<size_t>(j - 1)], rng);

  Instance inst;
  inst.n1 = p.n1;
  inst.n2 = p.n2;
  inst.rows.reserve(static_cast<size_t>(p.n1));
  for (Index i = 1; i <= p.n1; ++i) {
    inst.rows.push_back(merge_adjacent(row_order[static_cast<size_t>(i - 1)],
                                       p.tie_density_row, rng));
  }
  inst.cols.reserve(static_cast<size_t>(p.n2));
  for (Index j = 1; j <= p.n2; ++j) {
    inst.cols.push_back(merge_adjacent(col_order[static_cast<size_t>(j - 1)],
                                       p.tie_density_col, rng));
  }
  validate_instance(inst);
  return inst;
}

Instance gen_hrt(const HrtGenParams& p) {
  if (p.n_doctors < 1 || p.n_hospitals < 1) {
    throw ValidationError("generator needs at least one agent per side");
  }
  check_list_range(p.list_min, p.list_max, p.n_hospitals);
  check_density(p.tie_density_hospitals, "hospital tie density");
  if (p.n_posts < p.n_hospitals) {
    throw ValidationError("posts must cover every hospital at least once");
  }
  if (p.master.has_value()) {
    if (p.master->grade_range < 1) throw ValidationError("grade range must be at least 1");
    if (p.master->skew < 1.0) throw ValidationError("skew must be at least 1");
  }

  Rng rng(p.seed);
  std::vector<std::vector<Index>> doc_order(static_cast<size_t>(p.n_doctors));
  for (Index i = 1; i <= p.n_doctors; ++i) {
    int len = p.list_min == p.list_max ? p.list_min : rand_in(rng, p.list_min, p.list_max);
    doc_order[static_cast<size_t>(i - 1)] = sample_distinct(rng, p.n_hospitals, len);
  }

  std::vector<int> caps(static_cast<size_t>(p.n_hospitals), p.n_posts / p.n_hospitals);
  int remainder = p.n_posts - (p.n_posts / p.n_hospitals) * p.n_hospitals;
  for (Index j : sample_distinct(rng, p.n_hospitals, remainder)) {
    ++caps[static_cast<size_t>(j - 1)];
  }

  std::vector<std::vector<Index>> applicants(static_cast<size_t>(p.n_hospitals));
  for (Index i = 1; i <= p.n_doctors; ++i) {
    for (Index j : doc_order[static_cast<size_t>(i - 1)]) {
      applicants[static_cast<size_t>(j - 1)].push_back(i);
    }
  }

  Instance inst;
  inst.n1 = p.n_doctors;
  inst.n2 = p.n_hospitals;
  inst.capacities = caps;
  inst.rows.reserve(static_cast<size_t>(p.n_doctors));
  for (Index i = 1; i <= p.n_doctors; ++i) {
    inst.rows.push_back(strict_list(doc_order[static_cast<size_t>(i - 1)]));
  }
  inst.cols.reserve(static_cast<size_t>(p.n_hospitals));
  if (p.master.has_value()) {
    int j_max = p.master->grade_range;
    std::vector<double> weights(static_cast<size_t>(j_max));
    for (int g = 1; g <= j_max; ++g) {
      weights[static_cast<size_t>(g - 1)] =
          j_max == 1 ? 1.0
                     : p.master->skew - (g - 1) * (p.master->skew - 1.0) / (j_max - 1);
    }
    std::vector<int> grade(static_cast<size_t>(p.n_doctors));
    for (Index i = 1; i <= p.n_doctors; ++i) {
      grade[static_cast<size_t>(i - 1)] = 1 + sample_weighted(weights, rng);
    }
    for (Index j = 1; j <= p.n_hospitals; ++j) {
      std::vector<Index> docs = applicants[static_cast<size_t>(j - 1)];
      std::stable_sort(docs.begin(), docs.end(), [&](Index a, Index b) {
        return grade[static_cast<size_t>(a - 1)] > grade[static_cast<size_t>(b - 1)];
      });
      std::vector<std::vector<Index>> groups;
      for (size_t k = 0; k < docs.size(); ++k) {
        if (k == 0 || grade[static_cast<size_t>(docs[k] - 1)] !=
                          grade[static_cast<size_t>(docs[k - 1] - 1)]) {
          groups.emplace_back();
        }
        groups.back().push_back(docs[k]);
      }
      inst.cols.emplace_back(std::move(groups));
    }
  } else {
    for (Index j = 1; j <= p.n_hospitals; ++j) {
      shuffle_vec(applicants[static_cast<size_t>(j - 1)], rng);
    }
    for (Index j = 1; j <= p.n_hospitals; ++j) {
      inst.cols.push_back(merge_adjacent(applicants[static_cast<size_t>(j - 1)],
                                         p.tie_density_hospitals, rng));
    }
  }
  validate_instance(inst);
  return inst;
}

GrpInstance augment_grp(const GrpInstance& g, int kappa, std::uint64_t seed,
                        const PerturbDist& dist) {
  validate_grp(g);
  if (kappa < 1) throw ValidationError("kappa must be at least 1");
  double total = 0.0;
  for (const auto& [shift, prob] : dist) {
    if (prob < 0.0) throw ValidationError("perturbation probabilities must be nonnegative");
    total += prob;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("perturbation probabilities must sum to 1");
  }

  // Distinct weights split into a common and an uncommon class; each class
  // keeps its distinct values sorted for position arithmetic.
  std::map<double, long long> counts;
  for (const WeightedPair& p : g.pairs) ++counts[p.weight];
  const long long m = static_cast<long long>(g.pairs.size());
  std::vector<double> common;
  std::vector<double> uncommon;
  for (const auto& [w, c] : counts) {
    (c * 100 >= m ? common : uncommon).push_back(w);  // common: at least 1% of pairs
  }

  auto perturb = [&](double w, Rng& rng) {
    double u = rand_unit(rng);
    int shift = dist.back().first;
    for (const auto& [s, prob] : dist) {
      u -= prob;
      if (u < 0.0) {
        shift = s;
        break;
      }
    }
    const std::vector<double>& list =
        std::binary_search(common.begin(), common.end(), w) ? common : uncommon;
    if (list.size() < 5) return w;
    auto at = std::lower_bound(list.begin(), list.end(), w);
    long long pos = at - list.begin() + shift;
    pos = std::clamp<long long>(pos, 0, static_cast<long long>(list.size()) - 1);
    return list[static_cast<size_t>(pos)];
  };

  Rng rng(seed);
  GrpInstance out;
  out.n1 = g.n1 * kappa;
  out.n2 = g.n2 * kappa;
  out.pairs.reserve(g.pairs.size() * static_cast<size_t>(kappa) * static_cast<size_t>(kappa));
  for (const WeightedPair& p : g.pairs) {
    for (int a = 0; a < kappa; ++a) {
      for (int b = 0; b < kappa; ++b) {
        WeightedPair q;
        q.row = a * g.n1 + p.row;
        q.col = b * g.n2 + p.col;
        q.weight = perturb(p.weight, rng);
        out.pairs.push_back(q);
      }
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const WeightedPair& a, const WeightedPair& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  validate_grp(out);
  return out;
}

}  // namespace stmatch
