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

#include "stmatch/ilp_build.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

namespace stmatch {

namespace {

std::string x_name(Index i, Index j) {
  return "x_" + std::to_string(i) + "_" + std::to_string(j);
}
std::string y_name(Index i, int k) {
  return "y_" + std::to_string(i) + "_" + std::to_string(k);
}
std::string yp_name(Index j, int k) {
  return "yp_" + std::to_string(j) + "_" + std::to_string(k);
}
std::string z_name(Index j, int k) {
  return "z_" + std::to_string(j) + "_" + std::to_string(k);
}

using Terms = std::vector<std::pair<int, double>>;

// Shared variable bookkeeping for both problem shapes.
struct Builder {
  const Instance& inst;
  IlpModel model;
  std::vector<std::unordered_map<Index, int>> x;  // x[i-1][j] -> var id
  std::vector<std::vector<int>> y;                // y[i-1][k-1]
  std::vector<std::vector<int>> yp;               // yp[j-1][k-1]
  std::vector<std::vector<int>> z;                // z[j-1][k-1], k = 1..gamma'+1

  explicit Builder(const Instance& in) : inst(in) {
    x.resize(static_cast<std::size_t>(in.n1));
  }

  void declare_x() {
    for (Index i = 1; i <= inst.n1; ++i) {
      for (const auto& g : inst.row(i).groups()) {
        for (Index j : g) {
          x[static_cast<std::size_t>(i - 1)][j] =
              model.add_var(x_name(i, j), VarKind::kBinary);
        }
      }
    }
  }

  void declare_dummies(VarKind col_kind) {
    y.resize(static_cast<std::size_t>(inst.n1));
    yp.resize(static_cast<std::size_t>(inst.n2));
    for (Index i = 1; i <= inst.n1; ++i) {
      for (int k = 1; k <= inst.row(i).num_groups(); ++k) {
        y[static_cast<std::size_t>(i - 1)].push_back(
            model.add_var(y_name(i, k), VarKind::kBinary));
      }
    }
    for (Index j = 1; j <= inst.n2; ++j) {
      for (int k = 1; k <= inst.col(j).num_groups(); ++k) {
        yp[static_cast<std::size_t>(j - 1)].push_back(
            model.add_var(yp_name(j, k), col_kind));
      }
    }
  }

  void declare_z() {
    z.resize(static_cast<std::size_t>(inst.n2));
    for (Index j = 1; j <= inst.n2; ++j) {
      const int ranks = inst.col(j).num_groups();
      if (ranks == 0) continue;
      for (int k = 1; k <= ranks + 1; ++k) {
        z[static_cast<std::size_t>(j - 1)].push_back(
            model.add_var(z_name(j, k), VarKind::kBinary));
      }
    }
  }

  int x_id(Index i, Index j) const { return x[static_cast<std::size_t>(i - 1)].at(j); }
  int y_id(Index i, int k) const {
    return y[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)];
  }
  int yp_id(Index j, int k) const {
    return yp[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)];
  }
  int z_id(Index j, int k) const {
    return z[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)];
  }

  // x_iq over columns q that row i ranks at or better than rank.
  void add_row_prefix(Terms& terms, Index i, int rank, double coef) const {
    for (int r = 1; r <= rank; ++r) {
      for (Index q : inst.row(i).group(r)) {
        terms.emplace_back(x_id(i, q), coef);
      }
    }
  }

  // x_pj over rows p that column j ranks at or better than rank.
  void add_col_prefix(Terms& terms, Index j, int rank, double coef) const {
    for (int r = 1; r <= rank; ++r) {
      for (Index p : inst.col(j).group(r)) {
        terms.emplace_back(x_id(p, j), coef);
      }
    }
  }

  void emit_assignment_rows() {
    for (Index i = 1; i <= inst.n1; ++i) {
      if (inst.row(i).empty()) continue;
      Terms terms;
      add_row_prefix(terms, i, inst.row(i).num_groups(), 1.0);
      model.add_con(kConAssignRow + std::to_string(i), std::move(terms), Rel::kLe, 1.0);
    }
  }

  void emit_coherence() {
    for (Index i = 1; i <= inst.n1; ++i) {
      for (int k = 1; k <= inst.row(i).num_groups(); ++k) {
        Terms terms;
        for (Index j : inst.row(i).group(k)) terms.emplace_back(x_id(i, j), 1.0);
        if (k > 1) terms.emplace_back(y_id(i, k - 1), 1.0);
        terms.emplace_back(y_id(i, k), -1.0);
        model.add_con(kConCoherenceRow + std::to_string(i) + "_" + std::to_string(k),
                      std::move(terms), Rel::kEq, 0.0);
      }
    }
    for (Index j = 1; j <= inst.n2; ++j) {
      for (int k = 1; k <= inst.col(j).num_groups(); ++k) {
        Terms terms;
        for (Index i : inst.col(j).group(k)) terms.emplace_back(x_id(i, j), 1.0);
        if (k > 1) terms.emplace_back(yp_id(j, k - 1), 1.0);
        terms.emplace_back(yp_id(j, k), -1.0);
        model.add_con(kConCoherenceCol + std::to_string(j) + "_" + std::to_string(k),
                      std::move(terms), Rel::kEq, 0.0);
      }
    }
  }
};

void set_size_objective(Builder& b, bool dummy) {
  if (dummy) {
    for (Index i = 1; i <= b.inst.n1; ++i) {
      const int last = b.inst.row(i).num_groups();
      if (last > 0) b.model.set_objective_term(b.y_id(i, last), 1.0);
    }
  } else {
    for (Index i = 1; i <= b.inst.n1; ++i) {
      for (const auto& g : b.inst.row(i).groups()) {
        for (Index j : g) b.model.set_objective_term(b.x_id(i, j), 1.0);
      }
    }
  }
}

void set_weight_objective(Builder& b, const GrpInstance& grp) {
  for (Index i = 1; i <= b.inst.n1; ++i) {
    for (const auto& g : b.inst.row(i).groups()) {
      for (Index j : g) {
        std::optional<double> w = grp.weight_of(i, j);
        if (!w) {
          throw ValidationError("pair (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") has no weight");
        }
        b.model.set_objective_term(b.x_id(i, j), *w);
      }
    }
  }
}

}  // namespace

ModelConfig ModelConfig::preset(std::string_view name) {
  ModelConfig cfg;
  if (name.size() >= 2 && name[0] == 'm') {
    cfg.problem = Problem::kSmti;
    if (name == "m1") return cfg;
    if (name == "m2") {
      cfg.dummy_variables = true;
      return cfg;
    }
    if (name == "m3") {
      cfg.merge_child_stability = true;
      return cfg;
    }
    if (name == "m4") {
      cfg.dummy_variables = true;
      cfg.merge_child_stability = true;
      return cfg;
    }
    if (name == "m5") {
      cfg.merge_child_stability = true;
      cfg.double_stability = true;
      return cfg;
    }
    if (name == "m6") {
      cfg.dummy_variables = true;
      cfg.merge_child_stability = true;
      cfg.double_stability = true;
      return cfg;
    }
  } else if (name.size() >= 2 && name[0] == 'n') {
    cfg.problem = Problem::kHrt;
    if (name == "n1") {
      cfg.hrt.base = true;
      return cfg;
    }
    if (name == "n2") {
      cfg.dummy_variables = true;
      cfg.hrt.base = true;
      return cfg;
    }
    if (name == "n3") {
      cfg.hrt.z_set = true;
      return cfg;
    }
    if (name == "n4") {
      cfg.dummy_variables = true;
      cfg.hrt.z_set = true;
      return cfg;
    }
    if (name == "n5") {
      cfg.hrt.z_set = true;
      cfg.hrt.z_merged = true;
      return cfg;
    }
    if (name == "n6") {
      cfg.dummy_variables = true;
      cfg.hrt.z_set = true;
      cfg.hrt.z_merged = true;
      return cfg;
    }
    if (name == "n7") {
      cfg.hrt.base = true;
      cfg.hrt.z_set = true;
      return cfg;
    }
    if (name == "n8") {
      cfg.dummy_variables = true;
      cfg.hrt.base = true;
      cfg.hrt.z_set = true;
      return cfg;
    }
    if (name == "n9") {
      cfg.hrt.base = true;
      cfg.hrt.z_set = true;
      cfg.hrt.z_merged = true;
      return cfg;
    }
    if (name == "n10") {
      cfg.dummy_variables = true;
      cfg.hrt.base = true;
      cfg.hrt.z_set = true;
      cfg.hrt.z_merged = true;
      return cfg;
    }
    if (name == "n11") {
      cfg.hrt.z_set = true;
      cfg.hrt.mix = true;
      return cfg;
    }
    if (name == "n12") {
      cfg.dummy_variables = true;
      cfg.hrt.z_set = true;
      cfg.hrt.mix = true;
      return cfg;
    }
  }
  throw ValidationError("unknown model preset '" + std::string(name) + "'");
}

IlpModel build_smti_model(const Instance& inst, const GrpInstance* grp,
                          const ModelConfig& cfg) {
  if (cfg.problem != Problem::kSmti) {
    throw ValidationError("config targets a one-to-many problem");
  }
  if (inst.one_to_many()) {
    throw ValidationError("instance has capacities; use build_hrt_model");
  }
  if (cfg.objective == Objective::kWeight && grp == nullptr) {
    throw ValidationError("weight objective needs a weight table");
  }
  if (cfg.double_stability && !cfg.merge_child_stability) {
    throw ValidationError("double stability requires merged child stability");
  }
  if (cfg.hrt.base || cfg.hrt.z_set || cfg.hrt.z_merged || cfg.hrt.mix) {
    throw ValidationError("one-to-many stability flags set on a one-to-one config");
  }
  validate_instance(inst);

  Builder b(inst);
  b.model.meta.one_to_many = false;
  b.model.meta.include_stability = cfg.include_stability;
  b.model.meta.objective = cfg.objective;
  b.declare_x();
  if (cfg.dummy_variables) b.declare_dummies(VarKind::kBinary);

  if (cfg.objective == Objective::kWeight) {
    set_weight_objective(b, *grp);
  } else {
    set_size_objective(b, cfg.dummy_variables);
  }

  if (cfg.dummy_variables) {
    b.emit_coherence();
  } else {
    b.emit_assignment_rows();
    for (Index j = 1; j <= inst.n2; ++j) {
      if (inst.col(j).empty()) continue;
      Terms terms;
      b.add_col_prefix(terms, j, inst.col(j).num_groups(), 1.0);
      b.model.add_con(kConAssignCol + std::to_string(j), std::move(terms), Rel::kLe, 1.0);
    }
  }

  if (cfg.include_stability) {
    if (!cfg.merge_child_stability) {
      for (Index i = 1; i <= inst.n1; ++i) {
        const auto& groups = inst.row(i).groups();
        for (int k = 1; k <= static_cast<int>(groups.size()); ++k) {
          for (Index j : groups[static_cast<std::size_t>(k - 1)]) {
            Terms terms;
            if (cfg.dummy_variables) {
              terms.emplace_back(b.y_id(i, k), 1.0);
              terms.emplace_back(b.yp_id(j, inst.col(j).rank_of(i)), 1.0);
            } else {
              b.add_row_prefix(terms, i, k, 1.0);
              b.add_col_prefix(terms, j, inst.col(j).rank_of(i), 1.0);
            }
            b.model.add_con(
                kConStability + std::to_string(i) + "_" + std::to_string(j),
                std::move(terms), Rel::kGe, 1.0);
          }
        }
      }
    } else {
      for (Index i = 1; i <= inst.n1; ++i) {
        const auto& groups = inst.row(i).groups();
        for (int k = 1; k <= static_cast<int>(groups.size()); ++k) {
          const auto& fam = groups[static_cast<std::size_t>(k - 1)];
          const double m = static_cast<double>(fam.size());
          Terms terms;
          if (cfg.dummy_variables) {
            terms.emplace_back(b.y_id(i, k), m);
            for (Index j : fam) {
              terms.emplace_back(b.yp_id(j, inst.col(j).rank_of(i)), 1.0);
            }
          } else {
            b.add_row_prefix(terms, i, k, m);
            for (Index j : fam) {
              b.add_col_prefix(terms, j, inst.col(j).rank_of(i), 1.0);
            }
          }
          b.model.add_con(
              kConMergedStability + std::to_string(i) + "_" + std::to_string(k),
              std::move(terms), Rel::kGe, m);
        }
      }
    }
    if (cfg.double_stability) {
      for (Index j = 1; j <= inst.n2; ++j) {
        const auto& groups = inst.col(j).groups();
        for (int k = 1; k <= static_cast<int>(groups.size()); ++k) {
          const auto& kids = groups[static_cast<std::size_t>(k - 1)];
          const double m = static_cast<double>(kids.size());
          Terms terms;
          if (cfg.dummy_variables) {
            terms.emplace_back(b.yp_id(j, k), m);
            for (Index i : kids) {
              terms.emplace_back(b.y_id(i, inst.row(i).rank_of(j)), 1.0);
            }
          } else {
            b.add_col_prefix(terms, j, k, m);
            for (Index i : kids) {
              b.add_row_prefix(terms, i, inst.row(i).rank_of(j), 1.0);
            }
          }
          b.model.add_con(
              kConDoubleStability + std::to_string(j) + "_" + std::to_string(k),
              std::move(terms), Rel::kGe, m);
        }
      }
    }
  }
  return std::move(b.model);
}

IlpModel build_hrt_model(const Instance& inst, const ModelConfig& cfg) {
  if (cfg.problem != Problem::kHrt) {
    throw ValidationError("config targets a one-to-one problem");
  }
  if (!inst.one_to_many()) {
    throw ValidationError("instance has no capacities; use build_smti_model");
  }
  if (cfg.objective == Objective::kWeight) {
    throw ValidationError("weight objectives are not offered for one-to-many models");
  }
  if (cfg.merge_child_stability || cfg.double_stability) {
    throw ValidationError("one-to-one merge flags set on a one-to-many config");
  }
  if ((cfg.hrt.z_merged || cfg.hrt.mix) && !cfg.hrt.z_set) {
    throw ValidationError("z-row options need the z variable set");
  }
  if (cfg.hrt.mix && cfg.hrt.base) {
    throw ValidationError("capacity-linked z rows replace the base stability rows");
  }
  if (cfg.include_stability && !cfg.hrt.base && !cfg.hrt.z_set) {
    throw ValidationError("no stability machinery configured");
  }
  validate_instance(inst);

  Builder b(inst);
  b.model.meta.one_to_many = true;
  b.model.meta.include_stability = cfg.include_stability;
  b.model.meta.objective = Objective::kSize;
  b.declare_x();
  if (cfg.dummy_variables) b.declare_dummies(VarKind::kInteger);
  if (cfg.hrt.z_set) b.declare_z();

  set_size_objective(b, cfg.dummy_variables);

  auto cap = [&](Index j) { return static_cast<double>(inst.capacity(j)); };

  if (cfg.dummy_variables) {
    b.emit_coherence();
    for (Index j = 1; j <= inst.n2; ++j) {
      const int last = inst.col(j).num_groups();
      if (last == 0) continue;
      b.model.add_con(kConCapacityY + std::to_string(j),
                      {{b.yp_id(j, last), 1.0}}, Rel::kLe, cap(j));
    }
  } else {
    b.emit_assignment_rows();
    for (Index j = 1; j <= inst.n2; ++j) {
      if (inst.col(j).empty()) continue;
      Terms terms;
      b.add_col_prefix(terms, j, inst.col(j).num_groups(), 1.0);
      b.model.add_con(kConCapacity + std::to_string(j), std::move(terms), Rel::kLe,
                      cap(j));
    }
  }

  if (cfg.hrt.base && cfg.include_stability) {
    for (Index i = 1; i <= inst.n1; ++i) {
      const auto& groups = inst.row(i).groups();
      for (int k = 1; k <= static_cast<int>(groups.size()); ++k) {
        for (Index j : groups[static_cast<std::size_t>(k - 1)]) {
          Terms terms;
          if (cfg.dummy_variables) {
            terms.emplace_back(b.y_id(i, k), cap(j));
            terms.emplace_back(b.yp_id(j, inst.col(j).rank_of(i)), 1.0);
          } else {
            b.add_row_prefix(terms, i, k, cap(j));
            b.add_col_prefix(terms, j, inst.col(j).rank_of(i), 1.0);
          }
          b.model.add_con(kConStability + std::to_string(i) + "_" + std::to_string(j),
                          std::move(terms), Rel::kGe, cap(j));
        }
      }
    }
  }

  if (cfg.hrt.z_set) {
    // Pair upper bounds: a row cannot take a column already full at the
    // row's rank.
    for (Index i = 1; i <= inst.n1; ++i) {
      for (const auto& g : inst.row(i).groups()) {
        for (Index j : g) {
          b.model.add_con(kConZUpper + std::to_string(i) + "_" + std::to_string(j),
                          {{b.x_id(i, j), 1.0}, {b.z_id(j, inst.col(j).rank_of(i)), 1.0}},
                          Rel::kLe, 1.0);
        }
      }
    }
    for (Index j = 1; j <= inst.n2; ++j) {
      const int ranks = inst.col(j).num_groups();
      for (int k = 2; k <= ranks + 1; ++k) {
        b.model.add_con(kConZMono + std::to_string(j) + "_" + std::to_string(k),
                        {{b.z_id(j, k), 1.0}, {b.z_id(j, k - 1), -1.0}}, Rel::kGe, 0.0);
      }
    }
    if (cfg.include_stability) {
      for (Index j = 1; j <= inst.n2; ++j) {
        const int ranks = inst.col(j).num_groups();
        for (int k = 2; k <= ranks + 1; ++k) {
          const auto& docs = inst.col(j).group(k - 1);
          if (cfg.hrt.z_merged) {
            const double m = static_cast<double>(docs.size());
            Terms terms;
            terms.emplace_back(b.z_id(j, k), m);
            for (Index i : docs) {
              if (cfg.dummy_variables) {
                terms.emplace_back(b.y_id(i, inst.row(i).rank_of(j)), 1.0);
              } else {
                b.add_row_prefix(terms, i, inst.row(i).rank_of(j), 1.0);
              }
            }
            b.model.add_con(
                kConZMergedStability + std::to_string(j) + "_" + std::to_string(k),
                std::move(terms), Rel::kGe, m);
          } else {
            for (Index i : docs) {
              Terms terms;
              terms.emplace_back(b.z_id(j, k), 1.0);
              if (cfg.dummy_variables) {
                terms.emplace_back(b.y_id(i, inst.row(i).rank_of(j)), 1.0);
              } else {
                b.add_row_prefix(terms, i, inst.row(i).rank_of(j), 1.0);
              }
              b.model.add_con(kConZStability + std::to_string(j) + "_" +
                                  std::to_string(k) + "_" + std::to_string(i),
                              std::move(terms), Rel::kGe, 1.0);
            }
          }
        }
      }
    }
    if (cfg.hrt.mix) {
      // Column j full at rank k-1 implies c_j rows at rank <= k-1.
      for (Index j = 1; j <= inst.n2; ++j) {
        const int ranks = inst.col(j).num_groups();
        for (int k = 2; k <= ranks + 1; ++k) {
          Terms terms;
          terms.emplace_back(b.z_id(j, k), cap(j));
          if (cfg.dummy_variables) {
            terms.emplace_back(b.yp_id(j, k - 1), -1.0);
          } else {
            b.add_col_prefix(terms, j, k - 1, -1.0);
          }
          b.model.add_con(kConZMix + std::to_string(j) + "_" + std::to_string(k),
                          std::move(terms), Rel::kLe, 0.0);
        }
      }
    } else {
      // Fully subscribed threshold: z at the rank past the whole list
      // requires c_j assigned rows.
      for (Index j = 1; j <= inst.n2; ++j) {
        const int ranks = inst.col(j).num_groups();
        if (ranks == 0) continue;
        Terms terms;
        terms.emplace_back(b.z_id(j, ranks + 1), cap(j));
        if (cfg.dummy_variables) {
          terms.emplace_back(b.yp_id(j, ranks), -1.0);
        } else {
          b.add_col_prefix(terms, j, ranks, -1.0);
        }
        b.model.add_con(kConZFull + std::to_string(j), std::move(terms), Rel::kLe, 0.0);
      }
    }
  }
  return std::move(b.model);
}

namespace {

// Splits "x_3_5" into its underscore-separated integer fields.
std::vector<int> name_fields(const std::string& name) {
  std::vector<int> out;
  std::size_t pos = name.find('_');
  while (pos != std::string::npos) {
    std::size_t next = name.find('_', pos + 1);
    const std::string part = name.substr(pos + 1, next == std::string::npos
                                                      ? std::string::npos
                                                      : next - pos - 1);
    out.push_back(std::stoi(part));
    pos = next;
  }
  return out;
}

}  // namespace

IlpModel attach_warm_start(IlpModel model, const Instance& inst, const Matching& m) {
  check_matching(inst, m);
  if (model.meta.include_stability) {
    BlockingReport report = blocking_pairs(inst, m);
    if (!report.stable) {
      throw ValidationError("warm-start matching is unstable (" +
                            std::to_string(report.pairs.size()) + " blocking pairs)");
    }
  }
  std::vector<Index> row_partner(static_cast<std::size_t>(inst.n1) + 1, 0);
  // Per column: number of assigned rows with rank <= k, as a cumulative map.
  std::vector<std::vector<int>> col_rank_count(static_cast<std::size_t>(inst.n2) + 1);
  for (Index j = 1; j <= inst.n2; ++j) {
    col_rank_count[static_cast<std::size_t>(j)].assign(
        static_cast<std::size_t>(inst.col(j).num_groups()) + 1, 0);
  }
  for (const auto& [i, j] : m.pairs) {
    row_partner[static_cast<std::size_t>(i)] = j;
    col_rank_count[static_cast<std::size_t>(j)]
                  [static_cast<std::size_t>(inst.col(j).rank_of(i))] += 1;
  }
  for (Index j = 1; j <= inst.n2; ++j) {
    auto& counts = col_rank_count[static_cast<std::size_t>(j)];
    for (std::size_t k = 1; k < counts.size(); ++k) counts[k] += counts[k - 1];
  }

  for (Variable& v : model.vars) {
    const std::vector<int> f = name_fields(v.name);
    double value = 0.0;
    if (v.name[0] == 'x') {
      value = row_partner[static_cast<std::size_t>(f[0])] == f[1] ? 1.0 : 0.0;
    } else if (v.name[0] == 'y' && v.name[1] == '_') {
      const Index partner = row_partner[static_cast<std::size_t>(f[0])];
      value = partner != 0 && inst.row(f[0]).rank_of(partner) <= f[1] ? 1.0 : 0.0;
    } else if (v.name[0] == 'y') {  // yp
      value = static_cast<double>(
          col_rank_count[static_cast<std::size_t>(f[0])][static_cast<std::size_t>(f[1])]);
    } else {  // z: column full within ranks < k
      const auto& counts = col_rank_count[static_cast<std::size_t>(f[0])];
      value = counts[static_cast<std::size_t>(f[1] - 1)] == inst.capacity(f[0]) ? 1.0 : 0.0;
    }
    v.warm = value;
  }

  std::vector<double> values(model.vars.size());
  for (std::size_t v = 0; v < model.vars.size(); ++v) values[v] = *model.vars[v].warm;
  const int bad = first_violated(model, values);
  if (bad >= 0) {
    throw ValidationError("warm-start values violate constraint " +
                          model.cons[static_cast<std::size_t>(bad)].name);
  }
  return model;
}

IlpModel set_priorities(IlpModel model, PriorityScheme scheme) {
  for (Variable& v : model.vars) v.priority = 0;
  if (scheme == PriorityScheme::kNone) return model;
  const bool want_z = scheme == PriorityScheme::kZ;
  int hits = 0;
  for (Variable& v : model.vars) {
    const bool is_z = v.name[0] == 'z';
    const bool is_dummy = v.name[0] == 'y';  // covers y_ and yp_
    if ((want_z && is_z) || (!want_z && is_dummy)) {
      v.priority = 1;
      ++hits;
    }
  }
  if (hits == 0) {
    throw ValidationError(want_z ? "model has no z variables"
                                 : "model has no dummy variables");
  }
  return model;
}

}  // namespace stmatch
