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

#ifndef STMATCH_ILP_BUILD_HPP_
#define STMATCH_ILP_BUILD_HPP_

#include <string_view>

#include "stmatch/ilp_model.hpp"
#include "stmatch/instance.hpp"

namespace stmatch {

enum class Problem { kSmti, kHrt };
enum class PriorityScheme { kNone, kDummy, kZ };

// Which one-to-many stability machinery to emit. base is the per-pair
// capacity-weighted row; the z set tracks "column j is full up to rank k"
// with threshold variables; z_merged collapses the per-pair z rows into one
// row per (column, rank); mix couples z directly to capacity, replacing
// both base and the full-column row.
struct HrtStability {
  bool base = false;
  bool z_set = false;
  bool z_merged = false;
  bool mix = false;
};

struct ModelConfig {
  Problem problem = Problem::kSmti;
  Objective objective = Objective::kSize;
  bool dummy_variables = false;
  bool merge_child_stability = false;
  bool double_stability = false;
  HrtStability hrt;
  bool include_stability = true;
  PriorityScheme priorities = PriorityScheme::kNone;
  int warm_start = 0;  // 0 = off; k > 0 = best of k heuristic runs

  // m1..m6 (one-to-one) or n1..n12 (one-to-many).
  static ModelConfig preset(std::string_view name);
};

// Constraint name prefixes. Row counts per prefix are part of the tested
// contract (see model_stats / count_constraints).
inline constexpr const char* kConAssignRow = "asg_r_";
inline constexpr const char* kConAssignCol = "asg_c_";
inline constexpr const char* kConCapacity = "cap_";
inline constexpr const char* kConCapacityY = "capy_";
inline constexpr const char* kConCoherenceRow = "coh_r_";
inline constexpr const char* kConCoherenceCol = "coh_c_";
inline constexpr const char* kConStability = "stab_";
inline constexpr const char* kConMergedStability = "mstab_";
inline constexpr const char* kConDoubleStability = "dstab_";
inline constexpr const char* kConZUpper = "zub_";
inline constexpr const char* kConZMono = "zmono_";
inline constexpr const char* kConZStability = "zstab_";
inline constexpr const char* kConZMergedStability = "zmstab_";
inline constexpr const char* kConZFull = "zfull_";
inline constexpr const char* kConZMix = "zmix_";

// Builds the one-to-one model for cfg. grp supplies objective weights and
// is required exactly when cfg.objective is weight; every acceptable pair
// of inst must then carry a weight.
IlpModel build_smti_model(const Instance& inst, const GrpInstance* grp,
                          const ModelConfig& cfg);

// Builds the one-to-many model for cfg; inst must carry capacities.
IlpModel build_hrt_model(const Instance& inst, const ModelConfig& cfg);

// Sets warm-start values for every variable from a valid matching; the
// matching must additionally be stable when the model carries stability
// rows. The produced values are verified against every constraint.
[[nodiscard]] IlpModel attach_warm_start(IlpModel model, const Instance& inst, const Matching& m);

// Elevates the branching priority of the dummy (y/yp) or threshold (z)
// variables; kNone resets all priorities.
[[nodiscard]] IlpModel set_priorities(IlpModel model, PriorityScheme scheme);

}  // namespace stmatch

#endif  // STMATCH_ILP_BUILD_HPP_
