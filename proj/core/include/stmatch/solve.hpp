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

#ifndef STMATCH_SOLVE_HPP_
#define STMATCH_SOLVE_HPP_

#include <map>
#include <string>

#include "stmatch/ilp_model.hpp"
#include "stmatch/instance.hpp"

namespace stmatch {

enum class SolveStatus { kOptimal, kFeasible, kInfeasible, kTimeout };

const char* to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  std::map<std::string, double> assignment;  // empty when no point was found
  double wall_time = 0.0;
  ModelStats stats;
  ModelMeta meta;
};

struct Backend {
  enum class Kind { kBuiltin, kExternal };
  Kind kind = Kind::kBuiltin;
  std::string command;  // external wrapper invocation path

  // "builtin" or "cmd:<path>".
  static Backend parse(const std::string& spec);
};

// Solves the model. The builtin backend runs an exact depth-first branch
// and bound specialized to the x/y/yp/z structure (integer constraint data
// required); the external backend round-trips through an LP file and a
// user-supplied wrapper command. Optimal results are re-verified against
// every constraint before being reported. Timeouts surface the incumbent
// when one exists.
SolveResult solve(const IlpModel& model, const Backend& backend, double time_limit_s);

// Pairs with x value above 0.5, validated against the instance and, when
// the model carried stability rows, against the stability verifier.
// Requires an optimal or feasible result.
Matching extract_matching(const Instance& inst, const SolveResult& result);

// Same extraction and validation for any result carrying an assignment,
// regardless of status; used to surface timeout incumbents.
Matching extract_matching_relaxed(const Instance& inst, const SolveResult& result);

}  // namespace stmatch

#endif  // STMATCH_SOLVE_HPP_
