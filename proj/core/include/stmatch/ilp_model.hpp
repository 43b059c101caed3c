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

#ifndef STMATCH_ILP_MODEL_HPP_
#define STMATCH_ILP_MODEL_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stmatch/error.hpp"
#include "stmatch/stability.hpp"

namespace stmatch {

enum class VarKind { kBinary, kInteger };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kBinary;
  int priority = 0;  // branching hint: elevated (1) vs default (0)
  std::optional<double> warm;
  double obj = 0.0;
};

enum class Rel { kLe, kGe, kEq };

struct Constraint {
  std::string name;
  std::vector<std::pair<int, double>> terms;  // (var id, coefficient)
  Rel rel = Rel::kLe;
  double rhs = 0.0;
};

// Carried alongside the model so downstream stages know what the solution
// is supposed to mean without re-deriving it from constraint names.
struct ModelMeta {
  bool one_to_many = false;
  bool include_stability = true;
  Objective objective = Objective::kSize;
};

// A mixed 0/1 + integer linear program in maximization form. Variables are
// addressed by dense ids; names follow the x_/y_/yp_/z_ scheme and are the
// contract for LP round trips and solution files.
struct IlpModel {
  std::vector<Variable> vars;
  std::vector<Constraint> cons;
  ModelMeta meta;

  int add_var(std::string name, VarKind kind);
  // -1 when absent.
  int var_id(std::string_view name) const;
  // Merges duplicate variable references (first occurrence keeps its slot)
  // and drops zero coefficients.
  void add_con(std::string name, std::vector<std::pair<int, double>> terms,
               Rel rel, double rhs);
  void set_objective_term(int var, double coef) {
    vars[static_cast<std::size_t>(var)].obj = coef;
  }

 private:
  std::unordered_map<std::string, int> by_name_;
};

struct ModelStats {
  long long variables = 0;
  long long constraints = 0;
  long long nonzeros = 0;  // (constraint, variable) incidences; objective excluded
};

ModelStats model_stats(const IlpModel& model);

// Number of constraints whose name starts with prefix.
long long count_constraints(const IlpModel& model, std::string_view prefix);

// Evaluates one constraint at an assignment indexed by variable id.
bool constraint_holds(const Constraint& con, const std::vector<double>& values,
                      double tol = 1e-6);

// First violated constraint id, or -1 when all hold.
int first_violated(const IlpModel& model, const std::vector<double>& values,
                   double tol = 1e-6);

double objective_value(const IlpModel& model, const std::vector<double>& values);

}  // namespace stmatch

#endif  // STMATCH_ILP_MODEL_HPP_
