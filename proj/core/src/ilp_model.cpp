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

#include "stmatch/ilp_model.hpp"

#include <cmath>

namespace stmatch {

int IlpModel::add_var(std::string name, VarKind kind) {
  auto [it, inserted] = by_name_.try_emplace(name, static_cast<int>(vars.size()));
  if (!inserted) throw ValidationError("duplicate variable name " + name);
  Variable v;
  v.name = std::move(name);
  v.kind = kind;
  vars.push_back(std::move(v));
  return it->second;
}

int IlpModel::var_id(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? -1 : it->second;
}

void IlpModel::add_con(std::string name, std::vector<std::pair<int, double>> terms,
                       Rel rel, double rhs) {
  Constraint con;
  con.name = std::move(name);
  con.rel = rel;
  con.rhs = rhs;
  con.terms.reserve(terms.size());
  for (const auto& [var, coef] : terms) {
    if (var < 0 || var >= static_cast<int>(vars.size())) {
      throw ValidationError("constraint " + con.name + " references unknown variable");
    }
    if (coef == 0.0) continue;
    bool merged = false;
    for (auto& t : con.terms) {
      if (t.first == var) {
        t.second += coef;
        merged = true;
        break;
      }
    }
    if (!merged) con.terms.emplace_back(var, coef);
  }
  // A merge may cancel to zero; such terms are not incidences.
  std::erase_if(con.terms, [](const auto& t) { return t.second == 0.0; });
  cons.push_back(std::move(con));
}

ModelStats model_stats(const IlpModel& model) {
  ModelStats s;
  s.variables = static_cast<long long>(model.vars.size());
  s.constraints = static_cast<long long>(model.cons.size());
  for (const Constraint& c : model.cons) {
    s.nonzeros += static_cast<long long>(c.terms.size());
  }
  return s;
}

long long count_constraints(const IlpModel& model, std::string_view prefix) {
  long long n = 0;
  for (const Constraint& c : model.cons) {
    if (c.name.size() >= prefix.size() &&
        std::string_view(c.name).substr(0, prefix.size()) == prefix) {
      ++n;
    }
  }
  return n;
}

bool constraint_holds(const Constraint& con, const std::vector<double>& values,
                      double tol) {
  double lhs = 0.0;
  for (const auto& [var, coef] : con.terms) {
    lhs += coef * values[static_cast<std::size_t>(var)];
  }
  switch (con.rel) {
    case Rel::kLe:
      return lhs <= con.rhs + tol;
    case Rel::kGe:
      return lhs >= con.rhs - tol;
    default:
      return std::abs(lhs - con.rhs) <= tol;
  }
}

int first_violated(const IlpModel& model, const std::vector<double>& values,
                   double tol) {
  for (std::size_t c = 0; c < model.cons.size(); ++c) {
    if (!constraint_holds(model.cons[c], values, tol)) return static_cast<int>(c);
  }
  return -1;
}

double objective_value(const IlpModel& model, const std::vector<double>& values) {
  double total = 0.0;
  for (std::size_t v = 0; v < model.vars.size(); ++v) {
    total += model.vars[v].obj * values[v];
  }
  return total;
}

}  // namespace stmatch
