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

#include "stmatch/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "stmatch/bridge.hpp"
#include "stmatch/error.hpp"
#include "stmatch/stability.hpp"

namespace stmatch {
namespace {

using Clock = std::chrono::steady_clock;

// Thrown internally when the deadline passes; never escapes solve().
struct DeadlineReached {};

long long div_floor(long long a, long long b) {
  long long q = a / b;
  long long r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

long long div_ceil(long long a, long long b) { return -div_floor(-a, b); }

long long to_integer(double v, const std::string& what) {
  double r = std::round(v);
  if (std::abs(v - r) > 1e-9 || std::abs(r) > 1e15) {
    throw ValidationError("builtin backend requires integer " + what + ", got " +
                          std::to_string(v));
  }
  return static_cast<long long>(r);
}

struct CompiledCon {
  std::vector<int> vars;
  std::vector<long long> coefs;
  Rel rel = Rel::kLe;
  long long rhs = 0;
};

// Exact branch and bound over the integer models produced by the builders.
// Branches row by row on the x variables (every partner in list order, then
// the unmatched branch); dummy and threshold variables are pinned by bounds
// propagation once the x side is decided, so they are rarely enumerated.
class BranchAndBound {
 public:
  BranchAndBound(const IlpModel& model, double time_limit_s)
      : model_(model), deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                    std::chrono::duration<double>(time_limit_s))) {
    compile();
  }

  SolveResult run() {
    SolveResult result;
    result.meta = model_.meta;
    seed_incumbent_from_warm();
    bool timed_out = false;
    try {
      if (propagate()) {
        dfs();
      } else {
        drain_queue();
      }
    } catch (const DeadlineReached&) {
      timed_out = true;
    }
    if (!have_best_) {
      result.status = timed_out ? SolveStatus::kTimeout : SolveStatus::kInfeasible;
      return result;
    }
    std::vector<double> values(static_cast<size_t>(num_vars_));
    for (int v = 0; v < num_vars_; ++v) {
      values[static_cast<size_t>(v)] = static_cast<double>(best_assign_[static_cast<size_t>(v)]);
      result.assignment[model_.vars[static_cast<size_t>(v)].name] =
          values[static_cast<size_t>(v)];
    }
    result.objective = best_val_;
    if (timed_out) {
      result.status = SolveStatus::kTimeout;
      return result;
    }
    int bad = first_violated(model_, values);
    if (bad >= 0) {
      throw IntegrityError("builtin solver accepted an assignment violating " +
                           model_.cons[static_cast<size_t>(bad)].name);
    }
    result.status = SolveStatus::kOptimal;
    return result;
  }

 private:
  void compile() {
    num_vars_ = static_cast<int>(model_.vars.size());
    lb_.assign(static_cast<size_t>(num_vars_), 0);
    ub_.assign(static_cast<size_t>(num_vars_), 0);
    obj_.resize(static_cast<size_t>(num_vars_));
    var_cons_.resize(static_cast<size_t>(num_vars_));
    long long max_rhs = 1;
    for (const Constraint& con : model_.cons) {
      max_rhs = std::max(max_rhs, std::abs(to_integer(con.rhs, "right-hand sides")));
    }
    for (int v = 0; v < num_vars_; ++v) {
      const Variable& var = model_.vars[static_cast<size_t>(v)];
      obj_[static_cast<size_t>(v)] = var.obj;
      // Integer variables in the shipped models count assignees, so any
      // feasible value is bounded by the largest right-hand side.
      ub_[static_cast<size_t>(v)] = var.kind == VarKind::kBinary ? 1 : max_rhs;
    }
    cons_.reserve(model_.cons.size());
    for (const Constraint& con : model_.cons) {
      CompiledCon cc;
      cc.rel = con.rel;
      cc.rhs = to_integer(con.rhs, "right-hand sides");
      cc.vars.reserve(con.terms.size());
      cc.coefs.reserve(con.terms.size());
      for (const auto& [v, coef] : con.terms) {
        cc.vars.push_back(v);
        cc.coefs.push_back(to_integer(coef, "coefficients"));
        var_cons_[static_cast<size_t>(v)].push_back(static_cast<int>(cons_.size()));
      }
      cons_.push_back(std::move(cc));
    }
    build_groups();
    in_queue_.assign(cons_.size(), 0);
    for (int c = 0; c < static_cast<int>(cons_.size()); ++c) enqueue(c);
  }

  // Rows of x variables that share an agent on the proposing side form a
  // branching group; at most one of them takes value one.
  void build_groups() {
    std::vector<int> owner;
    in_group_.assign(static_cast<size_t>(num_vars_), 0);
    for (int v = 0; v < num_vars_; ++v) {
      const std::string& name = model_.vars[static_cast<size_t>(v)].name;
      if (name.size() < 2 || name[0] != 'x' || name[1] != '_') continue;
      size_t second = name.find('_', 2);
      if (second == std::string::npos) continue;
      int row = 0;
      for (size_t p = 2; p < second; ++p) row = row * 10 + (name[p] - '0');
      auto it = std::find(owner.begin(), owner.end(), row);
      size_t g;
      if (it == owner.end()) {
        g = owner.size();
        owner.push_back(row);
        groups_.emplace_back();
      } else {
        g = static_cast<size_t>(it - owner.begin());
      }
      groups_[g].push_back(v);
      in_group_[static_cast<size_t>(v)] = 1;
    }
  }

  void enqueue(int c) {
    if (in_queue_[static_cast<size_t>(c)]) return;
    in_queue_[static_cast<size_t>(c)] = 1;
    queue_.push_back(c);
  }

  void drain_queue() {
    for (int c : queue_) in_queue_[static_cast<size_t>(c)] = 0;
    queue_.clear();
  }

  void set_bound(int v, long long lo, long long hi) {
    trail_.push_back({v, lb_[static_cast<size_t>(v)], ub_[static_cast<size_t>(v)]});
    lb_[static_cast<size_t>(v)] = lo;
    ub_[static_cast<size_t>(v)] = hi;
    for (int c : var_cons_[static_cast<size_t>(v)]) enqueue(c);
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      const TrailRec& rec = trail_.back();
      lb_[static_cast<size_t>(rec.var)] = rec.lb;
      ub_[static_cast<size_t>(rec.var)] = rec.ub;
      trail_.pop_back();
    }
  }

  // Bounds consistency to fixpoint. Returns false on a wipeout; the queue is
  // left empty either way.
  bool propagate() {
    while (!queue_.empty()) {
      int c = queue_.front();
      queue_.pop_front();
      in_queue_[static_cast<size_t>(c)] = 0;
      if (!tighten(cons_[static_cast<size_t>(c)])) {
        drain_queue();
        return false;
      }
    }
    return true;
  }

  bool tighten(const CompiledCon& con) {
    bool changed = true;
    while (changed) {
      changed = false;
      long long min_act = 0;
      long long max_act = 0;
      for (size_t k = 0; k < con.vars.size(); ++k) {
        long long a = con.coefs[k];
        long long lo = lb_[static_cast<size_t>(con.vars[k])];
        long long hi = ub_[static_cast<size_t>(con.vars[k])];
        min_act += a > 0 ? a * lo : a * hi;
        max_act += a > 0 ? a * hi : a * lo;
      }
      if (con.rel != Rel::kGe && min_act > con.rhs) return false;
      if (con.rel != Rel::kLe && max_act < con.rhs) return false;
      for (size_t k = 0; k < con.vars.size() && !changed; ++k) {
        int v = con.vars[k];
        long long lo = lb_[static_cast<size_t>(v)];
        long long hi = ub_[static_cast<size_t>(v)];
        if (lo == hi) continue;
        long long a = con.coefs[k];
        long long new_lo = lo;
        long long new_hi = hi;
        if (con.rel != Rel::kGe) {  // a*v <= rhs - min(others)
          long long others = min_act - (a > 0 ? a * lo : a * hi);
          long long room = con.rhs - others;
          if (a > 0) {
            new_hi = std::min(new_hi, div_floor(room, a));
          } else {
            new_lo = std::max(new_lo, div_ceil(room, a));
          }
        }
        if (con.rel != Rel::kLe) {  // a*v >= rhs - max(others)
          long long others = max_act - (a > 0 ? a * hi : a * lo);
          long long need = con.rhs - others;
          if (a > 0) {
            new_lo = std::max(new_lo, div_ceil(need, a));
          } else {
            new_hi = std::min(new_hi, div_floor(need, a));
          }
        }
        if (new_lo > new_hi) return false;
        if (new_lo != lo || new_hi != hi) {
          set_bound(v, new_lo, new_hi);
          changed = true;
        }
      }
    }
    return true;
  }

  double fixed_and_free_bound() const {
    double bound = 0.0;
    for (const auto& group : groups_) {
      bool decided = false;
      for (int v : group) {
        if (lb_[static_cast<size_t>(v)] == 1) decided = true;
      }
      if (decided) continue;
      double best = 0.0;
      for (int v : group) {
        if (ub_[static_cast<size_t>(v)] == 1 && lb_[static_cast<size_t>(v)] == 0) {
          best = std::max(best, obj_[static_cast<size_t>(v)]);
        }
      }
      bound += best;
    }
    for (int v = 0; v < num_vars_; ++v) {
      long long lo = lb_[static_cast<size_t>(v)];
      long long hi = ub_[static_cast<size_t>(v)];
      double c = obj_[static_cast<size_t>(v)];
      if (lo == hi) {
        bound += c * static_cast<double>(lo);
      } else if (!in_group_[static_cast<size_t>(v)]) {
        bound += std::max(c * static_cast<double>(lo), c * static_cast<double>(hi));
      }
      // A free variable inside an undecided group was already covered by the
      // group term; inside a decided group it must end at zero.
    }
    return bound;
  }

  void check_deadline() {
    if ((++nodes_ & 1023) == 0 && Clock::now() >= deadline_) throw DeadlineReached{};
  }

  bool prunable() {
    return have_best_ && fixed_and_free_bound() <= best_val_ + 1e-9;
  }

  int pick_group() const {
    for (int g = 0; g < static_cast<int>(groups_.size()); ++g) {
      bool decided = false;
      bool any_free = false;
      for (int v : groups_[static_cast<size_t>(g)]) {
        if (lb_[static_cast<size_t>(v)] == 1) decided = true;
        if (lb_[static_cast<size_t>(v)] < ub_[static_cast<size_t>(v)]) any_free = true;
      }
      if (!decided && any_free) return g;
    }
    return -1;
  }

  void dfs() {
    check_deadline();
    if (prunable()) return;
    int g = pick_group();
    if (g >= 0) {
      branch_group(groups_[static_cast<size_t>(g)]);
      return;
    }
    for (int v = 0; v < num_vars_; ++v) {
      if (lb_[static_cast<size_t>(v)] < ub_[static_cast<size_t>(v)]) {
        branch_var(v);
        return;
      }
    }
    record_leaf();
  }

  void branch_group(const std::vector<int>& members) {
    for (int v : members) {
      if (lb_[static_cast<size_t>(v)] == ub_[static_cast<size_t>(v)]) continue;
      size_t mark = trail_.size();
      set_bound(v, 1, 1);
      if (propagate()) dfs();
      undo_to(mark);
    }
    size_t mark = trail_.size();
    for (int v : members) {
      if (lb_[static_cast<size_t>(v)] < ub_[static_cast<size_t>(v)]) set_bound(v, 0, 0);
    }
    if (propagate()) dfs();
    undo_to(mark);
  }

  void branch_var(int v) {
    long long lo = lb_[static_cast<size_t>(v)];
    long long hi = ub_[static_cast<size_t>(v)];
    for (long long val = lo; val <= hi; ++val) {
      size_t mark = trail_.size();
      set_bound(v, val, val);
      if (propagate()) dfs();
      undo_to(mark);
    }
  }

  void record_leaf() {
    // Propagation keeps every popped constraint consistent, but a final exact
    // pass is cheap insurance against a bookkeeping slip.
    for (const CompiledCon& con : cons_) {
      long long act = 0;
      for (size_t k = 0; k < con.vars.size(); ++k) {
        act += con.coefs[k] * lb_[static_cast<size_t>(con.vars[k])];
      }
      if (con.rel == Rel::kLe && act > con.rhs) return;
      if (con.rel == Rel::kGe && act < con.rhs) return;
      if (con.rel == Rel::kEq && act != con.rhs) return;
    }
    double value = 0.0;
    for (int v = 0; v < num_vars_; ++v) {
      value += obj_[static_cast<size_t>(v)] * static_cast<double>(lb_[static_cast<size_t>(v)]);
    }
    if (!have_best_ || value > best_val_ + 1e-9) {
      have_best_ = true;
      best_val_ = value;
      best_assign_ = lb_;
    }
  }

  void seed_incumbent_from_warm() {
    std::vector<long long> warm(static_cast<size_t>(num_vars_));
    for (int v = 0; v < num_vars_; ++v) {
      const Variable& var = model_.vars[static_cast<size_t>(v)];
      if (!var.warm.has_value()) return;
      long long val = to_integer(*var.warm, "warm values");
      if (val < lb_[static_cast<size_t>(v)] || val > ub_[static_cast<size_t>(v)]) return;
      warm[static_cast<size_t>(v)] = val;
    }
    double value = 0.0;
    for (const CompiledCon& con : cons_) {
      long long act = 0;
      for (size_t k = 0; k < con.vars.size(); ++k) {
        act += con.coefs[k] * warm[static_cast<size_t>(con.vars[k])];
      }
      if (con.rel == Rel::kLe && act > con.rhs) return;
      if (con.rel == Rel::kGe && act < con.rhs) return;
      if (con.rel == Rel::kEq && act != con.rhs) return;
    }
    for (int v = 0; v < num_vars_; ++v) {
      value += obj_[static_cast<size_t>(v)] * static_cast<double>(warm[static_cast<size_t>(v)]);
    }
    have_best_ = true;
    best_val_ = value;
    best_assign_ = std::move(warm);
  }

  struct TrailRec {
    int var;
    long long lb;
    long long ub;
  };

  const IlpModel& model_;
  Clock::time_point deadline_;
  int num_vars_ = 0;
  std::vector<long long> lb_;
  std::vector<long long> ub_;
  std::vector<double> obj_;
  std::vector<CompiledCon> cons_;
  std::vector<std::vector<int>> var_cons_;
  std::vector<std::vector<int>> groups_;
  std::vector<char> in_group_;
  std::deque<int> queue_;
  std::vector<char> in_queue_;
  std::vector<TrailRec> trail_;
  std::vector<long long> best_assign_;
  double best_val_ = 0.0;
  bool have_best_ = false;
  unsigned long long nodes_ = 0;
};

Matching extract_checked(const Instance& inst, const SolveResult& result) {
  std::vector<std::pair<Index, Index>> pairs;
  for (const auto& [name, value] : result.assignment) {
    if (name.size() < 2 || name[0] != 'x' || name[1] != '_') continue;
    if (std::abs(value - std::round(value)) > 1e-4) {
      throw IntegrityError("fractional value for " + name + " in a solver result");
    }
    if (value < 0.5) continue;
    size_t second = name.find('_', 2);
    Index i = 0;
    Index j = 0;
    for (size_t p = 2; p < second; ++p) i = i * 10 + (name[p] - '0');
    for (size_t p = second + 1; p < name.size(); ++p) j = j * 10 + (name[p] - '0');
    pairs.emplace_back(i, j);
  }
  Matching m;
  try {
    m = make_matching(std::move(pairs));
    check_matching(inst, m);
  } catch (const ValidationError& e) {
    throw IntegrityError("solver result is not a valid matching: " + std::string(e.what()));
  }
  if (result.meta.include_stability) {
    BlockingReport report = blocking_pairs(inst, m);
    if (!report.stable) {
      throw IntegrityError("solver result admits a blocking pair (" +
                           std::to_string(report.pairs.front().first) + "," +
                           std::to_string(report.pairs.front().second) + ")");
    }
  }
  return m;
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kFeasible:
      return "feasible";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kTimeout:
      return "timeout";
  }
  return "unknown";
}

Backend Backend::parse(const std::string& spec) {
  Backend b;
  if (spec == "builtin") {
    b.kind = Kind::kBuiltin;
    return b;
  }
  if (spec.rfind("cmd:", 0) == 0) {
    b.kind = Kind::kExternal;
    b.command = spec.substr(4);
    if (b.command.empty()) throw ValidationError("backend 'cmd:' needs a command path");
    return b;
  }
  throw ValidationError("unknown backend '" + spec + "', expected builtin or cmd:<path>");
}

SolveResult solve(const IlpModel& model, const Backend& backend, double time_limit_s) {
  if (time_limit_s <= 0.0) throw ValidationError("time limit must be positive");
  auto start = Clock::now();
  SolveResult result;
  if (backend.kind == Backend::Kind::kBuiltin) {
    BranchAndBound solver(model, time_limit_s);
    result = solver.run();
  } else {
    result = solve_external(model, backend.command, time_limit_s);
  }
  result.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  result.stats = model_stats(model);
  result.meta = model.meta;
  return result;
}

Matching extract_matching(const Instance& inst, const SolveResult& result) {
  if (result.status != SolveStatus::kOptimal && result.status != SolveStatus::kFeasible) {
    throw ValidationError("cannot extract a matching from a result with status " +
                          std::string(to_string(result.status)));
  }
  return extract_checked(inst, result);
}

Matching extract_matching_relaxed(const Instance& inst, const SolveResult& result) {
  if (result.assignment.empty()) {
    throw ValidationError("cannot extract a matching from an empty assignment");
  }
  return extract_checked(inst, result);
}

}  // namespace stmatch
