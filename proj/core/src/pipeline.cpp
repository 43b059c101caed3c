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

#include "stmatch/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <thread>
#include <vector>

#include "stmatch/error.hpp"
#include "stmatch/heuristics.hpp"
#include "stmatch/preprocess.hpp"

namespace stmatch {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

double parse_real(const std::string& s, const char* what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ValidationError(std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ValidationError(std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  return toks;
}

struct BenchRow {
  std::string label;
  std::string path;
  PipelineOptions options;
};

}  // namespace

const char kBenchCsvHeader[] =
    "instance,preset,status,objective,wall_time_s,variables,constraints,nonzeros,"
    "removed_pairs,warm_value";

Objective parse_objective(const std::string& s) {
  if (s == "size") return Objective::kSize;
  if (s == "weight") return Objective::kWeight;
  throw ValidationError("unknown objective '" + s + "', expected size or weight");
}

PriorityScheme parse_priority_scheme(const std::string& s) {
  if (s == "none") return PriorityScheme::kNone;
  if (s == "dummy") return PriorityScheme::kDummy;
  if (s == "z") return PriorityScheme::kZ;
  throw ValidationError("unknown priority scheme '" + s + "', expected none, dummy or z");
}

PreparedModel prepare_model(const std::string& instance_path, const PipelineOptions& opt,
                            std::string* stage_out) {
  std::string local_stage;
  std::string& stage = stage_out != nullptr ? *stage_out : local_stage;
  stage = "read";
  PreparedModel out;
  std::string text = read_text_file(instance_path);
  if (sniff_kind(text) == InstanceKind::kGrp) {
    out.grp = parse_grp(text);
    if (opt.threshold.has_value()) {
      stage = "threshold";
      out.grp = apply_threshold(out.grp, *opt.threshold);
    }
    out.inst = derive_preferences(out.grp);
    out.have_grp = true;
  } else {
    if (opt.threshold.has_value()) {
      throw ValidationError("--threshold needs a weighted (.grp) instance");
    }
    out.inst = parse_instance(text);
  }
  if (opt.objective == Objective::kWeight && !out.have_grp) {
    throw ValidationError("the weight objective needs a weighted (.grp) instance");
  }
  const GrpInstance* grp_ptr = out.have_grp ? &out.grp : nullptr;

  if (opt.preprocess) {
    stage = "preprocess";
    auto [reduced, removals] = reduce_fixpoint(out.inst);
    out.inst = std::move(reduced);
    out.removed_pairs = removals.pairs().size();
  }

  if (opt.warm_start >= 1) {
    stage = "warm-start";
    out.warm = best_of_k(out.inst, opt.objective, opt.warm_start, opt.seed, grp_ptr);
    out.warm_value = matching_value(out.inst, *out.warm, opt.objective, grp_ptr);
  }

  stage = "build";
  ModelConfig cfg = ModelConfig::preset(opt.model);
  cfg.objective = opt.objective;
  cfg.include_stability = opt.stability;
  out.model = cfg.problem == Problem::kHrt ? build_hrt_model(out.inst, cfg)
                                           : build_smti_model(out.inst, grp_ptr, cfg);
  if (out.warm.has_value()) {
    out.model = attach_warm_start(std::move(out.model), out.inst, *out.warm);
  }
  if (opt.priorities != PriorityScheme::kNone) {
    out.model = set_priorities(std::move(out.model), opt.priorities);
  }
  return out;
}

PipelineReport run_pipeline(const std::string& instance_path, const PipelineOptions& opt) {
  PipelineReport rep;
  rep.instance_label = instance_path;
  rep.preset = opt.model;
  auto start = Clock::now();
  std::string stage = "read";
  try {
    PreparedModel prep = prepare_model(instance_path, opt, &stage);
    rep.removed_pairs = prep.removed_pairs;
    rep.warm_value = prep.warm_value;
    rep.stats = model_stats(prep.model);
    const GrpInstance* grp_ptr = prep.have_grp ? &prep.grp : nullptr;

    stage = "solve";
    double remaining = opt.time_limit_s - seconds_since(start);
    if (remaining <= 0.0) {
      // Budget exhausted before the solver ran; the warm matching, when one
      // was built, is still a valid incumbent and is reported as such.
      rep.status = SolveStatus::kTimeout;
      if (prep.warm.has_value()) {
        rep.objective = prep.warm_value;
        rep.matching = *prep.warm;
      }
      rep.wall_time = seconds_since(start);
      return rep;
    }
    SolveResult result = solve(prep.model, opt.backend, remaining);
    rep.status = result.status;

    stage = "extract";
    bool extract_final =
        result.status == SolveStatus::kOptimal || result.status == SolveStatus::kFeasible;
    bool extract_incumbent = result.status == SolveStatus::kTimeout && !result.assignment.empty();
    if (extract_final || extract_incumbent) {
      Matching m = extract_final ? extract_matching(prep.inst, result)
                                 : extract_matching_relaxed(prep.inst, result);
      stage = "verify";
      rep.objective = matching_value(prep.inst, m, opt.objective, grp_ptr);
      rep.matching = std::move(m);
    }
  } catch (const std::exception& e) {
    rep.errored = true;
    rep.error_stage = stage;
    rep.error_message = e.what();
  }
  rep.wall_time = seconds_since(start);
  return rep;
}

int exit_code_for(const PipelineReport& report) {
  if (report.errored) return kExitError;
  switch (report.status) {
    case SolveStatus::kOptimal:
    case SolveStatus::kFeasible:
      return kExitOptimal;
    case SolveStatus::kTimeout:
      return kExitTimeout;
    case SolveStatus::kInfeasible:
      return kExitInfeasible;
  }
  return kExitError;
}

void parse_row_flags(const std::vector<std::string>& tokens, std::size_t begin,
                     PipelineOptions& opt) {
  auto value = [&](std::size_t& k) -> const std::string& {
    if (k + 1 >= tokens.size()) {
      throw ValidationError("flag " + tokens[k] + " needs a value");
    }
    return tokens[++k];
  };
  for (std::size_t k = begin; k < tokens.size(); ++k) {
    const std::string& tok = tokens[k];
    if (tok == "--objective") {
      opt.objective = parse_objective(value(k));
    } else if (tok == "--threshold") {
      opt.threshold = parse_real(value(k), "threshold");
    } else if (tok == "--preprocess") {
      opt.preprocess = true;
    } else if (tok == "--warm-start") {
      opt.warm_start = static_cast<int>(parse_u64(value(k), "warm-start count"));
    } else if (tok == "--priorities") {
      opt.priorities = parse_priority_scheme(value(k));
    } else if (tok == "--no-stability") {
      opt.stability = false;
    } else if (tok == "--time-limit") {
      opt.time_limit_s = parse_real(value(k), "time limit");
    } else if (tok == "--seed") {
      opt.seed = parse_u64(value(k), "seed");
    } else if (tok == "--backend") {
      opt.backend = Backend::parse(value(k));
    } else {
      throw ValidationError("unknown manifest flag '" + tok + "'");
    }
  }
}

std::string to_csv_row(const PipelineReport& r) {
  std::string out;
  out += r.instance_label;
  out += ',';
  out += r.preset;
  out += ',';
  out += r.errored ? "error" : to_string(r.status);
  out += ',';
  if (r.objective.has_value()) out += format_double(*r.objective);
  out += ',';
  out += fixed3(r.wall_time);
  out += ',';
  out += std::to_string(r.stats.variables);
  out += ',';
  out += std::to_string(r.stats.constraints);
  out += ',';
  out += std::to_string(r.stats.nonzeros);
  out += ',';
  out += std::to_string(r.removed_pairs);
  out += ',';
  if (r.warm_value.has_value()) out += format_double(*r.warm_value);
  return out;
}

int run_bench(const std::string& manifest_path, const BenchOptions& opt, std::ostream& out) {
  std::string text = read_text_file(manifest_path);
  std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();

  std::vector<BenchRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> toks = split_tokens(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks.size() < 2) {
      throw ParseError("manifest rows are '<instance> <preset> [flags...]'",
                       static_cast<int>(line_no));
    }
    BenchRow row;
    row.label = toks[0];
    std::filesystem::path p(toks[0]);
    row.path = p.is_absolute() ? p.string() : (base / p).string();
    row.options = opt.defaults;
    row.options.model = toks[1];
    parse_row_flags(toks, 2, row.options);
    rows.push_back(std::move(row));
  }

  std::vector<PipelineReport> reports(rows.size());
  int workers = std::max(1, opt.workers);
  if (workers == 1 || rows.size() <= 1) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      reports[k] = run_pipeline(rows[k].path, rows[k].options);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      while (true) {
        std::size_t k = next.fetch_add(1);
        if (k >= rows.size()) return;
        reports[k] = run_pipeline(rows[k].path, rows[k].options);
      }
    };
    std::vector<std::thread> pool;
    int spawn = std::min<int>(workers, static_cast<int>(rows.size()));
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int t = 0; t < spawn; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  out << kBenchCsvHeader << '\n';
  for (std::size_t k = 0; k < rows.size(); ++k) {
    reports[k].instance_label = rows[k].label;
    out << to_csv_row(reports[k]) << '\n';
    if (reports[k].errored) {
      out << "# error " << rows[k].label << " " << reports[k].preset << ": "
          << reports[k].error_stage << ": " << reports[k].error_message << '\n';
    }
  }

  std::vector<std::string> preset_order;
  for (const BenchRow& row : rows) {
    if (std::find(preset_order.begin(), preset_order.end(), row.options.model) ==
        preset_order.end()) {
      preset_order.push_back(row.options.model);
    }
  }
  for (const std::string& preset : preset_order) {
    std::size_t n = 0;
    std::size_t opt_count = 0;
    double total_time = 0.0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k].options.model != preset) continue;
      ++n;
      total_time += reports[k].wall_time;
      if (!reports[k].errored && reports[k].status == SolveStatus::kOptimal) ++opt_count;
    }
    out << "# preset " << preset << ": opt " << opt_count << "/" << n << ", mean_time "
        << fixed3(n == 0 ? 0.0 : total_time / static_cast<double>(n)) << '\n';
  }
  return kExitOptimal;
}

}  // namespace stmatch
