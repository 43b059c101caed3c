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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stmatch/bridge.hpp"
#include "stmatch/error.hpp"
#include "stmatch/generate.hpp"
#include "stmatch/heuristics.hpp"
#include "stmatch/ilp_build.hpp"
#include "stmatch/instance.hpp"
#include "stmatch/lp_format.hpp"
#include "stmatch/pipeline.hpp"
#include "stmatch/preprocess.hpp"
#include "stmatch/solve.hpp"
#include "stmatch/stability.hpp"

namespace {

using namespace stmatch;

// Raw flag values; converted to PipelineOptions after parsing so that CLI11
// only deals in plain strings and numbers.
struct RawOptions {
  std::string model = "m1";
  std::string objective = "size";
  double threshold = 0.0;
  bool have_threshold = false;
  bool preprocess = false;
  int warm_start = 0;
  std::string priorities = "none";
  bool no_stability = false;
  double time_limit = 60.0;
  std::uint64_t seed = 1;
  std::string backend = "builtin";
};

void add_shared_flags(CLI::App* cmd, RawOptions& raw, bool with_model) {
  if (with_model) {
    cmd->add_option("--model", raw.model, "Model preset (m1..m6 for one-to-one, n1..n12 for capacitated)")
        ->capture_default_str();
  }
  cmd->add_option("--objective", raw.objective, "size or weight")->capture_default_str();
  cmd->add_option("--threshold", raw.threshold,
                  "Drop weighted pairs below this value before deriving preferences")
      ->each([&raw](const std::string&) { raw.have_threshold = true; });
  cmd->add_flag("--preprocess", raw.preprocess, "Shrink the instance before building the model");
  cmd->add_option("--warm-start", raw.warm_start,
                  "Seed the solver with the best of k randomized constructions (0 = off)")
      ->capture_default_str();
  cmd->add_option("--priorities", raw.priorities, "Branching priority hint: none, dummy or z")
      ->capture_default_str();
  cmd->add_flag("--no-stability", raw.no_stability, "Drop stability rows from the model");
  cmd->add_option("--time-limit", raw.time_limit, "Wall-clock budget in seconds, build included")
      ->capture_default_str();
  cmd->add_option("--seed", raw.seed, "Seed for tie breaking and warm starts")
      ->capture_default_str();
  cmd->add_option("--backend", raw.backend, "builtin or cmd:<wrapper-path>")
      ->capture_default_str();
}

PipelineOptions to_options(const RawOptions& raw) {
  PipelineOptions opt;
  opt.model = raw.model;
  opt.objective = parse_objective(raw.objective);
  if (raw.have_threshold) opt.threshold = raw.threshold;
  opt.preprocess = raw.preprocess;
  opt.warm_start = raw.warm_start;
  opt.priorities = parse_priority_scheme(raw.priorities);
  opt.stability = !raw.no_stability;
  opt.time_limit_s = raw.time_limit;
  opt.seed = raw.seed;
  opt.backend = Backend::parse(raw.backend);
  return opt;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_text_file(path, content);
  }
}

int do_solve(const std::string& path, const RawOptions& raw, const std::string& format) {
  PipelineOptions opt = to_options(raw);
  PipelineReport rep = run_pipeline(path, opt);
  if (format == "csv") {
    std::cout << kBenchCsvHeader << "\n" << to_csv_row(rep) << "\n";
    if (rep.errored) {
      std::cerr << "error at " << rep.error_stage << ": " << rep.error_message << "\n";
    }
    return exit_code_for(rep);
  }
  if (format != "text") {
    std::cerr << "error: unknown format '" << format << "', expected text or csv\n";
    return kExitError;
  }
  if (rep.errored) {
    std::cerr << "error at " << rep.error_stage << ": " << rep.error_message << "\n";
    return kExitError;
  }
  std::cout << "status " << to_string(rep.status) << "\n";
  if (rep.objective.has_value()) {
    std::cout << "objective " << format_double(*rep.objective) << "\n";
  }
  if (rep.matching.has_value()) {
    std::cout << "size " << rep.matching->pairs.size() << "\n";
  }
  std::cout << "wall_time_s " << format_double(rep.wall_time) << "\n";
  std::cout << "variables " << rep.stats.variables << "\n";
  std::cout << "constraints " << rep.stats.constraints << "\n";
  std::cout << "nonzeros " << rep.stats.nonzeros << "\n";
  std::cout << "removed_pairs " << rep.removed_pairs << "\n";
  if (rep.warm_value.has_value()) {
    std::cout << "warm_value " << format_double(*rep.warm_value) << "\n";
  }
  if (rep.matching.has_value()) {
    std::cout << "matching\n" << serialize(*rep.matching);
  }
  return exit_code_for(rep);
}

int do_preprocess(const std::string& path, const RawOptions& raw, const std::string& out_path) {
  Instance inst;
  std::string text = read_text_file(path);
  if (sniff_kind(text) == InstanceKind::kGrp) {
    GrpInstance grp = parse_grp(text);
    if (raw.have_threshold) grp = apply_threshold(grp, raw.threshold);
    inst = derive_preferences(grp);
  } else {
    if (raw.have_threshold) {
      throw ValidationError("--threshold needs a weighted (.grp) instance");
    }
    inst = parse_instance(text);
  }
  auto [reduced, removals] = reduce_fixpoint(inst);
  for (const RemovalSet::Entry& entry : removals.entries) {
    std::cerr << "removed " << entry.row << " " << entry.col << " (" << entry.rule << ")\n";
  }
  std::cerr << "removed_pairs " << removals.entries.size() << "\n";
  write_output(out_path, serialize(reduced));
  return kExitOptimal;
}

int do_verify(const std::string& inst_path, const std::string& matching_path,
              const RawOptions& raw) {
  std::string text = read_text_file(inst_path);
  Instance inst;
  GrpInstance grp;
  bool have_grp = false;
  if (sniff_kind(text) == InstanceKind::kGrp) {
    grp = parse_grp(text);
    if (raw.have_threshold) grp = apply_threshold(grp, raw.threshold);
    inst = derive_preferences(grp);
    have_grp = true;
  } else {
    inst = parse_instance(text);
  }
  Matching m = parse_matching(read_text_file(matching_path));
  check_matching(inst, m);
  std::cout << "size " << m.pairs.size() << "\n";
  if (have_grp) {
    std::cout << "weight " << format_double(matching_value(inst, m, Objective::kWeight, &grp))
              << "\n";
  }
  BlockingReport report = blocking_pairs(inst, m);
  if (report.stable) {
    std::cout << "stable\n";
    return kExitOptimal;
  }
  std::cout << "unstable\n";
  for (const auto& [i, j] : report.pairs) {
    std::cout << "blocking " << i << " " << j << "\n";
  }
  return kExitInfeasible;
}

int do_export_lp(const std::string& path, const RawOptions& raw, const std::string& out_path) {
  PipelineOptions opt = to_options(raw);
  PreparedModel prep = prepare_model(path, opt);
  write_output(out_path, to_lp_string(prep.model));
  std::string warm = to_warm_string(prep.model);
  if (!warm.empty() && !out_path.empty() && out_path != "-") {
    std::string mst_path = out_path;
    size_t dot = mst_path.find_last_of('.');
    if (dot != std::string::npos && mst_path.find('/', dot) == std::string::npos) {
      mst_path.resize(dot);
    }
    write_text_file(mst_path + ".mst", warm);
  }
  return kExitOptimal;
}

struct GenerateArgs {
  std::string input;
  Index n1 = 0;
  Index n2 = 0;
  std::string list_len;
  double tie_density = 0.0;
  int posts = 0;
  int master_grades = 0;
  double skew = 1.0;
  int kappa = 0;
  std::uint64_t seed = 1;
  std::string out_path;
};

std::pair<int, int> parse_list_len(const std::string& s, int fallback_lo, int fallback_hi) {
  if (s.empty()) return {fallback_lo, fallback_hi};
  size_t dash = s.find('-');
  try {
    if (dash == std::string::npos) {
      int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1))};
  } catch (const std::exception&) {
    throw ValidationError("bad --list-len '" + s + "', expected N or LO-HI");
  }
}

int do_generate(const GenerateArgs& args) {
  if (args.kappa > 0) {
    if (args.input.empty()) {
      throw ValidationError("--kappa scaling needs an input .grp instance");
    }
    GrpInstance grp = parse_grp(read_text_file(args.input));
    GrpInstance big = augment_grp(grp, args.kappa, args.seed);
    write_output(args.out_path, serialize(big));
    return kExitOptimal;
  }
  if (!args.input.empty()) {
    throw ValidationError("an input instance is only used with --kappa");
  }
  if (args.posts > 0) {
    HrtGenParams p;
    p.n_doctors = args.n1;
    p.n_hospitals = args.n2;
    p.n_posts = args.posts;
    auto [lo, hi] = parse_list_len(args.list_len, 5, 6);
    p.list_min = lo;
    p.list_max = hi;
    p.tie_density_hospitals = args.tie_density;
    if (args.master_grades > 0) {
      p.master = MasterListParams{args.master_grades, args.skew};
    }
    p.seed = args.seed;
    write_output(args.out_path, serialize(gen_hrt(p)));
    return kExitOptimal;
  }
  SmtiGenParams p;
  p.n1 = args.n1;
  p.n2 = args.n2;
  auto [lo, hi] = parse_list_len(args.list_len, args.n2, args.n2);
  p.list_min = lo;
  p.list_max = hi;
  p.tie_density_row = args.tie_density;
  p.tie_density_col = args.tie_density;
  p.seed = args.seed;
  write_output(args.out_path, serialize(gen_smti(p)));
  return kExitOptimal;
}

int do_bench(const std::string& manifest, const RawOptions& raw, int workers) {
  BenchOptions opt;
  opt.defaults = to_options(raw);
  opt.workers = workers;
  return run_bench(manifest, opt, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable matching models, solvers and experiment harness"};
  app.require_subcommand(1);
  int rc = 0;

  RawOptions solve_raw;
  std::string solve_path;
  std::string solve_format = "text";
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one instance to optimality");
  solve_cmd->add_option("instance", solve_path, "Instance file")->required();
  add_shared_flags(solve_cmd, solve_raw, true);
  solve_cmd->add_option("--format", solve_format, "Report format: text or csv")
      ->capture_default_str();
  solve_cmd->callback([&]() { rc = do_solve(solve_path, solve_raw, solve_format); });

  RawOptions pre_raw;
  std::string pre_path;
  std::string pre_out = "-";
  CLI::App* pre_cmd = app.add_subcommand("preprocess", "Remove pairs no stable matching can use");
  pre_cmd->add_option("instance", pre_path, "Instance file")->required();
  pre_cmd->add_option("-o,--output", pre_out, "Reduced instance file ('-' = stdout)")
      ->capture_default_str();
  pre_cmd->add_option("--threshold", pre_raw.threshold, "Weighted instances: drop pairs below")
      ->each([&pre_raw](const std::string&) { pre_raw.have_threshold = true; });
  pre_cmd->callback([&]() { rc = do_preprocess(pre_path, pre_raw, pre_out); });

  GenerateArgs gen_args;
  CLI::App* gen_cmd = app.add_subcommand("generate", "Write a random instance");
  gen_cmd->add_option("input", gen_args.input, "Weighted instance to scale (with --kappa)");
  gen_cmd->add_option("--n1", gen_args.n1, "Row agents (doctors)");
  gen_cmd->add_option("--n2", gen_args.n2, "Column agents (hospitals)");
  gen_cmd->add_option("--list-len", gen_args.list_len, "List length N or range LO-HI");
  gen_cmd->add_option("--tie-density", gen_args.tie_density, "Adjacent-merge probability")
      ->capture_default_str();
  gen_cmd->add_option("--posts", gen_args.posts, "Total capacity (turns on capacitated output)");
  gen_cmd->add_option("--master-grades", gen_args.master_grades,
                      "Grade range for a master-list instance");
  gen_cmd->add_option("--skew", gen_args.skew, "How much more common the best grade is")
      ->capture_default_str();
  gen_cmd->add_option("--kappa", gen_args.kappa, "Copy factor for scaling a weighted instance");
  gen_cmd->add_option("--seed", gen_args.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("-o,--output", gen_args.out_path, "Output file ('-' = stdout)");
  gen_cmd->callback([&]() { rc = do_generate(gen_args); });

  RawOptions verify_raw;
  std::string verify_inst;
  std::string verify_matching;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check a matching file for stability");
  verify_cmd->add_option("instance", verify_inst, "Instance file")->required();
  verify_cmd->add_option("matching", verify_matching, "Matching file, one 'row col' per line")
      ->required();
  verify_cmd->add_option("--threshold", verify_raw.threshold,
                         "Weighted instances: drop pairs below")
      ->each([&verify_raw](const std::string&) { verify_raw.have_threshold = true; });
  verify_cmd->callback([&]() { rc = do_verify(verify_inst, verify_matching, verify_raw); });

  RawOptions export_raw;
  std::string export_path;
  std::string export_out = "-";
  CLI::App* export_cmd = app.add_subcommand("export-lp", "Write the model as an LP file");
  export_cmd->add_option("instance", export_path, "Instance file")->required();
  add_shared_flags(export_cmd, export_raw, true);
  export_cmd->add_option("-o,--output", export_out, "LP file ('-' = stdout)")
      ->capture_default_str();
  export_cmd->callback([&]() { rc = do_export_lp(export_path, export_raw, export_out); });

  RawOptions bench_raw;
  std::string bench_manifest;
  int bench_workers = 1;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a manifest of solves, emit CSV");
  bench_cmd->add_option("manifest", bench_manifest, "Rows: <instance> <preset> [flags...]")
      ->required();
  add_shared_flags(bench_cmd, bench_raw, false);
  bench_cmd->add_option("--workers", bench_workers, "Parallel rows (default 1)")
      ->capture_default_str();
  bench_cmd->callback([&]() { rc = do_bench(bench_manifest, bench_raw, bench_workers); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return rc;
}
