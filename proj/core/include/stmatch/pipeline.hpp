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

#ifndef STMATCH_PIPELINE_HPP_
#define STMATCH_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "stmatch/ilp_build.hpp"
#include "stmatch/solve.hpp"
#include "stmatch/stability.hpp"

namespace stmatch {

// Process exit codes shared by the command-line tool.
inline constexpr int kExitOptimal = 0;
inline constexpr int kExitTimeout = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitError = 4;

struct PipelineOptions {
  std::string model = "m1";
  Objective objective = Objective::kSize;
  std::optional<double> threshold;  // weighted instances: drop pairs below it
  bool preprocess = false;
  int warm_start = 0;  // best-of-k rounds; 0 disables warm starting
  PriorityScheme priorities = PriorityScheme::kNone;
  bool stability = true;
  double time_limit_s = 60.0;  // covers read + build + solve together
  std::uint64_t seed = 1;
  Backend backend;
};

// One experiment row. `errored` rows carry the failing stage and message;
// objective is present only when a matching was extracted, and is always
// recomputed from that matching rather than trusted from the solver.
struct PipelineReport {
  std::string instance_label;
  std::string preset;
  SolveStatus status = SolveStatus::kInfeasible;
  bool errored = false;
  std::string error_stage;
  std::string error_message;
  std::optional<double> objective;
  double wall_time = 0.0;
  ModelStats stats;
  std::size_t removed_pairs = 0;
  std::optional<double> warm_value;
  std::optional<Matching> matching;
};

// Output of the model-building stages (read, threshold, preprocess, warm
// start, build), reused by the export command.
struct PreparedModel {
  Instance inst;
  GrpInstance grp;  // meaningful only when have_grp is set
  bool have_grp = false;
  std::size_t removed_pairs = 0;
  std::optional<Matching> warm;
  std::optional<double> warm_value;
  IlpModel model;
};

// Runs the stages up to and including the model build. Throws on failure;
// when `stage` is given it holds the name of the stage that was running.
PreparedModel prepare_model(const std::string& instance_path, const PipelineOptions& opt,
                            std::string* stage = nullptr);

// Full run on one instance file: read, optional threshold, optional
// preprocessing, optional warm start, model build, solve, extraction and
// verification. Never throws; failures come back as errored reports.
PipelineReport run_pipeline(const std::string& instance_path, const PipelineOptions& opt);

Objective parse_objective(const std::string& s);
PriorityScheme parse_priority_scheme(const std::string& s);

int exit_code_for(const PipelineReport& report);

// Applies manifest/CLI-style option tokens (e.g. "--objective weight",
// "--preprocess") onto opt. Throws ValidationError on unknown or malformed
// tokens. Returns the number of tokens consumed starting at `begin`.
void parse_row_flags(const std::vector<std::string>& tokens, std::size_t begin,
                     PipelineOptions& opt);

struct BenchOptions {
  PipelineOptions defaults;
  int workers = 1;
};

// Runs every manifest row ("<instance> <preset> [flags...]"; '#' comments and
// blank lines skipped; relative paths resolved against the manifest's
// directory) and streams one CSV row per run plus per-preset aggregate
// comment lines. Row failures are reported inline and do not stop the run.
// Returns a process exit code.
int run_bench(const std::string& manifest_path, const BenchOptions& opt, std::ostream& out);

// CSV column header shared by run_bench and the text report.
extern const char kBenchCsvHeader[];

// One CSV line in the kBenchCsvHeader schema (no trailing newline).
std::string to_csv_row(const PipelineReport& report);

}  // namespace stmatch

#endif  // STMATCH_PIPELINE_HPP_
