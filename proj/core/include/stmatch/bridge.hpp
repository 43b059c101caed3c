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

#ifndef STMATCH_BRIDGE_HPP_
#define STMATCH_BRIDGE_HPP_

#include <string>

#include "stmatch/ilp_model.hpp"
#include "stmatch/solve.hpp"

namespace stmatch {

// Round-trips the model through an external solver wrapper:
//
//   <command> <lp-path> <sol-path> <time-limit-seconds>
//
// The model is written in LP format to a fresh temporary directory (plus a
// .mst warm-start file when the model carries warm values). The wrapper
// writes "<variable> <value>" lines to <sol-path>; names the model does not
// know are ignored and missing names default to zero. An empty solution file
// signals infeasibility. The wrapper's output is captured to a log file and
// the process is killed once the deadline passes (status timeout). A nonzero
// exit or a solution that fails verification raises BridgeError.
SolveResult solve_external(const IlpModel& model, const std::string& command,
                           double time_limit_s);

}  // namespace stmatch

#endif  // STMATCH_BRIDGE_HPP_
