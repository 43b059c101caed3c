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

#ifndef STMATCH_LP_FORMAT_HPP_
#define STMATCH_LP_FORMAT_HPP_

#include <map>
#include <string>

#include "stmatch/ilp_model.hpp"

namespace stmatch {

// CPLEX-style LP text: Maximize / Subject To / Bounds / Binaries / Generals /
// End, one constraint per line, unit coefficients omitted.
std::string to_lp_string(const IlpModel& model);
void export_lp(const IlpModel& model, const std::string& path);

// Strict reader for the dialect written above. Every variable must be
// declared in exactly one of the Binaries and Generals sections.
IlpModel parse_lp(const std::string& text);

// Warm-start hints, one "<name> <value>" line per warm-started variable.
std::string to_warm_string(const IlpModel& model);

// Solution text: one "<name> <value>" line per variable. Blank lines and
// lines starting with '#' are skipped.
std::map<std::string, double> parse_solution(const std::string& text);

}  // namespace stmatch

#endif  // STMATCH_LP_FORMAT_HPP_
