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

#ifndef STMATCH_TESTS_UNIT_TEST_UTIL_HPP_
#define STMATCH_TESTS_UNIT_TEST_UTIL_HPP_

#include <string>
#include <utility>
#include <vector>

#include "stmatch/instance.hpp"

namespace stmatch::testutil {

inline std::string data_path(const std::string& name) {
  return std::string(STMATCH_TEST_DATA_DIR) + "/" + name;
}

inline Instance load_instance(const std::string& name) {
  return parse_instance(read_text_file(data_path(name)));
}

inline GrpInstance load_grp(const std::string& name) {
  return parse_grp(read_text_file(data_path(name)));
}

inline Matching matching_of(std::vector<std::pair<Index, Index>> pairs) {
  return make_matching(std::move(pairs));
}

}  // namespace stmatch::testutil

#endif  // STMATCH_TESTS_UNIT_TEST_UTIL_HPP_
