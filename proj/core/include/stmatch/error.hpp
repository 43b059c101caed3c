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

#ifndef STMATCH_ERROR_HPP_
#define STMATCH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace stmatch {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (instance files, matchings, LP files, manifests).
// line is 1-based; 0 means "not tied to a specific line".
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A semantically invalid object or argument (inconsistent instance,
// matching that assigns an unacceptable pair, bad model configuration).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Failure while driving an external solver process.
class BridgeError : public Error {
 public:
  using Error::Error;
};

// Exact enumeration gave up because the search exceeded its node budget.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

// A result failed its own downstream verification: the solver or the model
// builder produced something inconsistent. Always a bug, never user input.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace stmatch

#endif  // STMATCH_ERROR_HPP_
