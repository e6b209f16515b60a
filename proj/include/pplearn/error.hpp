// Copyright 2026 The pplearn Authors.
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

#ifndef PPLEARN_ERROR_HPP_
#define PPLEARN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace pplearn {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented invariant (weights, permutations, ranges).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operation called outside its supported size (e.g. enumeration over M!).
class SizeError : public Error {
 public:
  using Error::Error;
};

// Input is valid but outside an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed file or record; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace pplearn

#endif  // PPLEARN_ERROR_HPP_
