// Copyright 2026 The pairlike Authors.
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

#ifndef PAIRLIKE_ERRORS_HPP_
#define PAIRLIKE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pairlike {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wrong shape: non-square matrices, mixed class counts, c < 2.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A value object failed its invariants (posterior sum, r_ij + r_ji = 1, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// A ratio or log-odds transform hit a zero denominator or a 0/1 entry.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Argument outside its documented domain (tau, quantile, thresholds, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Stabilization removed every class.
class EmptyResultError : public Error {
 public:
  using Error::Error;
};

// A linear solve was rank deficient. Carries the reciprocal condition
// estimate of the offending system.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double rcond)
      : Error(what), rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

// Malformed input file. line() is 1-based; 0 means "no specific line".
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pairlike

#endif  // PAIRLIKE_ERRORS_HPP_
