// Copyright 2026 The vqls-precond Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vqlsp {

enum class ErrorCode {
  kDimensionMismatch,
  kSingularMatrix,
  kNoConvergence,
  kDensityTooLow,
  kZeroPivot,
  kZeroRhs,
  kNotPowerOfTwo,
  kNotSymmetric,
  kDegenerateBlock,
  kDegenerateOperator,
  kIndexOutOfRange,
  kControlEqualsTarget,
  kZeroExact,
  kInvalidArgument,
  kParseError,
  kIoError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported as vqlsp::Error; code() identifies the
// contract that was violated so callers (and the CLI exit-code mapping) can
// branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // True for failures that come from the numbers rather than from bad input
  // (singular systems, zero pivots, optimizer landing in the wrong block).
  bool is_numerical() const noexcept;

 private:
  ErrorCode code_;
};

// Raised by ilu0; carries the row whose pivot fell under the floor.
class ZeroPivotError : public Error {
 public:
  ZeroPivotError(std::size_t row, double value);
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace vqlsp
