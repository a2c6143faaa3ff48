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

#include "vqlsp/error.hpp"

#include <cstdio>

namespace vqlsp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDensityTooLow: return "DensityTooLow";
    case ErrorCode::kZeroPivot: return "ZeroPivot";
    case ErrorCode::kZeroRhs: return "ZeroRhs";
    case ErrorCode::kNotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kDegenerateBlock: return "DegenerateBlock";
    case ErrorCode::kDegenerateOperator: return "DegenerateOperator";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kControlEqualsTarget: return "ControlEqualsTarget";
    case ErrorCode::kZeroExact: return "ZeroExact";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

bool Error::is_numerical() const noexcept {
  switch (code_) {
    case ErrorCode::kSingularMatrix:
    case ErrorCode::kNoConvergence:
    case ErrorCode::kZeroPivot:
    case ErrorCode::kZeroRhs:
    case ErrorCode::kDegenerateBlock:
    case ErrorCode::kDegenerateOperator:
    case ErrorCode::kZeroExact:
      return true;
    default:
      return false;
  }
}

namespace {
std::string zero_pivot_message(std::size_t row, double value) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "row %zu, |u_ii| = %.3e", row, value);
  return buf;
}
}  // namespace

ZeroPivotError::ZeroPivotError(std::size_t row, double value)
    : Error(ErrorCode::kZeroPivot, zero_pivot_message(row, value)), row_(row) {}

}  // namespace vqlsp
