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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "vqlsp/dense.hpp"

namespace vqlsp {

/// Square compressed-sparse-row matrix. The stored pattern is the structural
/// nonzero set: explicitly stored zeros are members of the pattern.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  // Validates row_ptr monotonicity, column bounds and strictly increasing
  // columns within each row.
  CsrMatrix(std::size_t n, std::vector<std::size_t> row_ptr, std::vector<std::size_t> col_idx,
            std::vector<double> vals);

  static CsrMatrix identity(std::size_t n);
  // Stores every entry of `a` whose value is nonzero (the diagonal is always
  // stored when `keep_diagonal` is set).
  static CsrMatrix from_dense(const DenseMatrix& a, bool keep_diagonal = true);

  std::size_t n() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return col_idx_.size(); }
  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
  std::span<const double> vals() const noexcept { return vals_; }

  std::span<const std::size_t> row_cols(std::size_t i) const {
    return {col_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_vals(std::size_t i) const {
    return {vals_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }

  // Pattern membership test, O(log row length).
  bool contains(std::size_t i, std::size_t j) const;
  double max_abs() const noexcept;

  friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> vals_;
};

struct RngSeed {
  std::uint64_t value = 0;
  friend bool operator==(RngSeed, RngSeed) = default;
};

DenseVector spmv(const CsrMatrix& a, std::span<const double> x);
CsrMatrix transpose(const CsrMatrix& a);
DenseMatrix to_dense(const CsrMatrix& a);

/// Random sparse test matrix: every diagonal position plus off-diagonal
/// positions drawn independently with probability
/// p' = (density·n² − n)/(n² − n), so the expected nnz is density·n².
/// Values are i.i.d. uniform on [-1, 1].
///
/// Throws DensityTooLow if density·n² < n.
CsrMatrix random_sparse(std::size_t n, double density, RngSeed seed);

/// i.i.d. uniform [-1, 1] vector from a stream independent of random_sparse's
/// stream for the same seed.
DenseVector random_rhs(std::size_t n, RngSeed seed);

struct PoissonProblem {
  CsrMatrix a;
  DenseVector b;
  double spacing = 0.0;  // Δh = length / (n_interior + 1)
};

/// -u'' = f on (0, L), u(0) = u(L) = 0, with the 3-point stencil on
/// n_interior interior nodes. Both sides are multiplied by Δh², giving
/// A = tridiag(-1, 2, -1) and b = f·Δh²·1.
PoissonProblem poisson_1d(std::size_t n_interior, double f, double length);

/// Matrix Market "coordinate real general" I/O. Values are written with 17
/// significant digits so a write/read round trip is exact.
void write_matrix_market(std::ostream& out, const CsrMatrix& a);
CsrMatrix read_matrix_market(std::istream& in);

}  // namespace vqlsp
