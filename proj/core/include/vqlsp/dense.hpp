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
#include <span>
#include <vector>

namespace vqlsp {

using DenseVector = std::vector<double>;

/// Row-major dense real matrix. Entries are required to be finite; the
/// constructors reject NaN/Inf so every downstream kernel may assume it.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> diag);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> entries() const noexcept { return data_; }

  DenseMatrix transposed() const;
  double max_abs() const noexcept;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseVector matvec(const DenseMatrix& a, std::span<const double> x);
// y = Aᵀx without materializing the transpose.
DenseVector matvec_transposed(const DenseMatrix& a, std::span<const double> x);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scaled(const DenseMatrix& a, double c);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);
// max_ij |a_ij - b_ij|; dimensions must agree.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
// Scales v to unit 2-norm. Throws ZeroRhs if ‖v‖₂ < 1e-300.
DenseVector normalized(std::span<const double> v);

/// Solves Ax = b by LU with partial (row) pivoting.
/// Throws SingularMatrix when a pivot magnitude falls below 1e-14.
DenseVector lu_solve(const DenseMatrix& a, std::span<const double> b);

/// All min(rows, cols) singular values, sorted descending.
///
/// One-sided Jacobi (Hestenes) rotations on the columns of A (or Aᵀ when A is
/// wide). Sweeps stop when every column pair is orthogonal to 1e-15 relative;
/// more than kMaxJacobiSweeps sweeps raises NoConvergence.
DenseVector singular_values(const DenseMatrix& a);

inline constexpr int kMaxJacobiSweeps = 100;

/// σ_max / σ_min of a square matrix. Returns +infinity (not an error) when
/// σ_min < 1e-300 so spectrum sweeps never abort on a singular instance.
double condition_number(const DenseMatrix& a);

}  // namespace vqlsp
