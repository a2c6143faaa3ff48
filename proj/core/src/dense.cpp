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

#include "vqlsp/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "vqlsp/error.hpp"

namespace vqlsp {

namespace {

void require_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kInvalidArgument, "non-finite matrix entry");
  }
}

std::string dims(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "entry count " + std::to_string(data_.size()) + " for " + dims(rows_, cols_));
  }
  require_finite(data_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  DenseMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m.data_);
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorCode::kDimensionMismatch, "ragged row list");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return DenseMatrix(r, c, std::move(entries));
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

double DenseMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

DenseVector matvec(const DenseMatrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matvec " + dims(a.rows(), a.cols()) + " by " + std::to_string(x.size()));
  }
  DenseVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

DenseVector matvec_transposed(const DenseMatrix& a, std::span<const double> x) {
  if (x.size() != a.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matvecᵀ " + dims(a.rows(), a.cols()) + " by " + std::to_string(x.size()));
  }
  DenseVector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += r[j] * xi;
  }
  return y;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matmul " + dims(a.rows(), a.cols()) + " by " + dims(b.rows(), b.cols()));
  }
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

DenseMatrix scaled(const DenseMatrix& a, double c) {
  std::vector<double> e(a.entries().begin(), a.entries().end());
  for (double& x : e) x *= c;
  return DenseMatrix(a.rows(), a.cols(), std::move(e));
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "dot length mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "max_abs_diff shape mismatch");
  }
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

DenseVector normalized(std::span<const double> v) {
  const double n = norm2(v);
  if (!(n >= 1e-300)) throw Error(ErrorCode::kZeroRhs, "vector norm below 1e-300");
  DenseVector out(v.begin(), v.end());
  for (double& x : out) x /= n;
  return out;
}

DenseVector lu_solve(const DenseMatrix& a, std::span<const double> b) {
  if (!a.is_square()) throw Error(ErrorCode::kDimensionMismatch, "lu_solve needs a square matrix");
  const std::size_t n = a.rows();
  if (b.size() != n) throw Error(ErrorCode::kDimensionMismatch, "lu_solve rhs length");

  DenseMatrix lu = a;
  DenseVector x(b.begin(), b.end());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    }
    if (std::abs(lu(p, k)) < 1e-14) {
      throw Error(ErrorCode::kSingularMatrix, "pivot below 1e-14 at column " + std::to_string(k));
    }
    if (p != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(p).begin());
      std::swap(x[k], x[p]);
    }
    const double pivot = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = lu(i, k) / pivot;
      if (l == 0.0) continue;
      lu(i, k) = l;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= l * lu(k, j);
      x[i] -= l * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = x[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= lu(k, j) * x[j];
    x[k] = s / lu(k, k);
  }
  return x;
}

DenseVector singular_values(const DenseMatrix& a) {
  // Work on the columns of the tall orientation; store them as rows of `cols`
  // so each column is contiguous.
  const bool wide = a.cols() > a.rows();
  DenseMatrix cols = wide ? a : a.transposed();
  const std::size_t n = cols.rows();  // number of columns being orthogonalized
  const std::size_t m = cols.cols();  // column length
  constexpr double kTol = 1e-15;

  DenseVector sq(n);
  for (std::size_t j = 0; j < n; ++j) sq[j] = dot(cols.row(j), cols.row(j));

  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = sq[p];
        const double beta = sq[q];
        if (alpha == 0.0 || beta == 0.0) continue;
        auto up = cols.row(p);
        auto uq = cols.row(q);
        const double gamma = dot(up, uq);
        if (std::abs(gamma) <= kTol * std::sqrt(alpha * beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double xp = up[i];
          const double xq = uq[i];
          up[i] = c * xp - s * xq;
          uq[i] = s * xp + c * xq;
        }
        sq[p] = dot(up, up);
        sq[q] = dot(uq, uq);
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kNoConvergence,
                "one-sided Jacobi exceeded " + std::to_string(kMaxJacobiSweeps) + " sweeps");
  }

  DenseVector sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(sq[j]);
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

double condition_number(const DenseMatrix& a) {
  if (!a.is_square()) {
    throw Error(ErrorCode::kDimensionMismatch, "condition_number needs a square matrix");
  }
  if (a.rows() == 0) return 1.0;
  const DenseVector s = singular_values(a);
  if (s.back() < 1e-300) return std::numeric_limits<double>::infinity();
  return s.front() / s.back();
}

}  // namespace vqlsp
