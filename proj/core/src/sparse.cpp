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

#include "vqlsp/sparse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "vqlsp/error.hpp"
#include "vqlsp/rng.hpp"

namespace vqlsp {

CsrMatrix::CsrMatrix(std::size_t n, std::vector<std::size_t> row_ptr,
                     std::vector<std::size_t> col_idx, std::vector<double> vals)
    : n_(n), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)), vals_(std::move(vals)) {
  if (row_ptr_.size() != n_ + 1 || row_ptr_.front() != 0 || row_ptr_.back() != col_idx_.size() ||
      vals_.size() != col_idx_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "inconsistent CSR array lengths");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1]) {
      throw Error(ErrorCode::kInvalidArgument, "row_ptr decreases at row " + std::to_string(i));
    }
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= n_) throw Error(ErrorCode::kIndexOutOfRange, "column index out of range");
      if (k > row_ptr_[i] && col_idx_[k] <= col_idx_[k - 1]) {
        throw Error(ErrorCode::kInvalidArgument,
                    "columns not strictly increasing in row " + std::to_string(i));
      }
      if (!std::isfinite(vals_[k])) throw Error(ErrorCode::kInvalidArgument, "non-finite value");
    }
  }
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
  std::vector<std::size_t> rp(n + 1), ci(n);
  for (std::size_t i = 0; i < n; ++i) {
    rp[i + 1] = i + 1;
    ci[i] = i;
  }
  return CsrMatrix(n, std::move(rp), std::move(ci), std::vector<double>(n, 1.0));
}

CsrMatrix CsrMatrix::from_dense(const DenseMatrix& a, bool keep_diagonal) {
  if (!a.is_square()) throw Error(ErrorCode::kDimensionMismatch, "CSR matrices are square");
  const std::size_t n = a.rows();
  std::vector<std::size_t> rp{0}, ci;
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) != 0.0 || (keep_diagonal && i == j)) {
        ci.push_back(j);
        v.push_back(a(i, j));
      }
    }
    rp.push_back(ci.size());
  }
  return CsrMatrix(n, std::move(rp), std::move(ci), std::move(v));
}

bool CsrMatrix::contains(std::size_t i, std::size_t j) const {
  auto cols = row_cols(i);
  return std::binary_search(cols.begin(), cols.end(), j);
}

double CsrMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double x : vals_) m = std::max(m, std::abs(x));
  return m;
}

DenseVector spmv(const CsrMatrix& a, std::span<const double> x) {
  if (x.size() != a.n()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "spmv: n = " + std::to_string(a.n()) + ", len(x) = " + std::to_string(x.size()));
  }
  DenseVector y(a.n(), 0.0);
  for (std::size_t i = 0; i < a.n(); ++i) {
    auto cols = a.row_cols(i);
    auto vals = a.row_vals(i);
    double s = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) s += vals[k] * x[cols[k]];
    y[i] = s;
  }
  return y;
}

CsrMatrix transpose(const CsrMatrix& a) {
  const std::size_t n = a.n();
  std::vector<std::size_t> rp(n + 1, 0);
  for (std::size_t c : a.col_idx()) ++rp[c + 1];
  for (std::size_t i = 0; i < n; ++i) rp[i + 1] += rp[i];
  std::vector<std::size_t> next(rp.begin(), rp.end() - 1);
  std::vector<std::size_t> ci(a.nnz());
  std::vector<double> v(a.nnz());
  // Rows are visited in increasing order, so each transposed row fills with
  // increasing column indices.
  for (std::size_t i = 0; i < n; ++i) {
    auto cols = a.row_cols(i);
    auto vals = a.row_vals(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const std::size_t dst = next[cols[k]]++;
      ci[dst] = i;
      v[dst] = vals[k];
    }
  }
  return CsrMatrix(n, std::move(rp), std::move(ci), std::move(v));
}

DenseMatrix to_dense(const CsrMatrix& a) {
  DenseMatrix d(a.n(), a.n());
  for (std::size_t i = 0; i < a.n(); ++i) {
    auto cols = a.row_cols(i);
    auto vals = a.row_vals(i);
    for (std::size_t k = 0; k < cols.size(); ++k) d(i, cols[k]) = vals[k];
  }
  return d;
}

CsrMatrix random_sparse(std::size_t n, double density, RngSeed seed) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "random_sparse needs n >= 2");
  if (!(density > 0.0 && density <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "density must lie in (0, 1]");
  }
  const double nn = static_cast<double>(n);
  const double target = density * nn * nn;
  if (target < nn) {
    throw Error(ErrorCode::kDensityTooLow, "density·n² = " + std::to_string(target) +
                                               " cannot host the diagonal of n = " +
                                               std::to_string(n));
  }
  const double p_off = std::min(1.0, (target - nn) / (nn * nn - nn));

  auto eng = make_engine(seed.value, RngStream::kMatrix);
  std::vector<std::size_t> rp{0}, ci;
  std::vector<double> v;
  ci.reserve(static_cast<std::size_t>(target * 1.1));
  v.reserve(ci.capacity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // One Bernoulli draw per off-diagonal position keeps the stream layout
      // independent of earlier outcomes.
      const bool keep = (i == j) || uniform01(eng) < p_off;
      if (!keep) continue;
      ci.push_back(j);
      v.push_back(uniform_pm1(eng));
    }
    rp.push_back(ci.size());
  }
  return CsrMatrix(n, std::move(rp), std::move(ci), std::move(v));
}

DenseVector random_rhs(std::size_t n, RngSeed seed) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "random_rhs needs n >= 1");
  auto eng = make_engine(seed.value, RngStream::kRhs);
  DenseVector b(n);
  for (double& x : b) x = uniform_pm1(eng);
  return b;
}

PoissonProblem poisson_1d(std::size_t n_interior, double f, double length) {
  if (n_interior < 1) throw Error(ErrorCode::kInvalidArgument, "poisson_1d needs n_interior >= 1");
  if (!(length > 0.0)) throw Error(ErrorCode::kInvalidArgument, "rod length must be positive");
  const std::size_t n = n_interior;
  const double h = length / static_cast<double>(n + 1);
  std::vector<std::size_t> rp{0}, ci;
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      ci.push_back(i - 1);
      v.push_back(-1.0);
    }
    ci.push_back(i);
    v.push_back(2.0);
    if (i + 1 < n) {
      ci.push_back(i + 1);
      v.push_back(-1.0);
    }
    rp.push_back(ci.size());
  }
  return {CsrMatrix(n, std::move(rp), std::move(ci), std::move(v)), DenseVector(n, f * h * h), h};
}

void write_matrix_market(std::ostream& out, const CsrMatrix& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.n() << ' ' << a.n() << ' ' << a.nnz() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < a.n(); ++i) {
    auto cols = a.row_cols(i);
    auto vals = a.row_vals(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", vals[k]);
      out << i + 1 << ' ' << cols[k] + 1 << ' ' << buf << '\n';
    }
  }
}

CsrMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParseError, "empty Matrix Market stream");
  {
    std::istringstream hdr(line);
    std::string banner, object, format, field, symmetry;
    hdr >> banner >> object >> format >> field >> symmetry;
    auto lower = [](std::string s) {
      for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      return s;
    };
    if (banner != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate" ||
        lower(field) != "real" || lower(symmetry) != "general") {
      throw Error(ErrorCode::kParseError, "unsupported header: " + line);
    }
  }
  while (std::getline(in, line) && (line.empty() || line[0] == '%')) {
  }
  std::size_t rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream sz(line);
    if (!(sz >> rows >> cols >> nnz)) throw Error(ErrorCode::kParseError, "bad size line");
  }
  if (rows != cols) throw Error(ErrorCode::kDimensionMismatch, "matrix is not square");

  std::vector<std::tuple<std::size_t, std::size_t, double>> entries;
  entries.reserve(nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) throw Error(ErrorCode::kParseError, "truncated entry list");
    if (i < 1 || j < 1 || i > rows || j > cols) {
      throw Error(ErrorCode::kIndexOutOfRange, "entry index out of range");
    }
    entries.emplace_back(i - 1, j - 1, v);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
  });
  std::vector<std::size_t> rp(rows + 1, 0), ci;
  std::vector<double> v;
  for (const auto& [i, j, x] : entries) {
    ++rp[i + 1];
    ci.push_back(j);
    v.push_back(x);
  }
  for (std::size_t i = 0; i < rows; ++i) rp[i + 1] += rp[i];
  return CsrMatrix(rows, std::move(rp), std::move(ci), std::move(v));
}

}  // namespace vqlsp
