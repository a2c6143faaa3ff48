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

#include "vqlsp/ilu.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "vqlsp/error.hpp"

namespace vqlsp {

namespace {
constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
}

IluFactors ilu0(const CsrMatrix& a) {
  const std::size_t n = a.n();
  auto rp = a.row_ptr();
  auto ci = a.col_idx();
  std::vector<double> w(a.vals().begin(), a.vals().end());

  std::vector<std::size_t> diag(n, kAbsent);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
      if (ci[k] == i) diag[i] = k;
    }
    if (diag[i] == kAbsent) {
      throw Error(ErrorCode::kInvalidArgument,
                  "ilu0: diagonal position " + std::to_string(i) + " not in pattern");
    }
  }

  // pos[j] = storage slot of (i, j) for the row being eliminated.
  std::vector<std::size_t> pos(n, kAbsent);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) pos[ci[k]] = k;

    for (std::size_t ik = rp[i]; ik < rp[i + 1] && ci[ik] < i; ++ik) {
      const std::size_t k = ci[ik];
      const double l = w[ik] / w[diag[k]];
      w[ik] = l;
      for (std::size_t kj = diag[k] + 1; kj < rp[k + 1]; ++kj) {
        const std::size_t slot = pos[ci[kj]];
        if (slot != kAbsent) w[slot] -= l * w[kj];
      }
    }

    const double pivot = w[diag[i]];
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) pos[ci[k]] = kAbsent;
    if (!(std::abs(pivot) >= kIluPivotFloor)) throw ZeroPivotError(i, std::abs(pivot));
  }

  std::vector<std::size_t> lrp{0}, lci, urp{0}, uci;
  std::vector<double> lv, uv;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
      if (ci[k] < i) {
        lci.push_back(ci[k]);
        lv.push_back(w[k]);
      } else {
        uci.push_back(ci[k]);
        uv.push_back(w[k]);
      }
    }
    lrp.push_back(lci.size());
    urp.push_back(uci.size());
  }
  return {CsrMatrix(n, std::move(lrp), std::move(lci), std::move(lv)),
          CsrMatrix(n, std::move(urp), std::move(uci), std::move(uv))};
}

DenseVector apply_minv(const IluFactors& f, std::span<const double> v) {
  const std::size_t n = f.n();
  if (v.size() != n) throw Error(ErrorCode::kDimensionMismatch, "apply_minv length mismatch");
  DenseVector x(v.begin(), v.end());
  for (std::size_t i = 0; i < n; ++i) {
    auto cols = f.lower.row_cols(i);
    auto vals = f.lower.row_vals(i);
    double s = x[i];
    for (std::size_t k = 0; k < cols.size(); ++k) s -= vals[k] * x[cols[k]];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    auto cols = f.upper.row_cols(i);
    auto vals = f.upper.row_vals(i);
    // cols[0] == i: the diagonal leads each U row.
    double s = x[i];
    for (std::size_t k = 1; k < cols.size(); ++k) s -= vals[k] * x[cols[k]];
    x[i] = s / vals[0];
  }
  return x;
}

PreconditionedSystem preconditioned_system(const CsrMatrix& a, std::span<const double> b,
                                           const IluFactors& f) {
  const std::size_t n = a.n();
  if (b.size() != n || f.n() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "preconditioned_system dimension mismatch");
  }
  const CsrMatrix at = transpose(a);
  DenseMatrix out(n, n);
  DenseVector column(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(column.begin(), column.end(), 0.0);
    auto rows = at.row_cols(j);
    auto vals = at.row_vals(j);
    for (std::size_t k = 0; k < rows.size(); ++k) column[rows[k]] = vals[k];
    const DenseVector mc = apply_minv(f, column);
    for (std::size_t i = 0; i < n; ++i) out(i, j) = mc[i];
  }
  return {std::move(out), apply_minv(f, b)};
}

DenseMatrix ilu_product(const IluFactors& f) {
  DenseMatrix l = to_dense(f.lower);
  for (std::size_t i = 0; i < l.rows(); ++i) l(i, i) = 1.0;
  return matmul(l, to_dense(f.upper));
}

}  // namespace vqlsp
