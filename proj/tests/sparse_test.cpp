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

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "vqlsp/error.hpp"

namespace vqlsp {
namespace {

TEST(CsrMatrix, ValidatesArrays) {
  EXPECT_THROW(CsrMatrix(2, {0, 1}, {0}, {1.0}), Error);            // row_ptr too short
  EXPECT_THROW(CsrMatrix(2, {0, 1, 2}, {0, 2}, {1.0, 1.0}), Error);  // column out of range
  EXPECT_THROW(CsrMatrix(1, {0, 2}, {0, 0}, {1.0, 1.0}), Error);     // duplicate column
  EXPECT_NO_THROW(CsrMatrix(2, {0, 1, 2}, {1, 0}, {1.0, 1.0}));
}

TEST(Spmv, Identity) {
  EXPECT_EQ(spmv(CsrMatrix::identity(3), std::vector<double>{1, 2, 3}), (DenseVector{1, 2, 3}));
}

TEST(Spmv, Nilpotent) {
  const CsrMatrix a = CsrMatrix::from_dense(DenseMatrix::from_rows({{0, 1}, {0, 0}}), false);
  EXPECT_EQ(spmv(a, std::vector<double>{5, 7}), (DenseVector{7, 0}));
  EXPECT_THROW(spmv(a, std::vector<double>{1, 2, 3}), Error);
}

TEST(Spmv, MatchesDenseOracleAtFullScale) {
  const CsrMatrix a = random_sparse(128, 0.2, {3});
  const DenseMatrix d = to_dense(a);
  const DenseVector ones(128, 1.0);
  const DenseVector y = spmv(a, ones);
  for (std::size_t i = 0; i < 128; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 128; ++j) s += d(i, j);
    EXPECT_NEAR(y[i], s, 1e-12);
  }
}

TEST(Transpose, Examples) {
  EXPECT_EQ(transpose(CsrMatrix::identity(3)), CsrMatrix::identity(3));
  const CsrMatrix a = CsrMatrix::from_dense(DenseMatrix::from_rows({{0, 1}, {0, 0}}), false);
  EXPECT_EQ(to_dense(transpose(a)), DenseMatrix::from_rows({{0, 0}, {1, 0}}));
}

TEST(Transpose, InvolutionAndDenseAgreement) {
  const CsrMatrix a = random_sparse(50, 0.1, {9});
  EXPECT_EQ(transpose(transpose(a)), a);
  EXPECT_EQ(to_dense(transpose(a)), to_dense(a).transposed());
}

TEST(ToDense, Examples) {
  EXPECT_EQ(to_dense(CsrMatrix::identity(2)), DenseMatrix::identity(2));
  const CsrMatrix diag(3, {0, 1, 2, 3}, {0, 1, 2}, {1.5, -2.0, 4.0});
  EXPECT_EQ(to_dense(diag), DenseMatrix::diagonal(std::vector<double>{1.5, -2.0, 4.0}));
}

TEST(ToDense, PreservesStoredValuesExactly) {
  const CsrMatrix a = random_sparse(40, 0.3, {4});
  const DenseMatrix d = to_dense(a);
  for (std::size_t i = 0; i < a.n(); ++i) {
    auto cols = a.row_cols(i);
    auto vals = a.row_vals(i);
    for (std::size_t k = 0; k < cols.size(); ++k) EXPECT_EQ(d(i, cols[k]), vals[k]);
  }
}

TEST(RandomSparse, DiagonalAlwaysStored) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const CsrMatrix a = random_sparse(128, 0.2, {seed});
    for (std::size_t i = 0; i < 128; ++i) EXPECT_TRUE(a.contains(i, i)) << seed << ":" << i;
  }
}

TEST(RandomSparse, NnzWithinBinomialBounds) {
  // 128 forced diagonal entries plus Binomial(16256, p') off-diagonal, with
  // p' = (0.2·128² − 128)/(128² − 128); six-sigma bounds give [3000, 3560].
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const CsrMatrix a = random_sparse(128, 0.2, {seed});
    EXPECT_GE(a.nnz(), 3000u);
    EXPECT_LE(a.nnz(), 3560u);
  }
}

TEST(RandomSparse, EntriesInRangeAndDeterministic) {
  const CsrMatrix a = random_sparse(128, 0.2, {77});
  const CsrMatrix b = random_sparse(128, 0.2, {77});
  EXPECT_EQ(a, b);
  EXPECT_LE(a.max_abs(), 1.0);
  EXPECT_NE(a, random_sparse(128, 0.2, {78}));
}

TEST(RandomSparse, Errors) {
  try {
    random_sparse(100, 0.005, {1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDensityTooLow);
  }
  EXPECT_THROW(random_sparse(1, 0.5, {1}), Error);
  EXPECT_THROW(random_sparse(10, 0.0, {1}), Error);
  EXPECT_THROW(random_sparse(10, 1.5, {1}), Error);
  EXPECT_EQ(random_sparse(10, 1.0, {1}).nnz(), 100u);
}

TEST(RandomRhs, RangeAndDeterminism) {
  const DenseVector b = random_rhs(500, {5});
  for (double x : b) {
    EXPECT_GE(x, -1.0);
    EXPECT_LE(x, 1.0);
  }
  EXPECT_EQ(b, random_rhs(500, {5}));
}

TEST(RandomRhs, MomentsOfUniform) {
  const DenseVector b = random_rhs(10000, {1});
  double mean = 0.0;
  for (double x : b) mean += x;
  mean /= b.size();
  double var = 0.0;
  for (double x : b) var += (x - mean) * (x - mean);
  var /= b.size() - 1.0;
  EXPECT_NEAR(mean, 0.0, 0.03);
  EXPECT_GE(var, 0.30);
  EXPECT_LE(var, 0.37);
}

TEST(RandomRhs, IndependentOfMatrixStream) {
  // The first stored matrix value (entry (0,0)) and b[0] come from separate
  // streams for the same seed.
  const CsrMatrix a = random_sparse(16, 0.5, {3});
  EXPECT_NE(a.row_vals(0)[0], random_rhs(16, {3})[0]);
}

TEST(Poisson1d, SmallExample) {
  const PoissonProblem p = poisson_1d(3, 1.0, 4.0);
  EXPECT_DOUBLE_EQ(p.spacing, 1.0);
  EXPECT_EQ(to_dense(p.a), DenseMatrix::from_rows({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}));
  EXPECT_EQ(p.b, (DenseVector{1, 1, 1}));
  const DenseVector x = lu_solve(to_dense(p.a), p.b);
  EXPECT_NEAR(x[0], 1.5, 1e-14);
  EXPECT_NEAR(x[1], 2.0, 1e-14);
  EXPECT_NEAR(x[2], 1.5, 1e-14);
}

TEST(Poisson1d, SingleNode) {
  const PoissonProblem p = poisson_1d(1, 3.0, 2.0);
  EXPECT_EQ(to_dense(p.a), DenseMatrix::from_rows({{2}}));
  EXPECT_DOUBLE_EQ(p.b[0], 3.0 * 1.0 * 1.0);
  EXPECT_THROW(poisson_1d(0, 1.0, 1.0), Error);
  EXPECT_THROW(poisson_1d(4, 1.0, 0.0), Error);
}

TEST(Poisson1d, ParabolaAtFullScale) {
  const double f = 1.0, length = 1.0;
  const PoissonProblem p = poisson_1d(128, f, length);
  const DenseVector x = lu_solve(to_dense(p.a), p.b);
  for (std::size_t i = 0; i < 128; ++i) {
    const double node = p.spacing * (i + 1.0);
    const double u = f * node * (length - node) / 2.0;
    EXPECT_NEAR(x[i], u, 1e-10 * u);
  }
}

TEST(Poisson1d, SpectrumMatchesClosedForm) {
  const std::size_t n = 16;
  const PoissonProblem p = poisson_1d(n, 1.0, 1.0);
  const DenseMatrix d = to_dense(p.a);
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(i, j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const double pi = std::acos(-1.0);
  for (std::size_t k = 1; k <= n; ++k) {
    EXPECT_NEAR(es.eigenvalues()(k - 1), 2.0 - 2.0 * std::cos(k * pi / (n + 1.0)), 1e-12);
  }
}

TEST(MatrixMarket, RoundTripIsExact) {
  const CsrMatrix a = random_sparse(30, 0.2, {8});
  std::stringstream ss;
  write_matrix_market(ss, a);
  EXPECT_EQ(read_matrix_market(ss), a);
}

TEST(MatrixMarket, ReadsUnsortedEntriesAndComments) {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real general\n"
      "% comment\n"
      "2 2 3\n"
      "2 1 4.5\n"
      "1 2 -1\n"
      "1 1 2\n");
  EXPECT_EQ(to_dense(read_matrix_market(in)), DenseMatrix::from_rows({{2, -1}, {4.5, 0}}));
}

TEST(MatrixMarket, RejectsUnsupportedInput) {
  std::istringstream sym("%%MatrixMarket matrix coordinate real symmetric\n1 1 1\n1 1 1\n");
  EXPECT_THROW(read_matrix_market(sym), Error);
  std::istringstream rect("%%MatrixMarket matrix coordinate real general\n2 3 0\n");
  EXPECT_THROW(read_matrix_market(rect), Error);
  std::istringstream trunc("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n");
  EXPECT_THROW(read_matrix_market(trunc), Error);
  std::istringstream dup("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n1 1 2\n");
  EXPECT_THROW(read_matrix_market(dup), Error);
}

}  // namespace
}  // namespace vqlsp
