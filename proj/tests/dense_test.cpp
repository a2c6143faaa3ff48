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

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "vqlsp/error.hpp"
#include "vqlsp/rng.hpp"

namespace vqlsp {
namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  }
  return m;
}

DenseMatrix from_eigen(const Eigen::MatrixXd& m) {
  DenseMatrix a(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  }
  return a;
}

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  auto eng = make_engine(seed, RngStream::kTest);
  DenseMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = uniform_pm1(eng);
  }
  return a;
}

// Oracle: square roots of the eigenvalues of AᵀA, descending.
std::vector<double> oracle_singular_values(const DenseMatrix& a) {
  const Eigen::MatrixXd m = to_eigen(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.transpose() * m);
  std::vector<double> out;
  for (Eigen::Index k = es.eigenvalues().size(); k-- > 0;) {
    out.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(k))));
  }
  return out;
}

TEST(DenseMatrix, RejectsNonFiniteEntries) {
  EXPECT_THROW(DenseMatrix(1, 1, {std::nan("")}), Error);
  EXPECT_THROW(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), Error);
}

TEST(DenseMatrix, MatvecAndTranspose) {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  const DenseVector y = matvec(a, std::vector<double>{1, 0, -1});
  EXPECT_EQ(y, (DenseVector{-2, -2}));
  const DenseVector z = matvec_transposed(a, std::vector<double>{1, 1});
  EXPECT_EQ(z, (DenseVector{5, 7, 9}));
  EXPECT_EQ(a.transposed().transposed(), a);
  EXPECT_THROW(matvec(a, std::vector<double>{1, 2}), Error);
}

TEST(LuSolve, Identity) {
  EXPECT_EQ(lu_solve(DenseMatrix::identity(3), std::vector<double>{1, 2, 3}),
            (DenseVector{1, 2, 3}));
}

TEST(LuSolve, Diagonal) {
  const DenseVector x = lu_solve(DenseMatrix::from_rows({{2, 0}, {0, 4}}), std::vector<double>{2, 4});
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], 1.0);
}

TEST(LuSolve, TridiagonalParabola) {
  // u(x) = x(4 - x)/2 at x = 1, 2, 3 satisfies the three-point stencil.
  const DenseMatrix a = DenseMatrix::from_rows({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  const DenseVector x = lu_solve(a, std::vector<double>{1, 1, 1});
  for (int i = 0; i < 3; ++i) {
    const double node = i + 1.0;
    EXPECT_NEAR(x[i], node * (4.0 - node) / 2.0, 1e-14);
  }
}

TEST(LuSolve, NeedsPivoting) {
  const DenseMatrix a = DenseMatrix::from_rows({{0, 1}, {1, 0}});
  const DenseVector x = lu_solve(a, std::vector<double>{3, 5});
  EXPECT_EQ(x, (DenseVector{5, 3}));
}

TEST(LuSolve, SingularThrows) {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 2}, {2, 4}});
  try {
    lu_solve(a, std::vector<double>{1, 1});
    FAIL() << "expected SingularMatrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularMatrix);
    EXPECT_TRUE(e.is_numerical());
  }
  EXPECT_THROW(lu_solve(DenseMatrix(2, 3), std::vector<double>{1, 1}), Error);
}

TEST(LuSolve, ResidualSmallOnRandomWellConditioned) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    DenseMatrix a = random_matrix(16, 16, seed);
    for (std::size_t i = 0; i < 16; ++i) a(i, i) += 16.0;  // diagonally dominant
    const DenseMatrix xs = random_matrix(16, 1, seed + 1000);
    const DenseVector x_true(xs.entries().begin(), xs.entries().end());
    const DenseVector b = matvec(a, x_true);
    const DenseVector x = lu_solve(a, b);
    const DenseVector r = matvec(a, x);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) worst = std::max(worst, std::abs(r[i] - b[i]));
    EXPECT_LT(worst, 1e-12 * (1.0 + norm_inf(b))) << "seed " << seed;
  }
}

TEST(LuSolve, AgreesWithEigen) {
  const DenseMatrix a = random_matrix(40, 40, 7);
  const DenseMatrix bm = random_matrix(40, 1, 8);
  const DenseVector b(bm.entries().begin(), bm.entries().end());
  const DenseVector x = lu_solve(a, b);
  const Eigen::VectorXd xe =
      to_eigen(a).partialPivLu().solve(Eigen::Map<const Eigen::VectorXd>(b.data(), 40));
  for (int i = 0; i < 40; ++i) EXPECT_NEAR(x[i], xe(i), 1e-9 * (1.0 + std::abs(xe(i))));
}

TEST(SingularValues, Diagonal) {
  const DenseVector s = singular_values(DenseMatrix::from_rows({{3, 0}, {0, 1}}));
  EXPECT_NEAR(s[0], 3.0, 1e-15);
  EXPECT_NEAR(s[1], 1.0, 1e-15);
}

TEST(SingularValues, NilpotentRankOne) {
  const DenseVector s = singular_values(DenseMatrix::from_rows({{0, 2}, {0, 0}}));
  EXPECT_NEAR(s[0], 2.0, 1e-15);
  EXPECT_NEAR(s[1], 0.0, 1e-15);
}

TEST(SingularValues, MatchesEigenOracle) {
  const DenseMatrix a = random_matrix(8, 8, 42);
  const DenseVector s = singular_values(a);
  const std::vector<double> ref = oracle_singular_values(a);
  ASSERT_EQ(s.size(), ref.size());
  for (std::size_t k = 0; k < s.size(); ++k) EXPECT_NEAR(s[k], ref[k], 1e-9);
}

TEST(SingularValues, RectangularMatchesJacobiSvd) {
  const DenseMatrix a = random_matrix(7, 4, 3);
  const DenseVector s = singular_values(a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
  ASSERT_EQ(s.size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(s[k], svd.singularValues()(k), 1e-12);
}

TEST(SingularValues, DescendingAndNonNegative) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DenseVector s = singular_values(random_matrix(12, 12, seed));
    for (std::size_t k = 0; k < s.size(); ++k) {
      EXPECT_GE(s[k], 0.0);
      if (k > 0) EXPECT_LE(s[k], s[k - 1]);
    }
  }
}

TEST(SingularValues, InvariantUnderOrthogonalSimilarity) {
  const DenseMatrix a = random_matrix(10, 10, 11);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(to_eigen(random_matrix(10, 10, 12)));
  const Eigen::MatrixXd q = qr.householderQ();
  const DenseMatrix b = from_eigen(q.transpose() * to_eigen(a) * q);
  const DenseVector sa = singular_values(a), sb = singular_values(b);
  for (std::size_t k = 0; k < sa.size(); ++k) EXPECT_NEAR(sa[k], sb[k], 1e-12 * sa[0]);
}

TEST(SingularValues, ScaleWithMagnitude) {
  const DenseMatrix a = random_matrix(9, 9, 13);
  const DenseVector s = singular_values(a);
  for (double c : {-3.0, 0.25, 1e6}) {
    const DenseVector sc = singular_values(scaled(a, c));
    for (std::size_t k = 0; k < s.size(); ++k) {
      EXPECT_NEAR(sc[k], std::abs(c) * s[k], 1e-12 * std::abs(c) * s[0]);
    }
  }
}

TEST(ConditionNumber, Examples) {
  EXPECT_NEAR(condition_number(DenseMatrix::identity(4)), 1.0, 1e-15);
  EXPECT_NEAR(condition_number(DenseMatrix::from_rows({{10, 0}, {0, 0.1}})), 100.0, 1e-12);
  EXPECT_EQ(condition_number(DenseMatrix::from_rows({{1, 1}, {1, 1}})),
            std::numeric_limits<double>::infinity());
  EXPECT_THROW(condition_number(DenseMatrix(2, 3)), Error);
}

TEST(ConditionNumber, TridiagonalMatchesClosedForm) {
  // tridiag(-1, 2, -1) is SPD with eigenvalues 2 - 2cos(kπ/(n+1)).
  const std::size_t n = 8;
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = 2.0;
    if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = -1.0;
  }
  const double pi = std::acos(-1.0);
  const double lmax = 2.0 - 2.0 * std::cos(n * pi / (n + 1.0));
  const double lmin = 2.0 - 2.0 * std::cos(pi / (n + 1.0));
  EXPECT_NEAR(condition_number(a), lmax / lmin, 1e-10 * lmax / lmin);
}

TEST(Normalized, UnitNormAndZeroRejected) {
  const DenseVector v = normalized(std::vector<double>{3, 4});
  EXPECT_DOUBLE_EQ(v[0], 0.6);
  EXPECT_DOUBLE_EQ(v[1], 0.8);
  try {
    normalized(std::vector<double>{0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroRhs);
  }
}

}  // namespace
}  // namespace vqlsp
