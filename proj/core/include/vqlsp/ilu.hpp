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

#include <span>

#include "vqlsp/dense.hpp"
#include "vqlsp/sparse.hpp"

namespace vqlsp {

inline constexpr double kIluPivotFloor = 1e-12;

/// Zero-fill incomplete LU factors, M = L·U ≈ A.
///
/// `lower` holds the strictly lower part of L; its unit diagonal is implicit
/// and never stored. `upper` holds U including its diagonal, and every
/// diagonal entry satisfies |u_ii| >= kIluPivotFloor.
struct IluFactors {
  CsrMatrix lower;
  CsrMatrix upper;

  std::size_t n() const noexcept { return upper.n(); }
};

/// ILU(0): Gaussian elimination in IKJ order with every update restricted to
/// the stored pattern of `a`; updates that would land outside it are dropped.
/// On the pattern, (L·U)_ij = a_ij.
///
/// Requires every diagonal position to be stored. Throws ZeroPivotError when
/// |u_ii| < kIluPivotFloor; no perturbation is applied.
IluFactors ilu0(const CsrMatrix& a);

/// M⁻¹v = U⁻¹(L⁻¹v) by sparse forward then backward substitution.
DenseVector apply_minv(const IluFactors& f, std::span<const double> v);

struct PreconditionedSystem {
  DenseMatrix a;  // M⁻¹A, materialized dense
  DenseVector b;  // M⁻¹b
};

PreconditionedSystem preconditioned_system(const CsrMatrix& a, std::span<const double> b,
                                           const IluFactors& f);

/// Dense L·U with the unit diagonal of L restored. For tests and diagnostics.
DenseMatrix ilu_product(const IluFactors& f);

}  // namespace vqlsp
