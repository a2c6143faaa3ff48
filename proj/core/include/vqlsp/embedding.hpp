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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vqlsp/dense.hpp"

namespace vqlsp {

// Qubit ordering used everywhere in the project: qubit 0 is the most
// significant bit of a basis index. The ancilla added by hermitize is qubit 0.

enum class EmbeddingMode { kDirect, kHermitized };

struct QuantumSystem {
  std::size_t n_qubits = 0;
  DenseMatrix op;         // 2^n_qubits square; Ã (direct) or [[0, Ã], [Ãᵀ, 0]] (hermitized)
  DenseVector rhs_state;  // unit 2-norm
  double scale = 0.0;     // ‖b‖₂ before normalization
  EmbeddingMode mode = EmbeddingMode::kDirect;

  std::size_t dim() const noexcept { return op.rows(); }
};

struct PaddedSystem {
  DenseMatrix a;
  DenseVector b;
};

/// Embeds an n×n system into the next power-of-two dimension: identity on the
/// complement block, zero coupling, b zero-padded. A power-of-two n is
/// returned unchanged.
PaddedSystem pad_to_power_of_two(const DenseMatrix& a, std::span<const double> b);

/// Uses `a` as the cost operator directly. `a` must be 2^k square.
QuantumSystem direct_system(const DenseMatrix& a, std::span<const double> b);

/// Block Hermitization with one ancilla as the most significant qubit:
/// op = [[0, A], [Aᵀ, 0]], rhs = normalize((b, 0)).
/// Throws ZeroRhs when ‖b‖₂ < 1e-300.
QuantumSystem hermitize(const DenseMatrix& a, std::span<const double> b);

/// Recovers the classical solution direction from an optimized state:
/// hermitized systems take the bottom block, then padding beyond
/// `original_n` is dropped and the result renormalized to unit norm.
/// Throws DegenerateBlock when the selected block has norm < 1e-10.
DenseVector extract_solution(std::span<const double> x_state, const QuantumSystem& sys,
                             std::size_t original_n);

// ---------------------------------------------------------------------------
// Pauli decomposition.

struct PauliTerm {
  double coeff = 0.0;
  std::string word;  // over {I, X, Y, Z}; word[0] acts on qubit 0 (MSB)
};

/// op = Σ coeff·P_word with coeff = tr(P_word·op)/2^m, found by enumerating
/// all 4^m words. Terms with |coeff| <= tol are dropped. Only real symmetric
/// operators are accepted, so every surviving word has an even number of Y.
///
/// Throws NotPowerOfTwo or NotSymmetric (tolerance 1e-12 on ‖op − opᵀ‖∞).
std::vector<PauliTerm> pauli_decompose(const DenseMatrix& op, double tol = 1e-12);

/// P_word·v for a word with an even number of Y (so P_word is real).
DenseVector apply_pauli(const std::string& word, std::span<const double> v);

/// Dense Σ coeff·P_word; dimension 2^m where m is the word length.
DenseMatrix pauli_sum_matrix(std::span<const PauliTerm> terms);

/// One `<coeff> <word>` line per term, coefficients with 17 significant digits.
void write_pauli_terms(std::ostream& out, std::span<const PauliTerm> terms);

bool is_power_of_two(std::size_t n) noexcept;
// Smallest k with 2^k >= n.
std::size_t ceil_log2(std::size_t n) noexcept;

}  // namespace vqlsp
