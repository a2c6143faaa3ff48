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

#include "vqlsp/embedding.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "vqlsp/error.hpp"

namespace vqlsp {

bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

std::size_t ceil_log2(std::size_t n) noexcept {
  return n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
}

PaddedSystem pad_to_power_of_two(const DenseMatrix& a, std::span<const double> b) {
  if (!a.is_square()) throw Error(ErrorCode::kDimensionMismatch, "pad: matrix must be square");
  if (b.size() != a.rows()) throw Error(ErrorCode::kDimensionMismatch, "pad: rhs length");
  const std::size_t n = a.rows();
  const std::size_t padded = std::size_t{1} << ceil_log2(n);
  if (padded == n) return {a, DenseVector(b.begin(), b.end())};
  DenseMatrix out = DenseMatrix::identity(padded);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j);
  }
  DenseVector pb(padded, 0.0);
  std::copy(b.begin(), b.end(), pb.begin());
  return {std::move(out), std::move(pb)};
}

QuantumSystem direct_system(const DenseMatrix& a, std::span<const double> b) {
  if (!a.is_square() || !is_power_of_two(a.rows())) {
    throw Error(ErrorCode::kNotPowerOfTwo, "direct_system needs a 2^k square operator");
  }
  if (b.size() != a.rows()) throw Error(ErrorCode::kDimensionMismatch, "direct_system rhs length");
  QuantumSystem sys;
  sys.n_qubits = ceil_log2(a.rows());
  sys.op = a;
  sys.scale = norm2(b);
  sys.rhs_state = normalized(b);
  sys.mode = EmbeddingMode::kDirect;
  return sys;
}

QuantumSystem hermitize(const DenseMatrix& a, std::span<const double> b) {
  if (!a.is_square() || !is_power_of_two(a.rows())) {
    throw Error(ErrorCode::kNotPowerOfTwo, "hermitize needs a 2^k square matrix");
  }
  if (b.size() != a.rows()) throw Error(ErrorCode::kDimensionMismatch, "hermitize rhs length");
  const std::size_t n = a.rows();
  DenseMatrix op(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      op(i, n + j) = a(i, j);
      op(n + j, i) = a(i, j);
    }
  }
  DenseVector rhs(2 * n, 0.0);
  std::copy(b.begin(), b.end(), rhs.begin());

  QuantumSystem sys;
  sys.n_qubits = ceil_log2(n) + 1;
  sys.op = std::move(op);
  sys.scale = norm2(b);
  sys.rhs_state = normalized(rhs);
  sys.mode = EmbeddingMode::kHermitized;
  return sys;
}

DenseVector extract_solution(std::span<const double> x_state, const QuantumSystem& sys,
                             std::size_t original_n) {
  if (x_state.size() != sys.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "extract_solution state length");
  }
  std::span<const double> block = x_state;
  if (sys.mode == EmbeddingMode::kHermitized) block = x_state.subspan(x_state.size() / 2);
  if (original_n > block.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "original_n exceeds the solution block");
  }
  block = block.first(original_n);
  const double nrm = norm2(block);
  if (nrm < 1e-10) {
    throw Error(ErrorCode::kDegenerateBlock,
                "solution block norm " + std::to_string(nrm) + " below 1e-10");
  }
  DenseVector out(block.begin(), block.end());
  for (double& x : out) x /= nrm;
  return out;
}

namespace {

struct WordMasks {
  std::size_t x = 0;  // bit flips (X or Y)
  std::size_t z = 0;  // phase bits (Z or Y)
  int n_y = 0;
};

WordMasks masks_of(const std::string& word) {
  WordMasks m;
  const std::size_t len = word.size();
  for (std::size_t q = 0; q < len; ++q) {
    const std::size_t bit = std::size_t{1} << (len - 1 - q);
    switch (word[q]) {
      case 'I': break;
      case 'X': m.x |= bit; break;
      case 'Y': m.x |= bit; m.z |= bit; ++m.n_y; break;
      case 'Z': m.z |= bit; break;
      default: throw Error(ErrorCode::kInvalidArgument, "bad Pauli letter in " + word);
    }
  }
  return m;
}

// i^{n_y} for even n_y.
double real_phase(int n_y) { return (n_y / 2) % 2 == 0 ? 1.0 : -1.0; }

double parity_sign(std::size_t bits) { return std::popcount(bits) % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

std::vector<PauliTerm> pauli_decompose(const DenseMatrix& op, double tol) {
  if (!op.is_square() || !is_power_of_two(op.rows())) {
    throw Error(ErrorCode::kNotPowerOfTwo, "pauli_decompose needs a 2^m square operator");
  }
  if (max_abs_diff(op, op.transposed()) > 1e-12) {
    throw Error(ErrorCode::kNotSymmetric, "pauli_decompose needs a symmetric operator");
  }
  const std::size_t dim = op.rows();
  const std::size_t m = ceil_log2(dim);
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

  std::vector<PauliTerm> terms;
  const std::size_t n_words = std::size_t{1} << (2 * m);
  std::string word(m, 'I');
  for (std::size_t code = 0; code < n_words; ++code) {
    // Base-4 digits of `code`, most significant digit = qubit 0.
    int n_y = 0;
    for (std::size_t q = 0; q < m; ++q) {
      const std::size_t digit = (code >> (2 * (m - 1 - q))) & 3u;
      word[q] = kLetters[digit];
      n_y += digit == 2;
    }
    // Odd-Y words have purely imaginary coefficients, which vanish for a real
    // symmetric operator.
    if (n_y % 2 != 0) continue;
    const WordMasks mk = masks_of(word);
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += parity_sign(k & mk.z) * op(k, k ^ mk.x);
    const double coeff = real_phase(n_y) * s / static_cast<double>(dim);
    if (std::abs(coeff) > tol) terms.push_back({coeff, word});
  }
  return terms;
}

DenseVector apply_pauli(const std::string& word, std::span<const double> v) {
  const WordMasks mk = masks_of(word);
  if (mk.n_y % 2 != 0) throw Error(ErrorCode::kInvalidArgument, "odd-Y word is not real");
  if (v.size() != (std::size_t{1} << word.size())) {
    throw Error(ErrorCode::kDimensionMismatch, "apply_pauli length");
  }
  const double phase = real_phase(mk.n_y);
  DenseVector out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    out[k ^ mk.x] = phase * parity_sign(k & mk.z) * v[k];
  }
  return out;
}

DenseMatrix pauli_sum_matrix(std::span<const PauliTerm> terms) {
  if (terms.empty()) throw Error(ErrorCode::kInvalidArgument, "empty Pauli term list");
  const std::size_t dim = std::size_t{1} << terms.front().word.size();
  DenseMatrix out(dim, dim);
  for (const auto& t : terms) {
    const WordMasks mk = masks_of(t.word);
    if (mk.n_y % 2 != 0) throw Error(ErrorCode::kInvalidArgument, "odd-Y word is not real");
    const double phase = real_phase(mk.n_y) * t.coeff;
    for (std::size_t k = 0; k < dim; ++k) out(k ^ mk.x, k) += phase * parity_sign(k & mk.z);
  }
  return out;
}

void write_pauli_terms(std::ostream& out, std::span<const PauliTerm> terms) {
  char buf[64];
  for (const auto& t : terms) {
    std::snprintf(buf, sizeof buf, "%.17g", t.coeff);
    out << buf << ' ' << t.word << '\n';
  }
}

}  // namespace vqlsp
