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

#include "vqlsp/ansatz.hpp"

#include <cmath>
#include <string>

#include "vqlsp/error.hpp"

namespace vqlsp {

StateVector::StateVector(std::size_t n_qubits)
    : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits, 0.0) {
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<double> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
  if (amps_.size() != (std::size_t{1} << n_qubits_)) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(amps_.size()) + " amplitudes for " + std::to_string(n_qubits_) +
                    " qubits");
  }
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
  std::vector<double> amps(std::size_t{1} << n_qubits, 0.0);
  if (index >= amps.size()) throw Error(ErrorCode::kIndexOutOfRange, "basis index");
  amps[index] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

void StateVector::apply_ry(std::size_t qubit, double angle) {
  if (qubit >= n_qubits_) throw Error(ErrorCode::kIndexOutOfRange, "RY qubit");
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const std::size_t stride = std::size_t{1} << (n_qubits_ - 1 - qubit);
  const std::size_t dim = amps_.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const double a0 = amps_[k];
      const double a1 = amps_[k + stride];
      amps_[k] = c * a0 - s * a1;
      amps_[k + stride] = s * a0 + c * a1;
    }
  }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
  if (control >= n_qubits_ || target >= n_qubits_) {
    throw Error(ErrorCode::kIndexOutOfRange, "CNOT qubit");
  }
  if (control == target) throw Error(ErrorCode::kControlEqualsTarget, "CNOT control == target");
  const std::size_t cbit = std::size_t{1} << (n_qubits_ - 1 - control);
  const std::size_t tbit = std::size_t{1} << (n_qubits_ - 1 - target);
  for (std::size_t k = 0; k < amps_.size(); ++k) {
    if ((k & cbit) && !(k & tbit)) std::swap(amps_[k], amps_[k | tbit]);
  }
}

StateVector apply_ry(StateVector s, std::size_t qubit, double angle) {
  s.apply_ry(qubit, angle);
  return s;
}

StateVector apply_cnot(StateVector s, std::size_t control, std::size_t target) {
  s.apply_cnot(control, target);
  return s;
}

AnsatzParams::AnsatzParams(std::size_t n_qubits, std::size_t depth)
    : n_qubits_(n_qubits), depth_(depth), theta_(n_qubits * (depth + 1), 0.0) {}

AnsatzParams::AnsatzParams(std::size_t n_qubits, std::size_t depth, std::vector<double> theta)
    : n_qubits_(n_qubits), depth_(depth), theta_(std::move(theta)) {
  if (theta_.size() != n_qubits_ * (depth_ + 1)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(n_qubits_ * (depth_ + 1)) + " angles, got " +
                    std::to_string(theta_.size()));
  }
}

namespace {

void check_dims(const AnsatzParams& params, const StateVector& initial) {
  if (params.n_qubits() != initial.n_qubits()) {
    throw Error(ErrorCode::kDimensionMismatch, "ansatz and initial state qubit counts differ");
  }
}

void run_ansatz(const AnsatzParams& params, StateVector& s, GateCounts* counts) {
  const std::size_t n = params.n_qubits();
  for (std::size_t layer = 0; layer <= params.depth(); ++layer) {
    if (layer > 0) {
      for (std::size_t q = 0; q + 1 < n; ++q) s.apply_cnot(q, q + 1);
      if (counts && n > 1) counts->cnot += n - 1;
    }
    for (std::size_t q = 0; q < n; ++q) s.apply_ry(q, params.angle(layer, q));
    if (counts) counts->ry += n;
  }
}

}  // namespace

StateVector prepare_state(const AnsatzParams& params, const StateVector& initial,
                          GateCounts* counts) {
  check_dims(params, initial);
  StateVector s = initial;
  run_ansatz(params, s, counts);
  return s;
}

StateVector shifted_state(const AnsatzParams& params, std::size_t j, double shift,
                          const StateVector& initial) {
  if (j >= params.size()) throw Error(ErrorCode::kIndexOutOfRange, "parameter index");
  AnsatzParams p = params;
  p[j] += shift;
  return prepare_state(p, initial);
}

}  // namespace vqlsp
