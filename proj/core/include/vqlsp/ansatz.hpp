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
#include <numbers>
#include <span>
#include <vector>

#include "vqlsp/dense.hpp"

namespace vqlsp {

/// Real-amplitude register. RY and CNOT are real orthogonal maps, so no
/// complex storage is needed for this gate set.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t n_qubits);  // |0…0⟩
  StateVector(std::size_t n_qubits, std::vector<double> amps);

  static StateVector basis(std::size_t n_qubits, std::size_t index);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const double> amps() const noexcept { return amps_; }
  std::span<double> amps() noexcept { return amps_; }
  double norm() const { return norm2(amps_); }

  // In-place gates. Qubit 0 is the most significant index bit.
  void apply_ry(std::size_t qubit, double angle);
  void apply_cnot(std::size_t control, std::size_t target);

 private:
  std::size_t n_qubits_ = 0;
  std::vector<double> amps_;
};

StateVector apply_ry(StateVector s, std::size_t qubit, double angle);
StateVector apply_cnot(StateVector s, std::size_t control, std::size_t target);

/// Angles of the hardware-efficient RY/CNOT ansatz, flattened layer-major:
/// index j = layer·n_qubits + qubit, layers 0..depth.
class AnsatzParams {
 public:
  AnsatzParams() = default;
  AnsatzParams(std::size_t n_qubits, std::size_t depth);  // all zeros
  AnsatzParams(std::size_t n_qubits, std::size_t depth, std::vector<double> theta);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return theta_.size(); }

  double angle(std::size_t layer, std::size_t qubit) const {
    return theta_[layer * n_qubits_ + qubit];
  }
  std::span<const double> theta() const noexcept { return theta_; }
  std::span<double> theta() noexcept { return theta_; }
  double& operator[](std::size_t j) { return theta_[j]; }
  double operator[](std::size_t j) const { return theta_[j]; }

  friend bool operator==(const AnsatzParams&, const AnsatzParams&) = default;

 private:
  std::size_t n_qubits_ = 0;
  std::size_t depth_ = 0;
  std::vector<double> theta_;
};

struct GateCounts {
  std::size_t ry = 0;
  std::size_t cnot = 0;
};

/// V(θ)|initial⟩: RY layer 0, then for d = 1..depth a CNOT chain
/// (q → q+1 for q = 0..n−2) followed by RY layer d.
/// `counts`, when given, is incremented by the gates applied.
StateVector prepare_state(const AnsatzParams& params, const StateVector& initial,
                          GateCounts* counts = nullptr);

/// prepare_state with θ_j replaced by θ_j + shift. For an expectation value
/// f(θ) = ⟨x(θ)|O|x(θ)⟩ the shift rule f'(θ) = (f(θ + π/2) − f(θ − π/2)) / 2
/// holds exactly; for the state itself, ∂_j|x⟩ = (|x(θ + π)⟩ − |x(θ − π)⟩) / 4.
StateVector shifted_state(const AnsatzParams& params, std::size_t j, double shift,
                          const StateVector& initial);

inline constexpr double kShift = std::numbers::pi / 2.0;

}  // namespace vqlsp
