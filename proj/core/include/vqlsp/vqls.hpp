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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "vqlsp/ansatz.hpp"
#include "vqlsp/dense.hpp"
#include "vqlsp/embedding.hpp"

namespace vqlsp {

struct VqlsConfig {
  std::size_t depth = 20;
  std::size_t iterations = 10000;
  double learning_rate = 0.001;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  double init_scale = 0.1;  // θ₀ ~ U[-init_scale, init_scale]
  std::uint64_t seed = 0;
  EmbeddingMode mode = EmbeddingMode::kHermitized;
  bool preconditioned = true;
  std::size_t trace_every = 1;  // keep every k-th iteration in the trace

  // Throws InvalidArgument on iterations == 0, learning_rate <= 0, betas
  // outside [0, 1), negative epsilon/init_scale, or trace_every == 0.
  void validate() const;
};

struct TraceRecord {
  std::size_t iteration = 0;
  double cost = 0.0;
  double grad_norm = 0.0;
  double elapsed_s = 0.0;
};

/// C(θ) = 1 − ⟨rhs|op|x⟩² / ⟨x|opᵀop|x⟩ with |x⟩ = V(θ)|rhs⟩.
/// Throws DegenerateOperator when ⟨x|opᵀop|x⟩ < 1e-300.
double cost(const AnsatzParams& theta, const QuantumSystem& sys);

struct CostGradient {
  double cost = 0.0;
  std::vector<double> grad;
};

/// Cost and its exact gradient for one system. Caches opᵀ·rhs so repeated
/// evaluations during training cost one forward and one reverse sweep over
/// the circuit plus two operator products.
///
/// The gradient is exact. Each component needs ∂_j g and ∂_j h, which follow
/// from the overlaps ⟨opᵀrhs|x(θ ± π·e_j)⟩ and ⟨opᵀop·x|x(θ ± π·e_j)⟩.
/// Rather than preparing shifted states, the overlaps are read off by
/// carrying both covectors backwards through the circuit, so a full
/// gradient costs O(P) gate applications.
class CostEvaluator {
 public:
  explicit CostEvaluator(const QuantumSystem& sys);

  double cost(const AnsatzParams& theta) const;
  CostGradient cost_and_gradient(const AnsatzParams& theta) const;

  const QuantumSystem& system() const noexcept { return *sys_; }

 private:
  const QuantumSystem* sys_;
  StateVector initial_;
  DenseVector op_t_rhs_;
};

std::vector<double> grad_cost(const AnsatzParams& theta, const QuantumSystem& sys);

/// Parameter-shift gradient computed literally from 2P circuits at θ ± π/2,
/// applying the rule to the expectation values g² and h. Quadratic in the
/// parameter count; kept as a cross-check for grad_cost.
std::vector<double> grad_cost_shift_reference(const AnsatzParams& theta, const QuantumSystem& sys);

/// The same cost assembled term-by-term from a Pauli decomposition of op:
/// g = Σ_k α_k⟨rhs|P_k|x⟩, h = Σ_{k,k'} α_k α_k'⟨x|P_k' P_k|x⟩. These are the
/// quantities a Hadamard-test implementation would estimate.
double cost_via_pauli(const AnsatzParams& theta, const QuantumSystem& sys,
                      std::span<const PauliTerm> terms);

struct AdamHyper {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::uint64_t t = 0;

  explicit AdamState(std::size_t n = 0) : m(n, 0.0), v(n, 0.0) {}
};

/// One bias-corrected Adam update of `params` in place.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grad,
               const AdamHyper& hyper);

struct TrainResult {
  AnsatzParams final_params;
  double final_cost = 0.0;
  AnsatzParams best_params;
  double best_cost = 0.0;
  std::vector<TraceRecord> trace;
};

/// Runs cfg.iterations Adam steps from θ₀ ~ U[-init_scale, init_scale]
/// (seeded by cfg.seed). The trace holds iterations 0, k, 2k, … (k =
/// trace_every) plus the final iterate at index cfg.iterations; each record
/// is the cost and gradient norm at θ before that step's update.
/// Deterministic in (sys, cfg) apart from elapsed_s.
TrainResult train(const QuantumSystem& sys, const VqlsConfig& cfg);

AnsatzParams initial_params(std::size_t n_qubits, const VqlsConfig& cfg);

/// Least-squares scale s* = ⟨x_vqls, x_exact⟩ / ⟨x_vqls, x_vqls⟩.
double alignment_scale(std::span<const double> x_vqls, std::span<const double> x_exact);

/// |s*·x_vqls − x_exact| componentwise. Throws ZeroExact if x_exact = 0.
DenseVector residuals(std::span<const double> x_vqls, std::span<const double> x_exact);

/// CSV with header `iteration,cost,grad_norm,elapsed_s`. With
/// include_timing = false the elapsed column is written as 0 so reruns are
/// byte-identical.
void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace, bool include_timing);

}  // namespace vqlsp
