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

#include "vqlsp/vqls.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <cstdio>
#include <ostream>
#include <string>

#include "vqlsp/error.hpp"
#include "vqlsp/rng.hpp"

namespace vqlsp {

void VqlsConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (iterations < 1) fail("iterations must be >= 1");
  if (!(learning_rate > 0.0)) fail("learning_rate must be > 0");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0)) fail("adam_beta1 must lie in [0, 1)");
  if (!(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) fail("adam_beta2 must lie in [0, 1)");
  if (!(adam_epsilon >= 0.0)) fail("adam_epsilon must be >= 0");
  if (!(init_scale >= 0.0)) fail("init_scale must be >= 0");
  if (trace_every < 1) fail("trace_every must be >= 1");
}

namespace {

constexpr double kPi = std::numbers::pi;

void check_system(const AnsatzParams& theta, const QuantumSystem& sys) {
  if (theta.n_qubits() != sys.n_qubits || sys.rhs_state.size() != sys.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "ansatz does not match the quantum system");
  }
}

struct Overlaps {
  double g = 0.0;  // ⟨rhs|op|x⟩
  double h = 0.0;  // ⟨x|opᵀop|x⟩
};

double cost_from(const Overlaps& o) {
  if (!(o.h >= 1e-300)) {
    throw Error(ErrorCode::kDegenerateOperator, "op annihilates the ansatz state");
  }
  return 1.0 - o.g * o.g / o.h;
}

// Sums over amplitude pairs (a0, a1) of `qubit`:
//   A = Σ u0·a0 + u1·a1,   B = Σ u1·a0 − u0·a1
// so that ⟨u|RY(α)a⟩ = cos(α/2)·A + sin(α/2)·B.
std::pair<double, double> ry_overlap_terms(std::span<const double> u, std::span<const double> a,
                                           std::size_t n_qubits, std::size_t qubit) {
  const std::size_t stride = std::size_t{1} << (n_qubits - 1 - qubit);
  double sa = 0.0, sb = 0.0;
  for (std::size_t base = 0; base < a.size(); base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const double a0 = a[k], a1 = a[k + stride];
      const double u0 = u[k], u1 = u[k + stride];
      sa += u0 * a0 + u1 * a1;
      sb += u1 * a0 - u0 * a1;
    }
  }
  return {sa, sb};
}

double ry_overlap(std::pair<double, double> terms, double angle) {
  return std::cos(0.5 * angle) * terms.first + std::sin(0.5 * angle) * terms.second;
}

}  // namespace

CostEvaluator::CostEvaluator(const QuantumSystem& sys)
    : sys_(&sys),
      initial_(sys.n_qubits, sys.rhs_state),
      op_t_rhs_(matvec_transposed(sys.op, sys.rhs_state)) {}

double CostEvaluator::cost(const AnsatzParams& theta) const {
  check_system(theta, *sys_);
  const StateVector x = prepare_state(theta, initial_);
  const DenseVector y = matvec(sys_->op, x.amps());
  return cost_from({dot(sys_->rhs_state, y), dot(y, y)});
}

CostGradient CostEvaluator::cost_and_gradient(const AnsatzParams& theta) const {
  check_system(theta, *sys_);
  const std::size_t n = theta.n_qubits();
  const std::size_t depth = theta.depth();

  StateVector phi = prepare_state(theta, initial_);
  const DenseVector y = matvec(sys_->op, phi.amps());
  const Overlaps o{dot(sys_->rhs_state, y), dot(y, y)};
  CostGradient out;
  out.cost = cost_from(o);
  out.grad.assign(theta.size(), 0.0);

  // λ carries opᵀ·rhs and μ carries opᵀop·x backwards through the circuit.
  StateVector lambda(n, op_t_rhs_);
  StateVector mu(n, matvec_transposed(sys_->op, y));

  const double h2 = o.h * o.h;
  for (std::size_t layer = depth + 1; layer-- > 0;) {
    for (std::size_t q = n; q-- > 0;) {
      const std::size_t j = layer * n + q;
      const double angle = theta[j];
      phi.apply_ry(q, -angle);
      const auto tl = ry_overlap_terms(lambda.amps(), phi.amps(), n, q);
      const auto tm = ry_overlap_terms(mu.amps(), phi.amps(), n, q);
      // Overlaps are linear in the state, so the two-term rule for a
      // half-angle rotation uses shifts of ±π with weight 1/4.
      const double dg = 0.25 * (ry_overlap(tl, angle + kPi) - ry_overlap(tl, angle - kPi));
      const double dh = 0.5 * (ry_overlap(tm, angle + kPi) - ry_overlap(tm, angle - kPi));
      out.grad[j] = -(2.0 * o.g * dg * o.h - o.g * o.g * dh) / h2;
      lambda.apply_ry(q, -angle);
      mu.apply_ry(q, -angle);
    }
    if (layer > 0) {
      for (std::size_t q = n - 1; q-- > 0;) {
        phi.apply_cnot(q, q + 1);
        lambda.apply_cnot(q, q + 1);
        mu.apply_cnot(q, q + 1);
      }
    }
  }
  return out;
}

double cost(const AnsatzParams& theta, const QuantumSystem& sys) {
  return CostEvaluator(sys).cost(theta);
}

std::vector<double> grad_cost(const AnsatzParams& theta, const QuantumSystem& sys) {
  return CostEvaluator(sys).cost_and_gradient(theta).grad;
}

std::vector<double> grad_cost_shift_reference(const AnsatzParams& theta,
                                              const QuantumSystem& sys) {
  check_system(theta, sys);
  const StateVector initial(sys.n_qubits, sys.rhs_state);
  auto overlaps = [&](const StateVector& x) {
    const DenseVector y = matvec(sys.op, x.amps());
    return Overlaps{dot(sys.rhs_state, y), dot(y, y)};
  };
  const Overlaps o = overlaps(prepare_state(theta, initial));
  cost_from(o);

  // g² and h are expectation values of opᵀ|rhs⟩⟨rhs|op and opᵀop, so each
  // obeys the standard rule ∂f = (f(θ + π/2) − f(θ − π/2)) / 2.
  std::vector<double> grad(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const Overlaps p = overlaps(shifted_state(theta, j, +kShift, initial));
    const Overlaps m = overlaps(shifted_state(theta, j, -kShift, initial));
    const double dg2 = 0.5 * (p.g * p.g - m.g * m.g);
    const double dh = 0.5 * (p.h - m.h);
    grad[j] = -(dg2 * o.h - o.g * o.g * dh) / (o.h * o.h);
  }
  return grad;
}

double cost_via_pauli(const AnsatzParams& theta, const QuantumSystem& sys,
                      std::span<const PauliTerm> terms) {
  check_system(theta, sys);
  const StateVector x = prepare_state(theta, StateVector(sys.n_qubits, sys.rhs_state));
  std::vector<DenseVector> px;
  px.reserve(terms.size());
  for (const auto& t : terms) px.push_back(apply_pauli(t.word, x.amps()));

  Overlaps o;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    o.g += terms[k].coeff * dot(sys.rhs_state, px[k]);
    for (std::size_t kk = 0; kk < terms.size(); ++kk) {
      // Real Pauli words are symmetric: ⟨x|P_k' P_k|x⟩ = ⟨P_k' x|P_k x⟩.
      o.h += terms[k].coeff * terms[kk].coeff * dot(px[kk], px[k]);
    }
  }
  return cost_from(o);
}

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grad,
               const AdamHyper& hyper) {
  if (params.size() != grad.size() || state.m.size() != grad.size() ||
      state.v.size() != grad.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "adam_step size mismatch");
  }
  ++state.t;
  const double t = static_cast<double>(state.t);
  const double bc1 = 1.0 - std::pow(hyper.beta1, t);
  const double bc2 = 1.0 - std::pow(hyper.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    state.m[i] = hyper.beta1 * state.m[i] + (1.0 - hyper.beta1) * g;
    state.v[i] = hyper.beta2 * state.v[i] + (1.0 - hyper.beta2) * g * g;
    const double m_hat = state.m[i] / bc1;
    const double v_hat = state.v[i] / bc2;
    params[i] -= hyper.learning_rate * m_hat / (std::sqrt(v_hat) + hyper.epsilon);
  }
}

AnsatzParams initial_params(std::size_t n_qubits, const VqlsConfig& cfg) {
  AnsatzParams p(n_qubits, cfg.depth);
  auto eng = make_engine(cfg.seed, RngStream::kThetaInit);
  for (double& t : p.theta()) t = uniform(eng, -cfg.init_scale, cfg.init_scale);
  return p;
}

TrainResult train(const QuantumSystem& sys, const VqlsConfig& cfg) {
  cfg.validate();
  const CostEvaluator eval(sys);
  const AdamHyper hyper{cfg.learning_rate, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_epsilon};

  TrainResult res;
  AnsatzParams theta = initial_params(sys.n_qubits, cfg);
  AdamState adam(theta.size());
  res.best_params = theta;
  res.best_cost = std::numeric_limits<double>::infinity();

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  for (std::size_t it = 0; it <= cfg.iterations; ++it) {
    const CostGradient cg = eval.cost_and_gradient(theta);
    if (cg.cost < res.best_cost) {
      res.best_cost = cg.cost;
      res.best_params = theta;
    }
    if (it % cfg.trace_every == 0 || it == cfg.iterations) {
      res.trace.push_back({it, cg.cost, norm2(cg.grad), elapsed()});
    }
    if (it == cfg.iterations) {
      res.final_cost = cg.cost;
      break;
    }
    adam_step(adam, theta.theta(), cg.grad, hyper);
  }
  res.final_params = std::move(theta);
  return res;
}

double alignment_scale(std::span<const double> x_vqls, std::span<const double> x_exact) {
  const double den = dot(x_vqls, x_vqls);
  if (den == 0.0) return 0.0;
  return dot(x_vqls, x_exact) / den;
}

DenseVector residuals(std::span<const double> x_vqls, std::span<const double> x_exact) {
  if (x_vqls.size() != x_exact.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "residuals length mismatch");
  }
  if (norm_inf(x_exact) == 0.0) throw Error(ErrorCode::kZeroExact, "exact solution is zero");
  const double s = alignment_scale(x_vqls, x_exact);
  DenseVector r(x_exact.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::abs(s * x_vqls[i] - x_exact[i]);
  return r;
}

void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace, bool include_timing) {
  out << "iteration,cost,grad_norm,elapsed_s\n";
  char buf[128];
  for (const auto& r : trace) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.6f\n", r.iteration, r.cost, r.grad_norm,
                  include_timing ? r.elapsed_s : 0.0);
    out << buf;
  }
}

}  // namespace vqlsp
