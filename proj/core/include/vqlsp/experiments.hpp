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
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vqlsp/dense.hpp"
#include "vqlsp/embedding.hpp"
#include "vqlsp/sparse.hpp"
#include "vqlsp/vqls.hpp"

namespace vqlsp {

inline constexpr const char* kToolName = "vqls-precond";
inline constexpr const char* kToolVersion = "0.1.0";

enum class ExperimentKind { kSolve, kSweepDepth, kSpectrum, kHeat };

struct HeatConfig {
  std::size_t n_interior = 128;
  double f = 1.0;
  double length = 1.0;
};

/// Defaults give the full-scale run: 128×128 instances at density
/// 0.2, ten seeds, depths 1..20, and the VqlsConfig defaults (depth 20,
/// 10,000 Adam iterations at lr 0.001, hermitized with one ancilla).
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kSolve;
  std::size_t n = 128;
  double density = 0.2;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<std::size_t> depths = {1, 2,  3,  4,  5,  6,  7,  8,  9,  10,
                                     11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
  VqlsConfig vqls;
  HeatConfig heat;
  std::filesystem::path output_dir = "out";
  // Optional Matrix Market file replacing the random matrix (solve/spectrum).
  std::optional<std::filesystem::path> matrix_file;
  bool run_plain = true;
  bool run_precond = true;
  bool dump_matrix = false;
  bool timing = false;
  std::size_t max_redraws = 100;  // ZeroPivot replacement attempts per seed
};

ExperimentConfig ci_profile();
ExperimentConfig paper_profile();

/// Parses a JSON config on top of `base`. Every key is optional; unknown
/// keys are rejected. Throws Error(ParseError | InvalidArgument).
ExperimentConfig parse_config(const std::string& json_text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});
std::string config_to_json(const ExperimentConfig& cfg);

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_kind(std::string_view name);

// ---------------------------------------------------------------------------

struct SeedStatus {
  std::uint64_t requested = 0;
  std::uint64_t used = 0;
  std::vector<std::uint64_t> skipped;  // seeds rejected with ZeroPivot
  bool completed = false;
};

struct RunManifest {
  std::string command;
  std::string config_json;
  std::vector<SeedStatus> seeds;
  std::vector<std::string> artifacts;  // file names relative to output_dir
  std::string summary_json = "{}";
};

std::string manifest_to_json(const RunManifest& m);

/// A classical instance together with its ILU(0)-preconditioned dense pair.
struct ProblemInstance {
  CsrMatrix a;
  DenseVector b;
  DenseMatrix a_precond;
  DenseVector b_precond;
  DenseVector x_exact;  // lu_solve(dense(a), b)
};

ProblemInstance make_instance(CsrMatrix a, DenseVector b);

/// Draws random_sparse/random_rhs for `requested`, moving to seed+1, +2, …
/// whenever ilu0 reports a zero pivot. `status` records the lineage.
/// Throws the last ZeroPivotError after max_redraws attempts.
ProblemInstance draw_instance(std::size_t n, double density, std::uint64_t requested,
                              std::size_t max_redraws, SeedStatus& status);

/// Same replacement policy over an arbitrary per-seed generator.
using InstanceFactory = std::function<ProblemInstance(std::uint64_t seed)>;
ProblemInstance draw_instance(const InstanceFactory& make, std::uint64_t requested,
                              std::size_t max_redraws, SeedStatus& status);

/// Pads to a power of two and embeds in the requested mode.
QuantumSystem build_quantum_system(const DenseMatrix& a, std::span<const double> b,
                                   EmbeddingMode mode);

struct ArmResult {
  TrainResult train;
  DenseVector x_final;  // unit-norm extracted solution, final iterate
  DenseVector x_best;   // same for the min-cost iterate
};

ArmResult run_arm(const ProblemInstance& inst, bool preconditioned, const VqlsConfig& cfg);

struct Aggregate {
  double mean = 0.0;
  double sem = 0.0;  // sample std-dev / √count; 0 for a single value
  double median = 0.0;
};

Aggregate aggregate(std::span<const double> values);

struct SweepSample {
  std::uint64_t seed = 0;
  std::size_t depth = 0;
  bool preconditioned = false;
  double final_cost = 0.0;
  double best_cost = 0.0;
};

struct SweepRow {
  std::size_t depth = 0;
  Aggregate plain;
  Aggregate precond;
  std::size_t n_seeds = 0;
};

std::vector<SweepRow> aggregate_sweep(std::span<const SweepSample> samples,
                                      std::span<const std::size_t> depths);

/// Runs fn(0..count-1) on up to `threads` workers (0 = VQLS_THREADS or the
/// hardware concurrency). Results must be written to per-index slots; the
/// first exception is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);
std::size_t default_thread_count();

/// Writes via a temporary file and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// Commands. Each writes its CSVs and manifest.json into cfg.output_dir and
// returns the manifest.
RunManifest run_solve(const ExperimentConfig& cfg);
RunManifest run_sweep_depth(const ExperimentConfig& cfg);
RunManifest run_spectrum(const ExperimentConfig& cfg);
RunManifest run_heat(const ExperimentConfig& cfg);
RunManifest run_experiment(const ExperimentConfig& cfg);

}  // namespace vqlsp
