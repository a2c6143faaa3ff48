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

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vqlsp/error.hpp"
#include "vqlsp/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CliOptions {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> depth;
  std::optional<std::string> out;
  std::string profile = "paper";
  bool no_precond = false;
  bool dump_matrix = false;
  bool timing = false;
};

void add_common(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--config", o.config, "JSON config file");
  cmd->add_option("--seed", o.seed, "Single instance seed (replaces the seed list)");
  cmd->add_option("--depth", o.depth, "Ansatz depth (sweep-depth: single depth)");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--profile", o.profile, "Base profile")
      ->check(CLI::IsMember({"ci", "paper"}));
  cmd->add_flag("--no-precond", o.no_precond, "Skip the ILU(0)-preconditioned arm");
  cmd->add_flag("--dump-matrix", o.dump_matrix, "Write matrix.mtx and rhs.csv");
  cmd->add_flag("--timing", o.timing, "Record wall-clock seconds in traces");
}

vqlsp::ExperimentConfig resolve(vqlsp::ExperimentKind kind, const CliOptions& o) {
  vqlsp::ExperimentConfig cfg = o.profile == "ci" ? vqlsp::ci_profile() : vqlsp::paper_profile();
  if (o.config) cfg = vqlsp::load_config(*o.config, cfg);
  cfg.kind = kind;
  if (o.seed) cfg.seeds = {*o.seed};
  if (o.depth) {
    cfg.vqls.depth = *o.depth;
    cfg.depths = {*o.depth};
  }
  if (o.out) cfg.output_dir = *o.out;
  if (o.no_precond) cfg.run_precond = false;
  if (o.dump_matrix) cfg.dump_matrix = true;
  if (o.timing) cfg.timing = true;
  return cfg;
}

bool is_config_error(vqlsp::ErrorCode code) {
  using vqlsp::ErrorCode;
  return code == ErrorCode::kInvalidArgument || code == ErrorCode::kParseError ||
         code == ErrorCode::kIoError || code == ErrorCode::kDensityTooLow;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational linear solver workbench with ILU(0) preconditioning"};
  app.set_version_flag("--version", std::string(vqlsp::kToolName) + " " + vqlsp::kToolVersion);
  app.require_subcommand(1);

  CliOptions opts;
  struct Entry {
    const char* name;
    const char* help;
    vqlsp::ExperimentKind kind;
  };
  const Entry entries[] = {
      {"solve", "Train both arms on one random instance", vqlsp::ExperimentKind::kSolve},
      {"sweep-depth", "Final cost against ansatz depth over seeds",
       vqlsp::ExperimentKind::kSweepDepth},
      {"spectrum", "Singular values of A and the preconditioned matrix",
       vqlsp::ExperimentKind::kSpectrum},
      {"heat", "Steady-state 1D heat equation", vqlsp::ExperimentKind::kHeat},
  };
  std::optional<vqlsp::ExperimentKind> chosen;
  for (const auto& e : entries) {
    CLI::App* cmd = app.add_subcommand(e.name, e.help);
    add_common(cmd, opts);
    cmd->callback([&chosen, kind = e.kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    const vqlsp::ExperimentConfig cfg = resolve(*chosen, opts);
    const vqlsp::RunManifest m = vqlsp::run_experiment(cfg);
    std::cout << "wrote " << m.artifacts.size() << " files to " << cfg.output_dir.string() << "\n";
    return 0;
  } catch (const vqlsp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.is_numerical()) return kExitNumerical;
    return is_config_error(e.code()) ? kExitConfig : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
