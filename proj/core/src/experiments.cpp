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

#include "vqlsp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "vqlsp/error.hpp"
#include "vqlsp/ilu.hpp"

namespace vqlsp {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Configuration

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSolve: return "solve";
    case ExperimentKind::kSweepDepth: return "sweep-depth";
    case ExperimentKind::kSpectrum: return "spectrum";
    case ExperimentKind::kHeat: return "heat";
  }
  return "unknown";
}

ExperimentKind parse_kind(std::string_view name) {
  if (name == "solve") return ExperimentKind::kSolve;
  if (name == "sweep-depth" || name == "sweep_depth") return ExperimentKind::kSweepDepth;
  if (name == "spectrum") return ExperimentKind::kSpectrum;
  if (name == "heat") return ExperimentKind::kHeat;
  throw Error(ErrorCode::kInvalidArgument, "unknown experiment kind '" + std::string(name) + "'");
}

ExperimentConfig ci_profile() {
  ExperimentConfig cfg;
  cfg.seeds = {1, 2, 3};
  cfg.depths = {2, 6, 10};
  cfg.vqls.iterations = 2000;
  return cfg;
}

ExperimentConfig paper_profile() { return ExperimentConfig{}; }

namespace {

std::string_view mode_name(EmbeddingMode m) {
  return m == EmbeddingMode::kDirect ? "direct" : "hermitized";
}

EmbeddingMode parse_mode(const std::string& s) {
  if (s == "direct") return EmbeddingMode::kDirect;
  if (s == "hermitized") return EmbeddingMode::kHermitized;
  throw Error(ErrorCode::kInvalidArgument, "mode must be 'direct' or 'hermitized', got '" + s + "'");
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw Error(ErrorCode::kInvalidArgument, "unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read_if(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

void validate(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); };
  cfg.vqls.validate();
  if (cfg.n < 2) fail("n must be >= 2");
  if (!(cfg.density > 0.0 && cfg.density <= 1.0)) fail("density must lie in (0, 1]");
  if (cfg.seeds.empty()) fail("seeds must not be empty");
  if (cfg.depths.empty()) fail("depths must not be empty");
  if (!cfg.run_plain && !cfg.run_precond) fail("at least one arm must run");
  if (cfg.heat.n_interior < 1) fail("heat.n_interior must be >= 1");
  if (!(cfg.heat.length > 0.0)) fail("heat.length must be > 0");
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text, ExperimentConfig cfg) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "config root must be an object");
  try {
    reject_unknown(j,
                   {"kind", "n", "density", "seeds", "depths", "vqls", "heat", "output_dir",
                    "matrix_file", "run_plain", "run_precond", "dump_matrix", "timing",
                    "max_redraws"},
                   "config");
    if (j.contains("kind")) cfg.kind = parse_kind(j.at("kind").get<std::string>());
    read_if(j, "n", cfg.n);
    read_if(j, "density", cfg.density);
    read_if(j, "seeds", cfg.seeds);
    read_if(j, "depths", cfg.depths);
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("matrix_file")) cfg.matrix_file = j.at("matrix_file").get<std::string>();
    read_if(j, "run_plain", cfg.run_plain);
    read_if(j, "run_precond", cfg.run_precond);
    read_if(j, "dump_matrix", cfg.dump_matrix);
    read_if(j, "timing", cfg.timing);
    read_if(j, "max_redraws", cfg.max_redraws);
    if (j.contains("heat")) {
      const json& h = j.at("heat");
      reject_unknown(h, {"n_interior", "f", "length"}, "heat");
      read_if(h, "n_interior", cfg.heat.n_interior);
      read_if(h, "f", cfg.heat.f);
      read_if(h, "length", cfg.heat.length);
    }
    if (j.contains("vqls")) {
      const json& v = j.at("vqls");
      reject_unknown(v,
                     {"depth", "iterations", "learning_rate", "adam_beta1", "adam_beta2",
                      "adam_epsilon", "init_scale", "seed", "mode", "trace_every"},
                     "vqls");
      read_if(v, "depth", cfg.vqls.depth);
      read_if(v, "iterations", cfg.vqls.iterations);
      read_if(v, "learning_rate", cfg.vqls.learning_rate);
      read_if(v, "adam_beta1", cfg.vqls.adam_beta1);
      read_if(v, "adam_beta2", cfg.vqls.adam_beta2);
      read_if(v, "adam_epsilon", cfg.vqls.adam_epsilon);
      read_if(v, "init_scale", cfg.vqls.init_scale);
      read_if(v, "seed", cfg.vqls.seed);
      read_if(v, "trace_every", cfg.vqls.trace_every);
      if (v.contains("mode")) cfg.vqls.mode = parse_mode(v.at("mode").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const fs::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

namespace {

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["kind"] = std::string(to_string(cfg.kind));
  j["n"] = cfg.n;
  j["density"] = cfg.density;
  j["seeds"] = cfg.seeds;
  j["depths"] = cfg.depths;
  j["output_dir"] = cfg.output_dir.string();
  if (cfg.matrix_file) j["matrix_file"] = cfg.matrix_file->string();
  j["run_plain"] = cfg.run_plain;
  j["run_precond"] = cfg.run_precond;
  j["dump_matrix"] = cfg.dump_matrix;
  j["timing"] = cfg.timing;
  j["max_redraws"] = cfg.max_redraws;
  j["heat"] = {{"n_interior", cfg.heat.n_interior}, {"f", cfg.heat.f}, {"length", cfg.heat.length}};
  j["vqls"] = {{"depth", cfg.vqls.depth},
               {"iterations", cfg.vqls.iterations},
               {"learning_rate", cfg.vqls.learning_rate},
               {"adam_beta1", cfg.vqls.adam_beta1},
               {"adam_beta2", cfg.vqls.adam_beta2},
               {"adam_epsilon", cfg.vqls.adam_epsilon},
               {"init_scale", cfg.vqls.init_scale},
               {"seed", cfg.vqls.seed},
               {"mode", std::string(mode_name(cfg.vqls.mode))},
               {"trace_every", cfg.vqls.trace_every}};
  return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& cfg) { return config_json(cfg).dump(2); }

std::string manifest_to_json(const RunManifest& m) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = m.command;
  j["config"] = json::parse(m.config_json);
  json seeds = json::array();
  for (const auto& s : m.seeds) {
    seeds.push_back({{"requested", s.requested},
                     {"used", s.used},
                     {"skipped_zero_pivot", s.skipped},
                     {"status", s.completed ? "completed" : "failed"}});
  }
  j["seeds"] = seeds;
  j["artifacts"] = m.artifacts;
  j["summary"] = json::parse(m.summary_json);
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Instances and arms

ProblemInstance make_instance(CsrMatrix a, DenseVector b) {
  ProblemInstance inst;
  const IluFactors f = ilu0(a);
  PreconditionedSystem p = preconditioned_system(a, b, f);
  inst.x_exact = lu_solve(to_dense(a), b);
  inst.a = std::move(a);
  inst.b = std::move(b);
  inst.a_precond = std::move(p.a);
  inst.b_precond = std::move(p.b);
  return inst;
}

ProblemInstance draw_instance(const InstanceFactory& make, std::uint64_t requested,
                              std::size_t max_redraws, SeedStatus& status) {
  status = SeedStatus{requested, requested, {}, false};
  for (std::size_t attempt = 0;; ++attempt) {
    const std::uint64_t seed = requested + attempt;
    try {
      ProblemInstance inst = make(seed);
      status.used = seed;
      return inst;
    } catch (const ZeroPivotError&) {
      status.skipped.push_back(seed);
      if (attempt >= max_redraws) throw;
    }
  }
}

ProblemInstance draw_instance(std::size_t n, double density, std::uint64_t requested,
                              std::size_t max_redraws, SeedStatus& status) {
  return draw_instance(
      [&](std::uint64_t seed) {
        return make_instance(random_sparse(n, density, {seed}), random_rhs(n, {seed}));
      },
      requested, max_redraws, status);
}

QuantumSystem build_quantum_system(const DenseMatrix& a, std::span<const double> b,
                                   EmbeddingMode mode) {
  const PaddedSystem p = pad_to_power_of_two(a, b);
  return mode == EmbeddingMode::kHermitized ? hermitize(p.a, p.b) : direct_system(p.a, p.b);
}

ArmResult run_arm(const ProblemInstance& inst, bool preconditioned, const VqlsConfig& cfg) {
  VqlsConfig arm_cfg = cfg;
  arm_cfg.preconditioned = preconditioned;
  const QuantumSystem sys =
      preconditioned ? build_quantum_system(inst.a_precond, inst.b_precond, cfg.mode)
                     : build_quantum_system(to_dense(inst.a), inst.b, cfg.mode);
  ArmResult out;
  out.train = train(sys, arm_cfg);
  const std::size_t n = inst.a.n();
  const StateVector init(sys.n_qubits, sys.rhs_state);
  out.x_final = extract_solution(prepare_state(out.train.final_params, init).amps(), sys, n);
  out.x_best = extract_solution(prepare_state(out.train.best_params, init).amps(), sys, n);
  return out;
}

// ---------------------------------------------------------------------------
// Statistics and concurrency

Aggregate aggregate(std::span<const double> values) {
  Aggregate a;
  if (values.empty()) return a;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) return {*lo, 0.0, *lo};  // exact, free of summation rounding
  const double count = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  a.mean = sum / count;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.sem = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  a.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return a;
}

std::vector<SweepRow> aggregate_sweep(std::span<const SweepSample> samples,
                                      std::span<const std::size_t> depths) {
  std::vector<SweepRow> rows;
  for (std::size_t d : depths) {
    std::vector<double> plain, precond;
    for (const auto& s : samples) {
      if (s.depth != d) continue;
      (s.preconditioned ? precond : plain).push_back(s.final_cost);
    }
    rows.push_back({d, aggregate(plain), aggregate(precond), std::max(plain.size(), precond.size())});
  }
  return rows;
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("VQLS_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = default_thread_count();
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          next = count;
        }
      }
    });
  }
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw Error(ErrorCode::kIoError, "write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Commands

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class OutputSet {
 public:
  OutputSet(const ExperimentConfig& cfg, RunManifest& manifest)
      : dir_(cfg.output_dir), manifest_(manifest) {}

  void write(const std::string& name, const std::string& contents) {
    write_file_atomic(dir_ / name, contents);
    manifest_.artifacts.push_back(name);
  }

  void finish() {
    manifest_.artifacts.push_back("manifest.json");
    write_file_atomic(dir_ / "manifest.json", manifest_to_json(manifest_));
  }

 private:
  fs::path dir_;
  RunManifest& manifest_;
};

RunManifest start_manifest(const ExperimentConfig& cfg, ExperimentKind kind) {
  validate(cfg);
  RunManifest m;
  m.command = std::string(to_string(kind));
  ExperimentConfig snapshot = cfg;
  snapshot.kind = kind;
  m.config_json = config_to_json(snapshot);
  return m;
}

CsrMatrix load_matrix(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open matrix " + path.string());
  return read_matrix_market(in);
}

std::string vector_csv(const char* header, std::span<const double> v) {
  std::string s = std::string(header) + "\n";
  for (std::size_t i = 0; i < v.size(); ++i) s += std::to_string(i) + "," + num(v[i]) + "\n";
  return s;
}

void dump_instance(OutputSet& out, const ProblemInstance& inst) {
  std::ostringstream mm;
  write_matrix_market(mm, inst.a);
  out.write("matrix.mtx", mm.str());
  out.write("rhs.csv", vector_csv("index,b", inst.b));
}

std::string trace_csv(const TrainResult& r, bool timing) {
  std::ostringstream s;
  write_trace_csv(s, r.trace, timing);
  return s.str();
}

// Shared tail of solve and heat: both arms, traces, solutions, residuals.
json solve_pipeline(const ProblemInstance& inst, const ExperimentConfig& cfg, OutputSet& out) {
  std::optional<ArmResult> plain, precond;
  std::vector<std::function<void()>> jobs;
  if (cfg.run_plain) jobs.emplace_back([&] { plain = run_arm(inst, false, cfg.vqls); });
  if (cfg.run_precond) jobs.emplace_back([&] { precond = run_arm(inst, true, cfg.vqls); });
  parallel_for(jobs.size(), 0, [&](std::size_t i) { jobs[i](); });

  const std::size_t n = inst.a.n();
  const DenseVector nan_column(n, std::numeric_limits<double>::quiet_NaN());
  auto aligned = [&](const std::optional<ArmResult>& arm, bool best) {
    if (!arm) return nan_column;
    const DenseVector& x = best ? arm->x_best : arm->x_final;
    const double s = alignment_scale(x, inst.x_exact);
    DenseVector y(x);
    for (double& v : y) v *= s;
    return y;
  };
  auto resid = [&](const std::optional<ArmResult>& arm) {
    return arm ? residuals(arm->x_final, inst.x_exact) : nan_column;
  };

  if (plain) out.write("trace_plain.csv", trace_csv(plain->train, cfg.timing));
  if (precond) out.write("trace_precond.csv", trace_csv(precond->train, cfg.timing));

  for (bool best : {false, true}) {
    const DenseVector xp = aligned(plain, best);
    const DenseVector xq = aligned(precond, best);
    std::string s = "index,x_exact,x_vqls_plain,x_vqls_precond\n";
    for (std::size_t i = 0; i < n; ++i) {
      s += std::to_string(i) + "," + num(inst.x_exact[i]) + "," + num(xp[i]) + "," + num(xq[i]) +
           "\n";
    }
    out.write(best ? "solution_best.csv" : "solution.csv", s);
  }

  const DenseVector rp = resid(plain);
  const DenseVector rq = resid(precond);
  std::string s = "index,residual_plain,residual_precond\n";
  for (std::size_t i = 0; i < n; ++i) {
    s += std::to_string(i) + "," + num(rp[i]) + "," + num(rq[i]) + "\n";
  }
  out.write("residuals.csv", s);

  json summary = json::object();
  auto arm_summary = [&](const std::optional<ArmResult>& arm, const DenseVector& r) {
    if (!arm) return json(nullptr);
    return json{{"final_cost", arm->train.final_cost},
                {"best_cost", arm->train.best_cost},
                {"max_residual", norm_inf(r)}};
  };
  summary["plain"] = arm_summary(plain, rp);
  summary["precond"] = arm_summary(precond, rq);
  return summary;
}

}  // namespace

RunManifest run_solve(const ExperimentConfig& cfg) {
  RunManifest m = start_manifest(cfg, ExperimentKind::kSolve);
  OutputSet out(cfg, m);
  SeedStatus status;
  ProblemInstance inst;
  if (cfg.matrix_file) {
    CsrMatrix a = load_matrix(*cfg.matrix_file);
    DenseVector b = random_rhs(a.n(), {cfg.seeds.front()});
    status = {cfg.seeds.front(), cfg.seeds.front(), {}, false};
    inst = make_instance(std::move(a), std::move(b));
  } else {
    inst = draw_instance(cfg.n, cfg.density, cfg.seeds.front(), cfg.max_redraws, status);
  }
  if (cfg.dump_matrix) dump_instance(out, inst);
  json summary = solve_pipeline(inst, cfg, out);
  status.completed = true;
  m.seeds.push_back(status);
  m.summary_json = summary.dump();
  out.finish();
  return m;
}

RunManifest run_heat(const ExperimentConfig& cfg) {
  RunManifest m = start_manifest(cfg, ExperimentKind::kHeat);
  OutputSet out(cfg, m);
  PoissonProblem p = poisson_1d(cfg.heat.n_interior, cfg.heat.f, cfg.heat.length);
  const double h = p.spacing;
  ProblemInstance inst = make_instance(std::move(p.a), std::move(p.b));
  if (cfg.dump_matrix) dump_instance(out, inst);

  std::string s = "index,x_node,u_parabola,u_lu_solve\n";
  for (std::size_t i = 0; i < inst.a.n(); ++i) {
    const double x = h * static_cast<double>(i + 1);
    const double u = cfg.heat.f * x * (cfg.heat.length - x) / 2.0;
    s += std::to_string(i) + "," + num(x) + "," + num(u) + "," + num(inst.x_exact[i]) + "\n";
  }
  out.write("heat_exact.csv", s);

  json summary = solve_pipeline(inst, cfg, out);
  m.summary_json = summary.dump();
  out.finish();
  return m;
}

RunManifest run_sweep_depth(const ExperimentConfig& cfg) {
  if (cfg.seeds.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "sweep-depth needs at least two seeds");
  }
  RunManifest m = start_manifest(cfg, ExperimentKind::kSweepDepth);
  OutputSet out(cfg, m);

  std::vector<ProblemInstance> instances(cfg.seeds.size());
  m.seeds.resize(cfg.seeds.size());
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    instances[i] = draw_instance(cfg.n, cfg.density, cfg.seeds[i], cfg.max_redraws, m.seeds[i]);
  }

  std::vector<bool> arms;
  if (cfg.run_plain) arms.push_back(false);
  if (cfg.run_precond) arms.push_back(true);
  std::vector<SweepSample> samples;
  for (std::size_t d : cfg.depths) {
    for (std::size_t i = 0; i < instances.size(); ++i) {
      for (bool pc : arms) samples.push_back({m.seeds[i].used, d, pc, 0.0, 0.0});
    }
  }
  parallel_for(samples.size(), 0, [&](std::size_t t) {
    SweepSample& s = samples[t];
    const std::size_t inst_idx = static_cast<std::size_t>(
        std::find_if(m.seeds.begin(), m.seeds.end(),
                     [&](const SeedStatus& st) { return st.used == s.seed; }) -
        m.seeds.begin());
    VqlsConfig vc = cfg.vqls;
    vc.depth = s.depth;
    vc.trace_every = vc.iterations;
    vc.preconditioned = s.preconditioned;
    const ProblemInstance& inst = instances[inst_idx];
    const QuantumSystem sys =
        s.preconditioned ? build_quantum_system(inst.a_precond, inst.b_precond, vc.mode)
                         : build_quantum_system(to_dense(inst.a), inst.b, vc.mode);
    const TrainResult r = train(sys, vc);
    s.final_cost = r.final_cost;
    s.best_cost = r.best_cost;
  });
  for (auto& st : m.seeds) st.completed = true;

  std::string raw = "seed,depth,arm,final_cost,best_cost\n";
  for (const auto& s : samples) {
    raw += std::to_string(s.seed) + "," + std::to_string(s.depth) + "," +
           (s.preconditioned ? "precond" : "plain") + "," + num(s.final_cost) + "," +
           num(s.best_cost) + "\n";
  }
  out.write("sweep_raw.csv", raw);

  const auto rows = aggregate_sweep(samples, cfg.depths);
  std::string agg =
      "depth,mean_cost_plain,sem_plain,mean_cost_precond,sem_precond,n_seeds,median_plain,"
      "median_precond\n";
  json summary = json::array();
  for (const auto& r : rows) {
    agg += std::to_string(r.depth) + "," + num(r.plain.mean) + "," + num(r.plain.sem) + "," +
           num(r.precond.mean) + "," + num(r.precond.sem) + "," + std::to_string(r.n_seeds) + "," +
           num(r.plain.median) + "," + num(r.precond.median) + "\n";
    summary.push_back({{"depth", r.depth},
                       {"mean_cost_plain", r.plain.mean},
                       {"mean_cost_precond", r.precond.mean}});
  }
  out.write("sweep.csv", agg);
  m.summary_json = summary.dump();
  out.finish();
  return m;
}

RunManifest run_spectrum(const ExperimentConfig& cfg) {
  RunManifest m = start_manifest(cfg, ExperimentKind::kSpectrum);
  OutputSet out(cfg, m);

  std::vector<ProblemInstance> instances;
  if (cfg.matrix_file) {
    CsrMatrix a = load_matrix(*cfg.matrix_file);
    DenseVector b = random_rhs(a.n(), {cfg.seeds.front()});
    instances.push_back(make_instance(std::move(a), std::move(b)));
    m.seeds.push_back({cfg.seeds.front(), cfg.seeds.front(), {}, false});
  } else {
    for (std::uint64_t seed : cfg.seeds) {
      SeedStatus st;
      instances.push_back(draw_instance(cfg.n, cfg.density, seed, cfg.max_redraws, st));
      m.seeds.push_back(st);
    }
  }

  struct Spectra {
    DenseVector plain, precond;
    double cond_plain = 0.0, cond_precond = 0.0;
  };
  std::vector<Spectra> spectra(instances.size());
  parallel_for(instances.size(), 0, [&](std::size_t i) {
    Spectra& s = spectra[i];
    s.plain = singular_values(to_dense(instances[i].a));
    s.precond = singular_values(instances[i].a_precond);
    auto cond = [](const DenseVector& sv) {
      return sv.back() < 1e-300 ? std::numeric_limits<double>::infinity() : sv.front() / sv.back();
    };
    s.cond_plain = cond(s.plain);
    s.cond_precond = cond(s.precond);
  });
  for (auto& st : m.seeds) st.completed = true;

  std::string raw = "seed,rank,sigma_plain,sigma_precond\n";
  std::string cond = "seed,cond_plain,cond_precond\n";
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    const std::string seed = std::to_string(m.seeds[i].used);
    for (std::size_t r = 0; r < spectra[i].plain.size(); ++r) {
      raw += seed + "," + std::to_string(r) + "," + num(spectra[i].plain[r]) + "," +
             num(spectra[i].precond[r]) + "\n";
    }
    cond += seed + "," + num(spectra[i].cond_plain) + "," + num(spectra[i].cond_precond) + "\n";
  }
  out.write("spectrum_raw.csv", raw);
  out.write("condition.csv", cond);

  std::string agg =
      "rank,mean_sigma_plain,sem_sigma_plain,mean_sigma_precond,sem_sigma_precond,"
      "mean_norm_sigma_plain,sem_norm_sigma_plain,mean_norm_sigma_precond,"
      "sem_norm_sigma_precond\n";
  const std::size_t n_rank = spectra.front().plain.size();
  for (std::size_t r = 0; r < n_rank; ++r) {
    std::vector<double> sp, sq, np, nq;
    for (const auto& s : spectra) {
      sp.push_back(s.plain[r]);
      sq.push_back(s.precond[r]);
      np.push_back(s.plain.front() > 0 ? s.plain[r] / s.plain.front() : 0.0);
      nq.push_back(s.precond.front() > 0 ? s.precond[r] / s.precond.front() : 0.0);
    }
    const Aggregate a = aggregate(sp), b = aggregate(sq), c = aggregate(np), d = aggregate(nq);
    agg += std::to_string(r) + "," + num(a.mean) + "," + num(a.sem) + "," + num(b.mean) + "," +
           num(b.sem) + "," + num(c.mean) + "," + num(c.sem) + "," + num(d.mean) + "," +
           num(d.sem) + "\n";
  }
  out.write("spectrum.csv", agg);

  json summary = json::array();
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    summary.push_back({{"seed", m.seeds[i].used},
                       {"cond_plain", num(spectra[i].cond_plain)},
                       {"cond_precond", num(spectra[i].cond_precond)}});
  }
  m.summary_json = summary.dump();
  out.finish();
  return m;
}

RunManifest run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::kSolve: return run_solve(cfg);
    case ExperimentKind::kSweepDepth: return run_sweep_depth(cfg);
    case ExperimentKind::kSpectrum: return run_spectrum(cfg);
    case ExperimentKind::kHeat: return run_heat(cfg);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown experiment kind");
}

}  // namespace vqlsp
