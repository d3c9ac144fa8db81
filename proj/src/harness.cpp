#include "zoseg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <utility>

#include "zoseg/errors.hpp"

namespace zoseg::harness {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "problem.dim_x",      "problem.dim_y",     "problem.n",
      "problem.matrix_scale", "problem.lambda_min", "problem.lambda_max",
      "problem.seed",       "noise.kind",        "noise.delta",
      "estimator.kind",     "estimator.tau",     "estimator.batch",
      "sampling.kind",      "sampling.gamma",    "sampling.theory_safe",
      "solver.alpha",       "solver.iterations", "solver.record_every",
      "solver.schedule",    "init.scale",        "seed",
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// short form for filenames
std::string gshort(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void write_trajectory_csv(const std::string& path,
                          const std::map<std::string, std::string>& entries,
                          const Trajectory& trajectory) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open output file '" + path + "'");
  }
  for (const auto& [key, value] : entries) {
    out << "# " << key << "=" << value << "\n";
  }
  out << "iter,oracle_calls,residual_sq,beta\n";
  for (const TrajectoryPoint& p : trajectory.points) {
    out << p.iteration << "," << p.oracle_calls << "," << g17(p.residual_sq)
        << "," << g17(p.beta) << "\n";
  }
  if (!out) {
    throw Error("failed while writing '" + path + "'");
  }
}

const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Delta: return "delta";
    case SweepAxis::BatchSize: return "batch";
    case SweepAxis::Seed: return "seed";
  }
  return "axis";
}

}  // namespace

Config Config::defaults() {
  Config c;
  c.entries_ = {
      {"problem.dim_x", "64"},
      {"problem.dim_y", "64"},
      {"problem.n", "32"},
      {"problem.matrix_scale", "1"},
      {"problem.lambda_min", "0.1"},
      {"problem.lambda_max", "1"},
      {"problem.seed", "0"},
      {"noise.kind", "inverse_radius"},
      {"noise.delta", "0.001"},
      {"estimator.kind", "sphere_deterministic"},
      {"estimator.tau", "1"},
      {"estimator.batch", "128"},
      {"sampling.kind", "uniform"},
      {"sampling.gamma", "auto"},
      {"sampling.theory_safe", "true"},
      {"solver.alpha", "0.125"},
      {"solver.iterations", "1000"},
      {"solver.record_every", "10"},
      {"solver.schedule", "auto"},
      {"init.scale", "1"},
      {"seed", "0"},
  };
  return c;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  Config c = defaults();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') {
      continue;
    }
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key=value, got '" + stripped + "'");
    }
    c.set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  return c;
}

void Config::set(const std::string& key, const std::string& value) {
  if (known_keys().count(key) == 0) {
    std::string valid;
    for (const auto& k : known_keys()) {
      valid += valid.empty() ? k : ", " + k;
    }
    throw ConfigError("unknown config key '" + key + "' (valid keys: " +
                      valid + ")");
  }
  if (value.empty()) {
    throw ConfigError("config key '" + key + "' has an empty value");
  }
  entries_[key] = value;
}

bool Config::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

std::string Config::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ConfigError("missing config key '" + key + "'");
  }
  return it->second;
}

double Config::get_double(const std::string& key) const {
  const std::string raw = get_string(key);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != raw.size()) {
    throw ConfigError("config key '" + key + "': expected a real number, "
                      "got '" + raw + "'");
  }
  return value;
}

long Config::get_long(const std::string& key) const {
  const std::string raw = get_string(key);
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != raw.size()) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" +
                      raw + "'");
  }
  return value;
}

std::uint64_t Config::get_u64(const std::string& key) const {
  const std::string raw = get_string(key);
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != raw.size() || raw[0] == '-') {
    throw ConfigError("config key '" + key + "': expected an unsigned "
                      "integer, got '" + raw + "'");
  }
  return static_cast<std::uint64_t>(value);
}

bool Config::get_bool(const std::string& key) const {
  const std::string raw = get_string(key);
  if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
  if (raw == "false" || raw == "0" || raw == "no" || raw == "off") {
    return false;
  }
  throw ConfigError("config key '" + key + "': expected a boolean, got '" +
                    raw + "'");
}

ResolvedSetup resolve_setup(const Config& config) {
  ResolvedSetup s;

  QuadraticBilinearSpec spec;
  spec.dim_x = static_cast<int>(config.get_long("problem.dim_x"));
  spec.dim_y = static_cast<int>(config.get_long("problem.dim_y"));
  spec.n = static_cast<int>(config.get_long("problem.n"));
  spec.matrix_scale = config.get_double("problem.matrix_scale");
  spec.lambda_min = config.get_double("problem.lambda_min");
  spec.lambda_max = config.get_double("problem.lambda_max");
  spec.seed = config.get_u64("problem.seed");
  if (!(spec.lambda_min > 0.0)) {
    throw ConfigError("config key 'problem.lambda_min': must be positive");
  }
  s.problem =
      std::make_shared<SaddleProblem>(build_quadratic_bilinear(spec));
  s.aggregates =
      compute_aggregates(s.problem->monotonicity(), s.problem->lipschitz());

  const std::string est_kind = config.get_string("estimator.kind");
  if (est_kind == "first_order") {
    s.first_order = true;
  } else if (est_kind == "sphere_deterministic") {
    s.estimator.kind = EstimatorKind::SphereDeterministic;
  } else if (est_kind == "sphere_stochastic") {
    s.estimator.kind = EstimatorKind::SphereStochastic;
  } else if (est_kind == "gaussian_baseline") {
    s.estimator.kind = EstimatorKind::GaussianBaseline;
  } else {
    throw ConfigError("config key 'estimator.kind': expected "
                      "sphere_deterministic, sphere_stochastic, "
                      "gaussian_baseline, or first_order; got '" +
                      est_kind + "'");
  }
  s.estimator.tau = config.get_double("estimator.tau");
  s.estimator.batch_size = static_cast<int>(config.get_long("estimator.batch"));

  s.noise = NoiseModel::by_name(config.get_string("noise.kind"),
                                config.get_double("noise.delta"));

  const std::string sampling_kind = config.get_string("sampling.kind");
  SamplingKind kind;
  if (sampling_kind == "uniform") {
    kind = SamplingKind::Uniform;
  } else if (sampling_kind == "importance") {
    kind = SamplingKind::Importance;
  } else {
    throw ConfigError("config key 'sampling.kind': expected uniform or "
                      "importance, got '" + sampling_kind + "'");
  }
  std::optional<double> gamma;
  if (config.get_string("sampling.gamma") != "auto") {
    gamma = config.get_double("sampling.gamma");
  }
  s.strategy = build_strategy(kind, s.aggregates, s.problem->monotonicity(),
                              s.problem->lipschitz(), gamma,
                              config.get_bool("sampling.theory_safe"));

  s.solver.alpha = config.get_double("solver.alpha");
  s.solver.iterations = config.get_long("solver.iterations");
  s.solver.record_every = config.get_long("solver.record_every");
  s.solver.seed = config.get_u64("seed");

  std::string schedule = config.get_string("solver.schedule");
  if (schedule == "auto") {
    // the diminishing schedule targets the first-order guarantee; the
    // gradient-free path runs with fixed stepsizes by default
    schedule = s.first_order ? "stich" : "constant";
  }
  if (schedule == "constant") {
    s.solver.schedule = StepSchedule::constant();
  } else if (schedule == "stich") {
    const double L_ref = kind == SamplingKind::Uniform ? s.aggregates.L_max
                                                       : s.aggregates.L_bar;
    s.solver.schedule = StepSchedule::stich(
        s.aggregates.mu_bar / (96.0 * L_ref), s.solver.iterations);
  } else {
    throw ConfigError("config key 'solver.schedule': expected auto, "
                      "constant, or stich; got '" + schedule + "'");
  }

  const double init_scale = config.get_double("init.scale");
  s.z0 = Vec::Constant(s.problem->dim(), init_scale);

  s.resolved_entries = config.entries();
  s.resolved_entries["sampling.gamma"] = g17(s.strategy.base_gamma());
  s.resolved_entries["solver.schedule"] = schedule;
  return s;
}

Trajectory run_experiment(const Config& config, const std::string& out_csv,
                          std::ostream* log) {
  ResolvedSetup setup = resolve_setup(config);
  const auto t0 = std::chrono::steady_clock::now();
  Trajectory trajectory;
  try {
    if (setup.first_order) {
      BiasedFirstOrderOracle oracle(*setup.problem);
      trajectory = sseg_run(*setup.problem, oracle, setup.strategy,
                            setup.solver, setup.z0);
    } else {
      ZerothOrderOracle oracle(*setup.problem, setup.noise);
      trajectory = zosseg_run(*setup.problem, oracle, setup.strategy,
                              setup.estimator, setup.solver, setup.z0);
    }
  } catch (const SolverDivergence& diverged) {
    if (!out_csv.empty()) {
      write_trajectory_csv(out_csv, setup.resolved_entries, diverged.partial);
    }
    throw;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (!out_csv.empty()) {
    write_trajectory_csv(out_csv, setup.resolved_entries, trajectory);
  }
  if (log) {
    *log << "final residual_sq " << g17(trajectory.points.back().residual_sq)
         << " after " << trajectory.iterations << " iterations ("
         << gshort(seconds) << " s)\n";
  }
  return trajectory;
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) {
    throw ConfigError("run_sweep: empty value list");
  }
  std::filesystem::create_directories(spec.out_dir);

  struct PlannedRun {
    Config config;
    double axis_value;
    std::uint64_t seed;
    std::string path;
  };
  std::vector<PlannedRun> plan;

  std::vector<std::uint64_t> seeds = spec.seeds;
  if (seeds.empty()) {
    seeds.push_back(spec.base.get_u64("seed"));
  }

  for (const double value : spec.values) {
    if (spec.axis == SweepAxis::Seed) {
      // the axis itself enumerates seeds; a separate seed list would be
      // ambiguous, so it is ignored here
      PlannedRun run;
      run.config = spec.base;
      run.axis_value = value;
      run.seed = static_cast<std::uint64_t>(value);
      run.config.set("seed", std::to_string(run.seed));
      run.path = spec.out_dir + "/seed_" + std::to_string(run.seed) + ".csv";
      plan.push_back(std::move(run));
      continue;
    }
    for (const std::uint64_t seed : seeds) {
      PlannedRun run;
      run.config = spec.base;
      run.axis_value = value;
      run.seed = seed;
      if (spec.axis == SweepAxis::Delta) {
        run.config.set("noise.delta", g17(value));
      } else {
        run.config.set("estimator.batch",
                       std::to_string(static_cast<long>(value)));
      }
      run.config.set("seed", std::to_string(seed));
      run.path = spec.out_dir + "/" + axis_name(spec.axis) + "_" +
                 gshort(value) + "_seed" + std::to_string(seed) + ".csv";
      plan.push_back(std::move(run));
    }
  }

  std::vector<SweepRow> rows(plan.size());
  std::atomic<std::size_t> next{0};
  const int jobs = std::max(1, spec.jobs);

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plan.size()) {
        return;
      }
      SweepRow row;
      row.axis_value = plan[i].axis_value;
      row.seed = plan[i].seed;
      row.final_residual_sq = std::numeric_limits<double>::quiet_NaN();
      row.total_oracle_calls = 0;
      try {
        const Trajectory t = run_experiment(plan[i].config, plan[i].path);
        row.final_residual_sq = t.points.back().residual_sq;
        row.total_oracle_calls = t.points.back().oracle_calls;
      } catch (const SolverDivergence& e) {
        if (!e.partial.points.empty()) {
          row.final_residual_sq = e.partial.points.back().residual_sq;
          row.total_oracle_calls = e.partial.points.back().oracle_calls;
        }
        row.error = e.what();
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      // keep the summary single-line-per-row parseable
      std::replace(row.error.begin(), row.error.end(), ',', ';');
      std::replace(row.error.begin(), row.error.end(), '\n', ' ');
      rows[i] = std::move(row);
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  SweepResult result;
  result.rows = std::move(rows);
  result.all_ok = std::all_of(result.rows.begin(), result.rows.end(),
                              [](const SweepRow& r) { return r.error.empty(); });

  result.summary_path = spec.out_dir + "/summary.csv";
  std::ofstream out(result.summary_path);
  if (!out) {
    throw Error("cannot open output file '" + result.summary_path + "'");
  }
  out << "axis_value,seed,final_residual_sq,total_oracle_calls";
  if (!result.all_ok) {
    out << ",error";  // appended only when some run failed
  }
  out << "\n";
  for (const SweepRow& row : result.rows) {
    out << g17(row.axis_value) << "," << row.seed << ","
        << g17(row.final_residual_sq) << "," << row.total_oracle_calls;
    if (!result.all_ok) {
      out << "," << row.error;
    }
    out << "\n";
  }
  return result;
}

void emit_bound_overlay(const Config& config, const std::vector<long>& N_grid,
                        const std::string& out_csv) {
  if (N_grid.empty()) {
    throw ConfigError("emit_bound_overlay: empty N grid");
  }
  ResolvedSetup setup = resolve_setup(config);

  BoundInputs inputs;
  inputs.aggregates = setup.aggregates;
  inputs.R0_sq = residual_at(*setup.problem, setup.z0);
  inputs.sampling = setup.strategy.kind();
  inputs.sigma_star_sq = setup.strategy.kind() == SamplingKind::Uniform
                             ? sigma_star_squared(*setup.problem)
                             : sigma_star_squared_importance(*setup.problem);
  inputs.zeta = 0.0;
  inputs.d = setup.problem->dim();
  inputs.tau = setup.estimator.tau;
  inputs.Delta = setup.noise.bound();
  inputs.B = setup.estimator.batch_size;

  std::ofstream out(out_csv);
  if (!out) {
    throw Error("cannot open output file '" + out_csv + "'");
  }
  for (const auto& [key, value] : setup.resolved_entries) {
    out << "# " << key << "=" << value << "\n";
  }
  out << "N,bound\n";
  for (const long N : N_grid) {
    if (N < 1) {
      throw ConfigError("emit_bound_overlay: N grid entries must be >= 1");
    }
    inputs.N = N;
    double bound;
    if (setup.first_order) {
      bound = setup.strategy.kind() == SamplingKind::Uniform
                  ? sseg_us_bound(inputs)
                  : sseg_is_bound(inputs);
    } else {
      bound = zosseg_composed_exact_bound(inputs);
    }
    out << N << "," << g17(bound) << "\n";
  }
}

}  // namespace zoseg::harness
