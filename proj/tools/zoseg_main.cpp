// Command-line harness: reproduce single runs, sweeps over Delta / batch
// size / seeds, closed-form bound evaluation, and the Monte-Carlo
// validation suite.  All outputs are plain CSV with '#' comment headers.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zoseg/errors.hpp"
#include "zoseg/harness.hpp"

namespace {

using zoseg::harness::Config;

constexpr int kExitConfigError = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitCheckFailed = 4;

std::string default_out_dir() {
  const char* env = std::getenv("ZOSEG_OUT");
  return (env != nullptr && *env != '\0') ? env : ".";
}

Config load_config(const std::string& config_path,
                   const std::vector<std::string>& overrides,
                   std::optional<std::uint64_t> seed) {
  Config config =
      config_path.empty() ? Config::defaults() : Config::from_file(config_path);
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw zoseg::ConfigError("--set expects key=value, got '" + kv + "'");
    }
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (seed) {
    config.set("seed", std::to_string(*seed));
  }
  return config;
}

std::vector<double> parse_value_list(const std::string& text,
                                     const char* flag) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) {
        throw std::invalid_argument(token);
      }
      values.push_back(v);
    } catch (const std::exception&) {
      throw zoseg::ConfigError(std::string(flag) +
                               ": expected a comma-separated number list, "
                               "got '" + text + "'");
    }
  }
  if (values.empty()) {
    throw zoseg::ConfigError(std::string(flag) + ": empty value list");
  }
  return values;
}

// "a..b" inclusive
std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
  const auto sep = text.find("..");
  try {
    if (sep != std::string::npos) {
      const std::uint64_t lo = std::stoull(text.substr(0, sep));
      const std::uint64_t hi = std::stoull(text.substr(sep + 2));
      if (hi < lo) {
        throw std::invalid_argument(text);
      }
      std::vector<std::uint64_t> seeds;
      for (std::uint64_t s = lo; s <= hi; ++s) {
        seeds.push_back(s);
      }
      return seeds;
    }
    // allow a comma list as well
    std::vector<std::uint64_t> seeds;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
      seeds.push_back(std::stoull(token));
    }
    if (seeds.empty()) {
      throw std::invalid_argument(text);
    }
    return seeds;
  } catch (const std::exception&) {
    throw zoseg::ConfigError("--seeds expects a..b or a comma list, got '" +
                             text + "'");
  }
}

std::vector<long> parse_grid(const std::string& text) {
  std::vector<long> grid;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      grid.push_back(std::stol(token));
    } catch (const std::exception&) {
      throw zoseg::ConfigError("--n-grid expects a comma-separated integer "
                               "list, got '" + text + "'");
    }
  }
  return grid;
}

int cmd_run(const Config& config, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string path =
      out_dir + "/run_seed" + config.get_string("seed") + ".csv";
  try {
    zoseg::harness::run_experiment(config, path, &std::cout);
  } catch (const zoseg::SolverDivergence& e) {
    std::cerr << "divergence: " << e.what() << "\n"
              << "partial trajectory written to " << path << "\n";
    return kExitDivergence;
  }
  std::cout << "trajectory written to " << path << "\n";
  return 0;
}

int cmd_sweep(zoseg::harness::SweepSpec spec) {
  const zoseg::harness::SweepResult result = zoseg::harness::run_sweep(spec);
  int failures = 0;
  for (const auto& row : result.rows) {
    if (!row.error.empty()) {
      ++failures;
      std::cerr << "run (value " << row.axis_value << ", seed " << row.seed
                << ") failed: " << row.error << "\n";
    }
  }
  std::cout << result.rows.size() - failures << "/" << result.rows.size()
            << " runs completed; summary written to " << result.summary_path
            << "\n";
  return result.all_ok ? 0 : kExitDivergence;
}

int cmd_bounds(const Config& config, const std::string& out_dir,
               std::optional<double> epsilon, const std::string& n_grid_text,
               std::string overlay_path) {
  const zoseg::harness::ResolvedSetup setup =
      zoseg::harness::resolve_setup(config);
  const zoseg::SaddleProblem& problem = *setup.problem;

  const bool uniform = setup.strategy.kind() == zoseg::SamplingKind::Uniform;
  const double sigma_sq = uniform
                              ? zoseg::sigma_star_squared(problem)
                              : zoseg::sigma_star_squared_importance(problem);

  zoseg::BoundInputs inputs;
  inputs.aggregates = setup.aggregates;
  inputs.R0_sq = zoseg::residual_at(problem, setup.z0);
  inputs.sigma_star_sq = sigma_sq;
  inputs.N = std::max(1L, setup.solver.iterations);
  inputs.d = problem.dim();
  inputs.tau = setup.estimator.tau;
  inputs.Delta = setup.noise.bound();
  inputs.B = setup.estimator.batch_size;
  inputs.sampling = setup.strategy.kind();

  std::printf("problem: d = %d (x %d, y %d), n = %d\n", problem.dim(),
              problem.dim_x(), problem.dim_y(), problem.n());
  std::printf("aggregates: mu_bar = %.6g, L_bar = %.6g, L_max = %.6g, "
              "L_min = %.6g\n",
              setup.aggregates.mu_bar, setup.aggregates.L_bar,
              setup.aggregates.L_max, setup.aggregates.L_min);
  std::printf("sigma*^2 = %.6g (%s sampling), R0^2 = %.6g\n", sigma_sq,
              uniform ? "uniform" : "importance", inputs.R0_sq);

  const double exact = setup.first_order
                           ? (uniform ? zoseg::sseg_us_bound(inputs)
                                      : zoseg::sseg_is_bound(inputs))
                           : zoseg::zosseg_composed_exact_bound(inputs);
  std::printf("exact-constant bound at N = %ld: %.17g\n", inputs.N, exact);

  const zoseg::NoiseKind noise_kind = setup.noise.kind();
  std::printf("\nrate terms at N = %ld, B = %ld, tau = %g, Delta = %g "
              "(order-level, absolute constants set to 1):\n",
              inputs.N, inputs.B, inputs.tau, inputs.Delta);
  for (const auto& term : zoseg::zosseg_rate_terms(inputs, noise_kind)) {
    std::printf("  %-18s %.17g\n", term.name.c_str(), term.value);
  }

  if (epsilon) {
    const zoseg::ParameterPlan plan = zoseg::recommend_parameters(
        *epsilon, setup.aggregates, inputs.R0_sq, sigma_sq, inputs.d,
        noise_kind);
    std::printf("\nparameter plan for epsilon = %.6g (%s value noise, "
                "order-level):\n",
                *epsilon,
                noise_kind == zoseg::NoiseKind::Deterministic ? "deterministic"
                                                              : "stochastic");
    std::printf("  N       = %ld\n", plan.N_rec);
    std::printf("  tau     = %.17g\n", plan.tau_rec);
    std::printf("  B       = %ld\n", plan.B_rec);
    std::printf("  Delta   = %.17g (largest tolerable)\n", plan.Delta_max);
    std::printf("  T = N*B = %ld oracle-call pairs\n", plan.T_rec);
  }

  if (!n_grid_text.empty()) {
    const std::vector<long> grid = parse_grid(n_grid_text);
    if (overlay_path.empty()) {
      std::filesystem::create_directories(out_dir);
      overlay_path = out_dir + "/bounds.csv";
    }
    zoseg::harness::emit_bound_overlay(config, grid, overlay_path);
    std::printf("\nbound overlay written to %s\n", overlay_path.c_str());
  }
  return 0;
}

int cmd_validate(std::uint64_t seed) {
  bool all_pass = true;
  for (const auto& check : zoseg::harness::run_validation_suite(seed)) {
    std::printf("%s %-30s %s\n", check.pass ? "PASS" : "FAIL",
                check.name.c_str(), check.detail.c_str());
    all_pass = all_pass && check.pass;
  }
  return all_pass ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient-free same-sample extragradient workbench"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = default_out_dir();
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value config file");
    cmd->add_option("--set", overrides, "override one config key (repeatable)")
        ->take_all();
    cmd->add_option("--out", out_dir,
                    "output directory (default $ZOSEG_OUT or .)");
    cmd->add_option("--seed", seed, "run seed (overrides config)");
  };

  CLI::App* run = app.add_subcommand("run", "single experiment -> CSV");
  add_common(run);

  CLI::App* sweep =
      app.add_subcommand("sweep", "runs along an axis -> CSVs + summary");
  add_common(sweep);
  std::string axis_text = "delta";
  std::string values_text;
  std::string seeds_text;
  int jobs = 1;
  sweep->add_option("--axis", axis_text, "delta | batch | seed");
  sweep->add_option("--values", values_text, "comma-separated axis values");
  sweep->add_option("--seeds", seeds_text,
                    "seed range a..b or comma list (per axis value)");
  sweep->add_option("--jobs", jobs, "parallel runs (default 1)");

  CLI::App* bounds =
      app.add_subcommand("bounds", "closed-form bounds and parameter plans");
  add_common(bounds);
  std::optional<double> epsilon;
  std::string n_grid_text;
  std::string overlay_path;
  bounds->add_option("--epsilon", epsilon,
                     "target accuracy for the parameter plan");
  bounds->add_option("--n-grid", n_grid_text,
                     "comma-separated N values for the bound overlay CSV");
  bounds->add_option("--overlay", overlay_path,
                     "overlay CSV path (default <out>/bounds.csv)");

  CLI::App* validate = app.add_subcommand(
      "validate", "estimator Monte-Carlo suite + stepsize recurrence grid");
  std::uint64_t validate_seed = 0;
  validate->add_option("--seed", validate_seed, "suite seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(load_config(config_path, overrides, seed), out_dir);
    }
    if (sweep->parsed()) {
      zoseg::harness::SweepSpec spec;
      spec.base = load_config(config_path, overrides, seed);
      spec.out_dir = out_dir;
      spec.jobs = jobs;
      if (axis_text == "delta") {
        spec.axis = zoseg::harness::SweepAxis::Delta;
      } else if (axis_text == "batch") {
        spec.axis = zoseg::harness::SweepAxis::BatchSize;
      } else if (axis_text == "seed") {
        spec.axis = zoseg::harness::SweepAxis::Seed;
      } else {
        throw zoseg::ConfigError("--axis expects delta, batch, or seed; got '" +
                                 axis_text + "'");
      }
      if (!seeds_text.empty()) {
        spec.seeds = parse_seed_range(seeds_text);
      }
      if (spec.axis == zoseg::harness::SweepAxis::Seed) {
        // the axis enumerates seeds; accept them via either flag
        if (!values_text.empty()) {
          spec.values = parse_value_list(values_text, "--values");
        } else {
          for (const std::uint64_t s : spec.seeds) {
            spec.values.push_back(static_cast<double>(s));
          }
          spec.seeds.clear();
        }
        if (spec.values.empty()) {
          throw zoseg::ConfigError("seed axis: provide --seeds or --values");
        }
      } else {
        spec.values = parse_value_list(values_text, "--values");
      }
      return cmd_sweep(std::move(spec));
    }
    if (bounds->parsed()) {
      return cmd_bounds(load_config(config_path, overrides, seed), out_dir,
                        epsilon, n_grid_text, overlay_path);
    }
    if (validate->parsed()) {
      return cmd_validate(validate_seed);
    }
  } catch (const zoseg::SolverDivergence& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const zoseg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return 0;
}
