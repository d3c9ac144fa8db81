#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zoseg/problem.hpp"
#include "zoseg/solver.hpp"
#include "zoseg/theory.hpp"

namespace zoseg::harness {

// Flat key=value run configuration.  Unknown keys are rejected so typos
// fail loudly instead of silently running defaults.  Values stay strings
// until typed access; every accessor names the offending key on error.
class Config {
 public:
  // Built-in defaults for every key (the experiment-sized instance).
  static Config defaults();
  // defaults + file contents ('#' comments and blank lines ignored).
  static Config from_file(const std::string& path);

  // Override one key, e.g. from a --set flag.  Validates the key name.
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  long get_long(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  // All entries, sorted by key (the CSV comment header and determinism
  // contract both rely on the stable order).
  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::string> entries_;
};

// Everything run_experiment assembled from a Config, exposed so callers
// (bounds printing, tests) can reuse the resolution logic.
struct ResolvedSetup {
  std::shared_ptr<SaddleProblem> problem;
  AggregateConstants aggregates;
  SamplingStrategy strategy;
  EstimatorConfig estimator;
  bool first_order = false;  // estimator.kind == first_order -> S-SEG path
  NoiseModel noise = NoiseModel::zero();
  SolverConfig solver;
  Vec z0;
  // the literal key=value map with auto entries replaced by what actually
  // ran (gamma and schedule resolved); identical config+seed => identical map
  std::map<std::string, std::string> resolved_entries;
};

ResolvedSetup resolve_setup(const Config& config);

// Runs the configured experiment and, when out_csv is nonempty, writes the
// trajectory CSV (resolved config as '#' comments, then
// `iter,oracle_calls,residual_sq,beta`).  On divergence the partial CSV is
// flushed before the error propagates.  log (optional) receives a one-line
// summary with the final residual and wall time.
Trajectory run_experiment(const Config& config, const std::string& out_csv,
                          std::ostream* log = nullptr);

enum class SweepAxis { Delta, BatchSize, Seed };

struct SweepSpec {
  Config base;
  SweepAxis axis = SweepAxis::Delta;
  std::vector<double> values;        // axis values (seeds cast from double)
  std::vector<std::uint64_t> seeds;  // seeds per value; empty -> config seed
  std::string out_dir = ".";
  int jobs = 1;
};

struct SweepRow {
  double axis_value;
  std::uint64_t seed;
  double final_residual_sq;
  std::uint64_t total_oracle_calls;
  std::string error;  // empty on success
};

struct SweepResult {
  std::vector<SweepRow> rows;  // (value, seed) order, independent of jobs
  std::string summary_path;
  bool all_ok = true;
};

// One run per (value, seed) pair, parallel up to spec.jobs; writes per-run
// trajectory CSVs plus summary.csv.  The summary gains a trailing `error`
// column only when some run failed.
SweepResult run_sweep(const SweepSpec& spec);

// CSV `N,bound` along the grid: the exact-constant guarantee matching the
// configured sampling kind, composed with the estimator bias for the
// gradient-free path.
void emit_bound_overlay(const Config& config, const std::vector<long>& N_grid,
                        const std::string& out_csv);

// Monte-Carlo estimator checks plus the stepsize-recurrence grid; used by
// the `validate` subcommand.
struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<CheckResult> run_validation_suite(std::uint64_t seed);

}  // namespace zoseg::harness
