#include "zoseg/solver.hpp"

#include <cmath>
#include <string>

#include "zoseg/errors.hpp"

namespace zoseg {

namespace {

// Schedule value without the upper range check; the trajectory recorder
// evaluates it at k = N for the final row.
double beta_value(const StepSchedule& schedule, long k) {
  if (schedule.kind == ScheduleKind::Constant) {
    return 1.0;
  }
  const double rho = schedule.rho_tilde;
  const long N = schedule.horizon;
  if (static_cast<double>(N) <= 1.0 / rho) {
    return 1.0;
  }
  const long k0 = (N + 1) / 2;  // ceil(N/2)
  if (k < k0) {
    return 1.0;
  }
  return 2.0 / (2.0 + rho * static_cast<double>(k - k0));
}

bool is_finite_within(const Vec& z, double threshold) {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z[i]) || std::abs(z[i]) > threshold) {
      return false;
    }
  }
  return true;
}

void check_solver_config(const SolverConfig& config) {
  if (config.iterations < 0) {
    throw ConfigError("solver: iteration count must be nonnegative");
  }
  if (!(config.alpha > 0.0) || config.alpha > 0.125) {
    throw ConfigError("solver: alpha must lie in (0, 1/8]");
  }
  if (config.record_every < 1) {
    throw ConfigError("solver: record_every must be at least 1");
  }
  if (!(config.divergence_threshold > 0.0) ||
      !(config.divergence_factor > 0.0)) {
    throw ConfigError("solver: divergence limits must be positive");
  }
}

// Shared trajectory bookkeeping for both drivers.
class Recorder {
 public:
  Recorder(const SaddleProblem& problem, const SolverConfig& config,
           std::uint64_t calls_at_start)
      : problem_(problem), config_(config), calls_at_start_(calls_at_start) {}

  void record(long k, const Vec& z, std::uint64_t oracle_calls_now) {
    TrajectoryPoint p;
    p.iteration = k;
    p.oracle_calls = oracle_calls_now - calls_at_start_;
    p.residual_sq = residual_at(problem_, z);
    p.beta = beta_value(config_.schedule, k);
    trajectory_.points.push_back(p);
    if (config_.record_iterates) {
      trajectory_.snapshots.emplace_back(k, z);
    }
  }

  bool due(long k) const { return k % config_.record_every == 0; }

  Trajectory take(Vec final_iterate, long iterations) {
    trajectory_.final_iterate = std::move(final_iterate);
    trajectory_.iterations = iterations;
    return std::move(trajectory_);
  }

  Trajectory partial() const { return trajectory_; }

 private:
  const SaddleProblem& problem_;
  const SolverConfig& config_;
  std::uint64_t calls_at_start_;
  Trajectory trajectory_;
};

[[noreturn]] void throw_divergence(const Recorder& recorder, const Vec& last,
                                   long k) {
  SolverDivergence err(
      "iterate diverged at iteration " + std::to_string(k) +
          " (non-finite, coordinate beyond threshold, or residual grew "
          "past the configured factor); reduce the stepsize or enable "
          "theory-safe mode",
      last, k);
  err.partial = recorder.partial();
  throw err;
}

}  // namespace

StepSchedule StepSchedule::stich(double rho_tilde, long horizon) {
  if (!(rho_tilde > 0.0)) {
    throw ConfigError("StepSchedule: rho_tilde must be positive");
  }
  if (horizon < 0) {
    throw ConfigError("StepSchedule: horizon must be nonnegative");
  }
  StepSchedule s;
  s.kind = ScheduleKind::StichDiminishing;
  s.rho_tilde = rho_tilde;
  s.horizon = horizon;
  return s;
}

double beta_at(const StepSchedule& schedule, long k) {
  if (k < 0) {
    throw ConfigError("beta_at: negative iteration index");
  }
  if (schedule.kind == ScheduleKind::StichDiminishing &&
      k >= schedule.horizon) {
    throw ConfigError("beta_at: iteration index beyond the schedule horizon");
  }
  return beta_value(schedule, k);
}

Vec sseg_step(BiasedFirstOrderOracle& oracle, const SamplingStrategy& strategy,
              const Vec& z, double beta, double alpha, Rng& rng) {
  if (!(beta > 0.0) || beta > 1.0) {
    throw ConfigError("sseg_step: beta must lie in (0, 1]");
  }
  const int xi = strategy.sample_component(rng);
  const double step = beta * strategy.gamma1(xi);
  const Vec z_half = z - step * oracle.query_operator(xi, z);
  return z - alpha * step * oracle.query_operator(xi, z_half);
}

Trajectory sseg_run(const SaddleProblem& problem,
                    BiasedFirstOrderOracle& oracle,
                    const SamplingStrategy& strategy,
                    const SolverConfig& config, const Vec& z0) {
  check_solver_config(config);
  if (z0.size() != problem.dim()) {
    throw DimensionError("sseg_run: z0 has wrong dimension");
  }
  Rng rng(config.seed);
  Recorder recorder(problem, config, oracle.calls());
  const long N = config.iterations;
  const double residual_cap =
      config.divergence_factor * std::max(residual_at(problem, z0), 1.0);
  Vec z = z0;
  recorder.record(0, z, oracle.calls());
  for (long k = 0; k < N; ++k) {
    const double beta = beta_value(config.schedule, k);
    Vec z_next = sseg_step(oracle, strategy, z, beta, config.alpha, rng);
    if (!is_finite_within(z_next, config.divergence_threshold) ||
        residual_at(problem, z_next) > residual_cap) {
      throw_divergence(recorder, z, k);
    }
    z = std::move(z_next);
    if (recorder.due(k + 1) && k + 1 != N) {
      recorder.record(k + 1, z, oracle.calls());
    }
  }
  if (N > 0) {
    recorder.record(N, z, oracle.calls());
  }
  return recorder.take(std::move(z), N);
}

Trajectory zosseg_run(const SaddleProblem& problem, ZerothOrderOracle& oracle,
                      const SamplingStrategy& strategy,
                      const EstimatorConfig& estimator,
                      const SolverConfig& config, const Vec& z0) {
  check_solver_config(config);
  if (z0.size() != problem.dim()) {
    throw DimensionError("zosseg_run: z0 has wrong dimension");
  }
  if (oracle.dim() != problem.dim()) {
    throw DimensionError("zosseg_run: oracle dimension mismatch");
  }
  Rng rng(config.seed);
  Recorder recorder(problem, config, oracle.calls());
  const long N = config.iterations;
  const int d = problem.dim();
  const int dim_x = problem.dim_x();
  // The algorithm runs with a fixed exploration stepsize; the per-component
  // stepsize table is a first-order-path concept.
  const double gamma1 = strategy.base_gamma();
  const double residual_cap =
      config.divergence_factor * std::max(residual_at(problem, z0), 1.0);

  Vec z = z0;
  recorder.record(0, z, oracle.calls());
  for (long k = 0; k < N; ++k) {
    const double beta = beta_value(config.schedule, k);
    const BatchSample batch = draw_batch(estimator, strategy, d, rng);
    const Vec g_k =
        flip_dual_block(estimate_batched(oracle, z, batch, estimator, rng),
                        dim_x);
    const Vec z_half = z - beta * gamma1 * g_k;
    // second estimate reuses the identical (direction, component) batch
    const Vec g_half = flip_dual_block(
        estimate_batched(oracle, z_half, batch, estimator, rng), dim_x);
    Vec z_next = z - config.alpha * beta * gamma1 * g_half;
    if (!is_finite_within(z_next, config.divergence_threshold) ||
        residual_at(problem, z_next) > residual_cap) {
      throw_divergence(recorder, z, k);
    }
    z = std::move(z_next);
    if (recorder.due(k + 1) && k + 1 != N) {
      recorder.record(k + 1, z, oracle.calls());
    }
  }
  if (N > 0) {
    recorder.record(N, z, oracle.calls());
  }
  return recorder.take(std::move(z), N);
}

StichResult simulate_stich_recurrence(double a, double b, double c, double h,
                                      long K, double r0) {
  if (!(a > 0.0) || h < a) {
    throw ConfigError("simulate_stich_recurrence: need h >= a > 0");
  }
  if (b < 0.0 || c < 0.0 || r0 < 0.0) {
    throw ConfigError("simulate_stich_recurrence: b, c, r0 must be "
                      "nonnegative");
  }
  if (K < 1) {
    throw ConfigError("simulate_stich_recurrence: need at least one step");
  }

  const bool short_horizon = static_cast<double>(K) <= h / a;
  const long k0 = (K + 1) / 2;  // ceil(K/2)
  const double kappa = 2.0 * h / a;

  double r = r0;
  for (long k = 0; k < K; ++k) {
    double g;
    if (short_horizon || k < k0) {
      g = 1.0 / h;
    } else {
      g = 2.0 / (a * (kappa + static_cast<double>(k - k0)));
    }
    r = (1.0 - a * g) * r - b * g + c * g * g;
    if (r < 0.0) {
      r = 0.0;  // the recurrence models a nonnegative quantity
    }
  }

  const double bound =
      32.0 * h * r0 / a * std::exp(-a * static_cast<double>(K) / (2.0 * h)) +
      36.0 * c / (a * a * static_cast<double>(K));
  return StichResult{r, bound};
}

}  // namespace zoseg
