// Monte-Carlo checks behind the `validate` subcommand: estimator bias and
// second-moment bounds, the linear-objective unbiasedness identity, and the
// diminishing-stepsize recurrence grid.  All stochastic checks allow three
// standard errors of slack (plus 1e-9 absolute) so the flake rate stays
// below the percent level.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "zoseg/errors.hpp"
#include "zoseg/harness.hpp"

namespace zoseg::harness {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Running mean and per-coordinate variance for vector samples.
class VectorStats {
 public:
  explicit VectorStats(int d) : sum_(Vec::Zero(d)), sumsq_(Vec::Zero(d)) {}

  void add(const Vec& g) {
    sum_ += g;
    sumsq_ += g.cwiseProduct(g);
    ++count_;
  }

  Vec mean() const { return sum_ / static_cast<double>(count_); }

  // sqrt(sum_c Var_c / M): the standard error of the mean vector's norm.
  double stderr_norm() const {
    const double m = static_cast<double>(count_);
    const Vec mu = mean();
    const double total_var = (sumsq_ / m - mu.cwiseProduct(mu)).sum();
    return std::sqrt(std::max(total_var, 0.0) / m);
  }

  Vec per_coordinate_stderr() const {
    const double m = static_cast<double>(count_);
    const Vec mu = mean();
    return ((sumsq_ / m - mu.cwiseProduct(mu)).cwiseMax(0.0) / m).cwiseSqrt();
  }

 private:
  Vec sum_;
  Vec sumsq_;
  long count_ = 0;
};

class ScalarStats {
 public:
  void add(double v) {
    sum_ += v;
    sumsq_ += v * v;
    ++count_;
  }
  double mean() const { return sum_ / static_cast<double>(count_); }
  double stderr_mean() const {
    const double m = static_cast<double>(count_);
    const double mu = mean();
    return std::sqrt(std::max(sumsq_ / m - mu * mu, 0.0) / m);
  }

 private:
  double sum_ = 0.0;
  double sumsq_ = 0.0;
  long count_ = 0;
};

SaddleProblem small_instance(std::uint64_t seed) {
  QuadraticBilinearSpec spec;
  spec.dim_x = 8;
  spec.dim_y = 8;
  spec.n = 4;
  spec.seed = seed;
  return build_quadratic_bilinear(spec);
}

// || MC mean of M single estimates - grad f_component(z) ||, plus the
// matching stochastic slack.
struct BiasMeasurement {
  double error;
  double slack;
};

BiasMeasurement measure_bias(const SaddleProblem& problem,
                             const NoiseModel& noise, const Vec& z,
                             int component, double tau, long samples,
                             Rng& rng) {
  ZerothOrderOracle oracle(problem, noise);
  EstimatorConfig config;
  config.tau = tau;
  const int d = problem.dim();
  VectorStats stats(d);
  for (long m = 0; m < samples; ++m) {
    const Vec e = sample_unit_sphere(d, rng);
    stats.add(estimate_single(oracle, z, component, e, config, rng));
  }
  // estimates target the plain gradient; recover it from the operator by
  // undoing the dual-block negation
  const Vec grad =
      flip_dual_block(problem.operator_at(component, z), problem.dim_x());
  return {(stats.mean() - grad).norm(), 3.0 * stats.stderr_norm() + 1e-9};
}

CheckResult check_bias_deterministic(std::uint64_t seed) {
  const SaddleProblem problem = small_instance(seed);
  Rng rng = Rng(seed).substream(11);
  const Vec z = sample_standard_normal_vec(problem.dim(), rng);
  const long samples = 200000;
  const int component = 0;
  const double L = problem.lipschitz()[component];
  const double d = problem.dim();

  bool pass = true;
  double worst_ratio = 0.0;
  for (const double tau : {0.1, 1.0}) {
    for (const double delta : {0.0, 0.01}) {
      const BiasMeasurement m =
          measure_bias(problem, NoiseModel::sign_lattice(delta), z, component,
                       tau, samples, rng);
      const double bound = L * tau + d * delta / tau + m.slack;
      worst_ratio = std::max(worst_ratio, m.error / bound);
      pass = pass && m.error <= bound;
    }
  }
  return {"estimator_bias_deterministic", pass,
          "worst error/bound ratio " + fmt(worst_ratio) +
              " over tau x Delta grid (bound L tau + d Delta/tau + slack)"};
}

CheckResult check_bias_stochastic(std::uint64_t seed) {
  const SaddleProblem problem = small_instance(seed);
  Rng rng = Rng(seed).substream(12);
  const Vec z = sample_standard_normal_vec(problem.dim(), rng);
  const long samples = 200000;
  const int component = 0;
  const double L = problem.lipschitz()[component];
  const double delta = 0.05;

  bool pass = true;
  double worst_ratio = 0.0;
  for (const double tau : {0.1, 1.0}) {
    const BiasMeasurement m = measure_bias(
        problem, NoiseModel::gaussian(delta), z, component, tau, samples, rng);
    const double bound = L * tau + m.slack;  // no Delta/tau term
    worst_ratio = std::max(worst_ratio, m.error / bound);
    pass = pass && m.error <= bound;
  }
  return {"estimator_bias_stochastic", pass,
          "worst error/bound ratio " + fmt(worst_ratio) +
              " at Delta 0.05 (bound L tau + slack, noise-free in "
              "expectation)"};
}

struct MomentMeasurement {
  double mean;
  double slack;
};

MomentMeasurement measure_moment_at_solution(const SaddleProblem& problem,
                                             const NoiseModel& noise,
                                             double tau, long samples,
                                             Rng& rng) {
  ZerothOrderOracle oracle(problem, noise);
  EstimatorConfig config;
  config.tau = tau;
  const AggregateConstants agg =
      compute_aggregates(problem.monotonicity(), problem.lipschitz());
  const SamplingStrategy strategy =
      build_strategy(SamplingKind::Uniform, agg, problem.monotonicity(),
                     problem.lipschitz());
  const Vec z = problem.solution();
  const int d = problem.dim();
  ScalarStats stats;
  for (long m = 0; m < samples; ++m) {
    const int component = strategy.sample_component(rng);
    const Vec e = sample_unit_sphere(d, rng);
    stats.add(estimate_single(oracle, z, component, e, config, rng)
                  .squaredNorm());
  }
  return {stats.mean(), 3.0 * stats.stderr_mean() + 1e-9};
}

CheckResult check_moment(std::uint64_t seed, NoiseKind kind) {
  const SaddleProblem problem = small_instance(seed);
  Rng rng = Rng(seed).substream(kind == NoiseKind::Deterministic ? 13 : 14);
  const double tau = 1.0;
  const double delta = 0.01;
  const long samples = 200000;
  const double d = problem.dim();
  const double L_sq_mean = problem.lipschitz().squaredNorm() /
                           static_cast<double>(problem.n());
  const double sigma_sq = sigma_star_squared(problem);  // 0 by construction

  const NoiseModel noise = kind == NoiseKind::Deterministic
                               ? NoiseModel::sign_lattice(delta)
                               : NoiseModel::gaussian(delta);
  const MomentMeasurement m =
      measure_moment_at_solution(problem, noise, tau, samples, rng);
  // the value-noise term doubles for stochastic perturbations (independent
  // draws at the two query points)
  const double noise_factor = kind == NoiseKind::Deterministic ? 1.0 : 2.0;
  const double bound = 4.0 * d * sigma_sq + 4.0 * d * L_sq_mean * tau * tau +
                       noise_factor * d * d * delta * delta / (tau * tau) +
                       m.slack;
  const bool pass = m.mean <= bound;
  const char* label = kind == NoiseKind::Deterministic
                          ? "second_moment_deterministic"
                          : "second_moment_stochastic";
  return {label, pass,
          "mean ||g(z*)||^2 = " + fmt(m.mean) + " vs bound " + fmt(bound)};
}

CheckResult check_linear_unbiasedness(std::uint64_t seed) {
  const int d = 8;
  Rng rng = Rng(seed).substream(15);
  const Vec a = sample_standard_normal_vec(d, rng);
  ZerothOrderOracle oracle(
      1, d, [&a](int, const Vec& z) { return a.dot(z); },
      NoiseModel::zero());
  EstimatorConfig config;
  config.tau = 0.5;
  const long samples = 1000000;
  VectorStats stats(d);
  for (long m = 0; m < samples; ++m) {
    const Vec e = sample_unit_sphere(d, rng);
    stats.add(estimate_single(oracle, Vec::Zero(d), 0, e, config, rng));
  }
  const Vec mean = stats.mean();
  const Vec slack =
      (3.0 * stats.per_coordinate_stderr().array() + 1e-9).matrix();
  bool pass = true;
  double worst = 0.0;
  for (int c = 0; c < d; ++c) {
    const double err = std::abs(mean[c] - a[c]);
    worst = std::max(worst, err / slack[c]);
    pass = pass && err <= slack[c];
  }
  return {"linear_unbiasedness", pass,
          "worst per-coordinate error = " + fmt(worst) +
              " standard-error units (threshold 3)"};
}

CheckResult check_stich_grid() {
  bool pass = true;
  int cells = 0;
  double worst_ratio = 0.0;
  for (const double a : {0.01, 0.1, 0.5}) {
    for (const double h : {1.0, 2.0}) {
      for (const double c : {0.0, 1.0}) {
        for (const double r0 : {1.0, 10.0}) {
          for (const long K : {10L, 100L, 1000L}) {
            const StichResult r = simulate_stich_recurrence(a, 0.0, c, h, K, r0);
            ++cells;
            if (r.bound > 0.0) {
              worst_ratio = std::max(worst_ratio, r.r_K / r.bound);
            }
            pass = pass && r.r_K <= r.bound * (1.0 + 1e-12);
          }
        }
      }
    }
  }
  return {"stepsize_recurrence_grid", pass,
          std::to_string(cells) + " cells, worst r_K/bound ratio " +
              fmt(worst_ratio)};
}

}  // namespace

std::vector<CheckResult> run_validation_suite(std::uint64_t seed) {
  std::vector<CheckResult> results;
  results.push_back(check_bias_deterministic(seed));
  results.push_back(check_bias_stochastic(seed));
  results.push_back(check_moment(seed, NoiseKind::Deterministic));
  results.push_back(check_moment(seed, NoiseKind::Stochastic));
  results.push_back(check_linear_unbiasedness(seed));
  results.push_back(check_stich_grid());
  return results;
}

}  // namespace zoseg::harness
