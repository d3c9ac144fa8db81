#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "zoseg/core.hpp"
#include "zoseg/errors.hpp"
#include "zoseg/estimator.hpp"
#include "zoseg/noise.hpp"
#include "zoseg/problem.hpp"
#include "zoseg/sampling.hpp"

namespace zoseg {

enum class ScheduleKind { Constant, StichDiminishing };

// Stepsize damping sequence beta_k in (0, 1].
//   Constant:          beta_k = 1.
//   StichDiminishing:  beta_k = 1 while N <= 1/rho; otherwise beta_k = 1 for
//                      k < k0 = ceil(N/2) and 2/(2 + rho (k - k0)) after.
struct StepSchedule {
  ScheduleKind kind = ScheduleKind::Constant;
  double rho_tilde = 0.0;
  long horizon = 0;  // N; only meaningful for the diminishing schedule

  static StepSchedule constant() { return StepSchedule{}; }
  static StepSchedule stich(double rho_tilde, long horizon);
};

// beta_k for 0 <= k < horizon (constant schedules accept any k >= 0).
double beta_at(const StepSchedule& schedule, long k);

struct SolverConfig {
  long iterations = 1000;       // N
  double alpha = 0.125;         // update/extrapolation ratio, in (0, 1/8]
  StepSchedule schedule;        // beta_k sequence
  std::uint64_t seed = 0;
  long record_every = 10;
  bool record_iterates = false; // store z^k snapshots at recorded steps
  double divergence_threshold = 1e150;
  // Oversized stepsizes can stall the float dynamics at enormous but finite
  // iterates (the two-point difference cancels to exactly zero once
  // tau << eps * ||z||), which the coordinate bound alone never catches; a
  // run is therefore also declared divergent when the residual exceeds
  // divergence_factor * max(||z0 - z*||^2, 1).
  double divergence_factor = 1e12;
};

struct TrajectoryPoint {
  long iteration;
  std::uint64_t oracle_calls;  // cumulative calls issued by this run so far
  double residual_sq;          // ||z^k - z*||^2
  double beta;                 // schedule value at this iteration index
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  std::vector<std::pair<long, Vec>> snapshots;  // (k, z^k), optional
  Vec final_iterate;
  long iterations = 0;
};

// Divergence raised from inside a run; carries the rows recorded before the
// blow-up so callers can flush partial output.
struct SolverDivergence : DivergenceError {
  using DivergenceError::DivergenceError;
  Trajectory partial;
};

// One extragradient step with a single shared sample:
//   draw xi;  z_half = z - beta gamma_1xi g_xi(z);
//   return     z     - alpha beta gamma_1xi g_xi(z_half).
// Both operator queries use the SAME component xi; the update stepsize is
// hard-wired to alpha times the exploration stepsize.
Vec sseg_step(BiasedFirstOrderOracle& oracle, const SamplingStrategy& strategy,
              const Vec& z, double beta, double alpha, Rng& rng);

// First-order driver.  2 operator queries per iteration.
Trajectory sseg_run(const SaddleProblem& problem,
                    BiasedFirstOrderOracle& oracle,
                    const SamplingStrategy& strategy,
                    const SolverConfig& config, const Vec& z0);

// Gradient-free driver.  Per iteration: draw one batch; estimate at z^k;
// half-step with the strategy's base gamma_1; re-estimate at z^{k+1/2} on
// the SAME batch; update with gamma_2 = alpha gamma_1.  The gradient
// estimates have their dual block negated to form operator estimates.
// 4 B value queries per iteration.
Trajectory zosseg_run(const SaddleProblem& problem, ZerothOrderOracle& oracle,
                      const SamplingStrategy& strategy,
                      const EstimatorConfig& estimator,
                      const SolverConfig& config, const Vec& z0);

// Reference simulator for the diminishing-stepsize recurrence
//   r_{k+1} = (1 - a g_k) r_k - b g_k + c g_k^2     (clamped at 0)
// run with equality under the schedule g_k = 1/h, then 2/(a (kappa + k - k0))
// with kappa = 2h/a, k0 = ceil(K/2) (the switch only happens when K > h/a).
// Returns r_K and the guarantee 32 h r0 / a * exp(-a K/(2h)) + 36 c/(a^2 K).
struct StichResult {
  double r_K;
  double bound;
};

StichResult simulate_stich_recurrence(double a, double b, double c, double h,
                                      long K, double r0);

}  // namespace zoseg
