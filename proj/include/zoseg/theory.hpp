#pragma once

#include <string>
#include <vector>

#include "zoseg/noise.hpp"
#include "zoseg/sampling.hpp"

namespace zoseg {

// Everything the closed-form bounds consume.  Not all fields matter for all
// operations; each operation documents what it reads.
struct BoundInputs {
  AggregateConstants aggregates;
  double R0_sq = 0.0;        // ||z0 - z*||^2
  double sigma_star_sq = 0.0;
  double zeta = 0.0;         // first-order bias bound
  long N = 1;                // iterations
  int d = 1;                 // ambient dimension
  double tau = 1.0;          // smoothing radius
  double Delta = 0.0;        // value-noise level
  long B = 1;                // batch size
  SamplingKind sampling = SamplingKind::Uniform;
};

// Exact-constant guarantee for the first-order path under uniform sampling:
//   3072 R0^2 L_max / mu_bar * exp(-mu_bar N / (192 L_max))
//   + 5760 sigma*^2 / (mu_bar^2 N) + 2016 zeta^2 / mu_bar^2
// Reads aggregates (L_max, mu_bar), R0_sq, sigma_star_sq, zeta, N.
double sseg_us_bound(const BoundInputs& inputs);

// Importance-sampling counterpart: L_bar replaces L_max and sigma_star_sq is
// expected to be the reweighted (1/n) sum (L_bar/L_i) ||F_i(z*)||^2.
double sseg_is_bound(const BoundInputs& inputs);

// Exact-constant guarantee for the gradient-free path, formed by feeding the
// estimator's worst-case bias L_max tau + d Delta / tau through the
// first-order bound's zeta slot (sampling kind selects the US or IS base).
// This composition is a library convention, not a closed form with its own
// derivation; it upper-bounds the floor, not the variance terms.
double zosseg_composed_exact_bound(const BoundInputs& inputs);

struct RateTerm {
  std::string name;
  double value;
};

// Order-level rate terms (all absolute constants set to 1) for the
// gradient-free method.  Uniform sampling, deterministic noise:
//   exp_term         L_max R0^2/mu_bar * exp(-mu_bar N / L_max)
//   variance         d sigma*^2 / (mu_bar^2 N B)
//   smoothing        d L_max^2 tau^2 / (mu_bar^2 N B)
//   value_noise      d^2 Delta^2 / (mu_bar^2 N B tau^2)
//   smoothing_floor  L_max^2 tau^2 / mu_bar^2
//   value_noise_floor d^2 Delta^2 / (mu_bar^2 tau^2)
// Stochastic noise drops the two floor terms (the noise averages out across
// iterations instead of accumulating).  Importance sampling replaces L_max
// by L_bar in the exponential, scales the three N-dependent terms by
// L_bar/L_min (with L_bar^3 in the smoothing numerator), and keeps the same
// floors with L_bar in place of L_max.
std::vector<RateTerm> zosseg_rate_terms(const BoundInputs& inputs,
                                        NoiseKind noise_kind);

// Parameter prescriptions achieving eps-accuracy, with order constants set
// to 1.  Integer fields are rounded up (minimum 1); the _real fields keep
// the unrounded values for monotonicity analysis.
struct ParameterPlan {
  long N_rec = 1;
  double tau_rec = 0.0;
  long B_rec = 1;
  double Delta_max = 0.0;
  long T_rec = 1;  // = N_rec * B_rec exactly
  NoiseKind noise_kind = NoiseKind::Deterministic;
  double N_real = 0.0;
  double B_real = 0.0;
};

// Reads aggregates, R0_sq, sigma_star_sq (as sigma*^2), d.  When the target
// accuracy is already met at the start (log factor <= 0) the plan degrades
// gracefully to N = B = 1 with positive tau and Delta fallbacks.
ParameterPlan recommend_parameters(double epsilon,
                                   const AggregateConstants& aggregates,
                                   double R0_sq, double sigma_star_sq, int d,
                                   NoiseKind noise_kind);

}  // namespace zoseg
