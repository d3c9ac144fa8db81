#include "zoseg/theory.hpp"

#include <algorithm>
#include <cmath>

#include "zoseg/errors.hpp"

namespace zoseg {

namespace {

void check_bound_inputs(const BoundInputs& in) {
  if (!(in.aggregates.mu_bar > 0.0)) {
    throw ConfigError("theory: mu_bar must be positive");
  }
  if (in.N < 1) {
    throw ConfigError("theory: N must be at least 1");
  }
  if (in.B < 1) {
    throw ConfigError("theory: B must be at least 1");
  }
  if (!(in.tau > 0.0)) {
    throw ConfigError("theory: tau must be positive");
  }
  if (in.R0_sq < 0.0 || in.sigma_star_sq < 0.0 || in.zeta < 0.0 ||
      in.Delta < 0.0) {
    throw ConfigError("theory: R0^2, sigma*^2, zeta, Delta must be "
                      "nonnegative");
  }
}

// The shared three-term shape of the exact-constant guarantees; L is L_max
// for uniform sampling and L_bar for importance sampling.
double exact_bound(double L, double mu, double R0_sq, double sigma_sq,
                   double zeta, long N) {
  const double Nd = static_cast<double>(N);
  return 3072.0 * R0_sq * L / mu * std::exp(-mu * Nd / (192.0 * L)) +
         5760.0 * sigma_sq / (mu * mu * Nd) + 2016.0 * zeta * zeta / (mu * mu);
}

}  // namespace

double sseg_us_bound(const BoundInputs& in) {
  check_bound_inputs(in);
  return exact_bound(in.aggregates.L_max, in.aggregates.mu_bar, in.R0_sq,
                     in.sigma_star_sq, in.zeta, in.N);
}

double sseg_is_bound(const BoundInputs& in) {
  check_bound_inputs(in);
  return exact_bound(in.aggregates.L_bar, in.aggregates.mu_bar, in.R0_sq,
                     in.sigma_star_sq, in.zeta, in.N);
}

double zosseg_composed_exact_bound(const BoundInputs& in) {
  check_bound_inputs(in);
  BoundInputs composed = in;
  composed.zeta = in.aggregates.L_max * in.tau +
                  static_cast<double>(in.d) * in.Delta / in.tau;
  return in.sampling == SamplingKind::Importance ? sseg_is_bound(composed)
                                                 : sseg_us_bound(composed);
}

std::vector<RateTerm> zosseg_rate_terms(const BoundInputs& in,
                                        NoiseKind noise_kind) {
  check_bound_inputs(in);
  if (in.d < 1) {
    throw ConfigError("theory: d must be at least 1");
  }
  const double mu = in.aggregates.mu_bar;
  const double mu2 = mu * mu;
  const double d = static_cast<double>(in.d);
  const double NB = static_cast<double>(in.N) * static_cast<double>(in.B);
  const double tau2 = in.tau * in.tau;
  const double D2 = in.Delta * in.Delta;

  std::vector<RateTerm> terms;
  if (in.sampling == SamplingKind::Uniform) {
    const double L = in.aggregates.L_max;
    terms.push_back({"exp_term", L * in.R0_sq / mu *
                                     std::exp(-mu * static_cast<double>(in.N) /
                                              L)});
    terms.push_back({"variance", d * in.sigma_star_sq / (mu2 * NB)});
    terms.push_back({"smoothing", d * L * L * tau2 / (mu2 * NB)});
    terms.push_back({"value_noise", d * d * D2 / (mu2 * NB * tau2)});
    if (noise_kind == NoiseKind::Deterministic) {
      terms.push_back({"smoothing_floor", L * L * tau2 / mu2});
      terms.push_back({"value_noise_floor", d * d * D2 / (mu2 * tau2)});
    }
  } else {
    const double Lb = in.aggregates.L_bar;
    const double Lmin = in.aggregates.L_min;
    terms.push_back({"exp_term", Lb * in.R0_sq / mu *
                                     std::exp(-mu * static_cast<double>(in.N) /
                                              Lb)});
    terms.push_back({"variance", Lb * d * in.sigma_star_sq / (mu2 * NB * Lmin)});
    terms.push_back({"smoothing", d * Lb * Lb * Lb * tau2 / (mu2 * NB * Lmin)});
    terms.push_back({"value_noise", Lb * d * d * D2 / (mu2 * NB * tau2 * Lmin)});
    if (noise_kind == NoiseKind::Deterministic) {
      terms.push_back({"smoothing_floor", Lb * Lb * tau2 / mu2});
      terms.push_back({"value_noise_floor", d * d * D2 / (mu2 * tau2)});
    }
  }
  return terms;
}

ParameterPlan recommend_parameters(double epsilon,
                                   const AggregateConstants& agg,
                                   double R0_sq, double sigma_star_sq, int d,
                                   NoiseKind noise_kind) {
  if (!(epsilon > 0.0)) {
    throw ConfigError("recommend_parameters: epsilon must be positive");
  }
  if (!(agg.mu_bar > 0.0)) {
    throw ConfigError("recommend_parameters: mu_bar must be positive");
  }
  if (d < 1) {
    throw ConfigError("recommend_parameters: d must be at least 1");
  }
  if (R0_sq < 0.0 || sigma_star_sq < 0.0) {
    throw ConfigError("recommend_parameters: R0^2 and sigma*^2 must be "
                      "nonnegative");
  }

  const double mu = agg.mu_bar;
  const double Lmax = agg.L_max;
  const double dd = static_cast<double>(d);
  const double sigma = std::sqrt(sigma_star_sq);
  const double sqrt_eps = std::sqrt(epsilon);

  // log factor of every Table-style prescription; <= 0 means the start
  // point already satisfies the target, so iteration counts degrade to 1
  const double log_phi_raw = std::log(R0_sq * Lmax / (epsilon * mu));
  const bool at_accuracy = !(log_phi_raw > 0.0);
  const double log_phi = at_accuracy ? 0.0 : log_phi_raw;

  ParameterPlan plan;
  plan.noise_kind = noise_kind;

  plan.N_real = at_accuracy ? 1.0 : Lmax / mu * log_phi;
  plan.N_rec = at_accuracy
                   ? 1
                   : std::max<long>(1, static_cast<long>(std::ceil(plan.N_real)));

  if (noise_kind == NoiseKind::Deterministic) {
    plan.tau_rec = mu / Lmax * sqrt_eps;
    if (at_accuracy) {
      plan.B_real = 1.0;
    } else {
      plan.B_real = std::max(
          dd * mu / (Lmax * log_phi) *
              std::max(sigma_star_sq / (epsilon * mu * mu), 1.0),
          1.0);
    }
    // prefactor * min{ max{1, sigma/(mu sqrt(eps)), sqrt(Lmax logPhi/(d mu))},
    //                  1/sqrt(d) }
    const double inner =
        std::max({1.0, sigma / (mu * sqrt_eps),
                  std::sqrt(Lmax * log_phi / (dd * mu))});
    plan.Delta_max = epsilon * mu * mu / (Lmax * std::sqrt(dd)) *
                     std::min(inner, 1.0 / std::sqrt(dd));
  } else {
    const double tau_noise = std::sqrt(epsilon * mu * log_phi / (Lmax * dd));
    plan.tau_rec = std::max(sigma / Lmax, tau_noise);
    if (plan.tau_rec == 0.0) {
      // sigma* = 0 and log factor clamped: fall back to the deterministic
      // eps-expression so the plan stays strictly positive
      plan.tau_rec = mu / Lmax * sqrt_eps;
    }
    plan.B_real = at_accuracy
                      ? 1.0
                      : std::max(dd * sigma_star_sq /
                                     (epsilon * mu * Lmax * log_phi),
                                 1.0);
    // The displayed cell is (sqrt(eps) sigma/(Lmax d)) * max{1, A2, A3, A4};
    // distributing the prefactor avoids 0 * inf when sigma* = 0 (the second
    // product is sigma-free after cancellation).
    const double pre = sqrt_eps * sigma / (Lmax * dd);
    const double term1 = pre;
    const double term2 =
        epsilon * mu * mu * log_phi / (Lmax * dd * std::sqrt(dd));
    const double term3 = pre * std::sqrt(mu * mu * mu * log_phi / Lmax);
    const double term4 =
        pre * std::sqrt(epsilon * mu * Lmax * log_phi / dd);
    plan.Delta_max = std::max({term1, term2, term3, term4});
    if (plan.Delta_max == 0.0) {
      plan.Delta_max = epsilon * mu * mu / (Lmax * dd * std::sqrt(dd));
    }
  }

  plan.B_rec = std::max<long>(1, static_cast<long>(std::ceil(plan.B_real)));
  plan.T_rec = plan.N_rec * plan.B_rec;
  return plan;
}

}  // namespace zoseg
