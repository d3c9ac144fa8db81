#include "zoseg/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zoseg/errors.hpp"

namespace zoseg {

AggregateConstants compute_aggregates(const Vec& mu, const Vec& L) {
  if (mu.size() == 0) {
    throw ConfigError("compute_aggregates: need at least one component");
  }
  if (mu.size() != L.size()) {
    throw DimensionError("compute_aggregates: mu and L must be equal-length");
  }
  const int n = static_cast<int>(L.size());
  AggregateConstants agg;
  agg.L_max = L[0];
  agg.L_min = L[0];
  double L_sum = 0.0;
  double mu_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!(L[i] > 0.0)) {
      throw ConfigError("compute_aggregates: Lipschitz constants must be "
                        "positive");
    }
    L_sum += L[i];
    agg.L_max = std::max(agg.L_max, L[i]);
    agg.L_min = std::min(agg.L_min, L[i]);
    // negative moduli are penalized four-fold in the average
    mu_sum += (mu[i] >= 0.0) ? mu[i] : 4.0 * mu[i];
  }
  agg.L_bar = L_sum / n;
  agg.mu_bar = mu_sum / n;
  return agg;
}

int SamplingStrategy::sample_component(Rng& rng) const {
  const double u = rng.uniform();
  // first index whose cumulative probability exceeds u
  const auto it =
      std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = static_cast<int>(it - cumulative_.begin());
  return std::min(idx, n() - 1);  // guard the u ~ 1 edge
}

SamplingStrategy build_strategy(SamplingKind kind,
                                const AggregateConstants& aggregates,
                                const Vec& mu, const Vec& L,
                                std::optional<double> gamma,
                                bool theory_safe) {
  if (L.size() == 0 || mu.size() != L.size()) {
    throw DimensionError("build_strategy: mu and L must be nonempty and "
                         "equal-length");
  }
  if (!(aggregates.mu_bar > 0.0)) {
    throw ConfigError(
        "build_strategy: averaged monotonicity constant must be positive "
        "(got " + std::to_string(aggregates.mu_bar) +
        "); the problem is not strongly monotone on average");
  }
  if (gamma && !(*gamma > 0.0)) {
    throw ConfigError("build_strategy: gamma must be positive");
  }

  const int n = static_cast<int>(L.size());
  SamplingStrategy s;
  s.kind_ = kind;
  s.probabilities_.resize(n);
  s.gamma1_.resize(n);

  if (kind == SamplingKind::Uniform) {
    s.gamma_ = gamma ? *gamma : 1.0 / (6.0 * aggregates.L_max);
    for (int i = 0; i < n; ++i) {
      s.probabilities_[i] = 1.0 / n;
      s.gamma1_[i] = s.gamma_;
    }
  } else {
    const double L_sum = L.sum();
    s.gamma_ = gamma ? *gamma : 1.0 / (6.0 * aggregates.L_bar);
    for (int i = 0; i < n; ++i) {
      s.probabilities_[i] = L[i] / L_sum;
      s.gamma1_[i] = s.gamma_ * aggregates.L_bar / L[i];
    }
  }

  if (theory_safe) {
    for (int i = 0; i < n; ++i) {
      const double cap = 1.0 / (4.0 * std::abs(mu[i]) + 2.0 * L[i]);
      if (s.gamma1_[i] > cap * (1.0 + 1e-12)) {
        throw ConfigError(
            "build_strategy: stepsize " + std::to_string(s.gamma1_[i]) +
            " for component " + std::to_string(i) + " exceeds the cap " +
            std::to_string(cap) +
            " = 1/(4|mu_i| + 2 L_i); pass theory_safe = false to override");
      }
    }
  }

  s.cumulative_.resize(n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += s.probabilities_[i];
    s.cumulative_[i] = acc;
  }
  s.cumulative_[n - 1] = 1.0;  // absorb rounding so the table is a CDF

  return s;
}

}  // namespace zoseg
