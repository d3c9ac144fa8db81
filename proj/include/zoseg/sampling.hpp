#pragma once

#include <optional>
#include <vector>

#include "zoseg/core.hpp"

namespace zoseg {

// Aggregated problem constants.  mu_bar down-weights nothing for
// nonnegative moduli but counts negative ones four-fold:
//   mu_bar = (1/n) sum_{mu_i >= 0} mu_i + (4/n) sum_{mu_i < 0} mu_i.
struct AggregateConstants {
  double mu_bar = 0.0;
  double L_bar = 0.0;
  double L_max = 0.0;
  double L_min = 0.0;
};

AggregateConstants compute_aggregates(const Vec& mu, const Vec& L);

enum class SamplingKind { Uniform, Importance };

// Component-index distribution plus the per-sample stepsize multiplier.
//   Uniform:    p_i = 1/n,          gamma_1i = gamma          (gamma defaults
//               to 1/(6 L_max))
//   Importance: p_i = L_i / sum L,  gamma_1i = gamma L_bar/L_i (gamma defaults
//               to 1/(6 L_bar), so gamma_1i = 1/(6 L_i))
// With theory-safe mode on (the default), every gamma_1i must respect the
// per-component cap 1/(4|mu_i| + 2 L_i); violations are rejected so the
// caller either uses compliant stepsizes or explicitly opts out.
class SamplingStrategy {
 public:
  SamplingKind kind() const { return kind_; }
  int n() const { return static_cast<int>(probabilities_.size()); }
  double base_gamma() const { return gamma_; }
  double probability(int i) const { return probabilities_[i]; }
  double gamma1(int i) const { return gamma1_[i]; }
  const std::vector<double>& probabilities() const { return probabilities_; }
  const std::vector<double>& gamma1_table() const { return gamma1_; }

  // Inverse-CDF draw on the cached cumulative table.
  int sample_component(Rng& rng) const;

 private:
  friend SamplingStrategy build_strategy(SamplingKind kind,
                                         const AggregateConstants& aggregates,
                                         const Vec& mu, const Vec& L,
                                         std::optional<double> gamma,
                                         bool theory_safe);
  SamplingKind kind_ = SamplingKind::Uniform;
  double gamma_ = 0.0;
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
  std::vector<double> gamma1_;
};

// Requires mu_bar > 0 (the averaged-strong-monotonicity prerequisite for
// every convergence statement downstream).
SamplingStrategy build_strategy(SamplingKind kind,
                                const AggregateConstants& aggregates,
                                const Vec& mu, const Vec& L,
                                std::optional<double> gamma = std::nullopt,
                                bool theory_safe = true);

}  // namespace zoseg
