#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>

#include "zoseg/core.hpp"
#include "zoseg/problem.hpp"

namespace zoseg {

enum class NoiseKind { Deterministic, Stochastic };

// Additive perturbation applied to function values.  Deterministic models
// are pure functions of the query point with |delta(z)| <= Delta; stochastic
// models draw a fresh value per query with E[xi^2] <= Delta^2.
class NoiseModel {
 public:
  using DeterministicFn = std::function<double(const Vec&)>;
  using StochasticFn = std::function<double(Rng&)>;

  // Built-in library, selectable by name in run configs.
  static NoiseModel zero();
  // delta(z) = Delta / (1 + ||z||): bounded, radially symmetric.
  static NoiseModel inverse_radius(double delta);
  // delta(z) = Delta * sign(sin(sum_i z_i)): bounded, worst-case style —
  // flips sign across hyperplane slabs, so symmetric two-point differences
  // do NOT cancel it.  Useful for exercising the dDelta/tau bias term; the
  // radially symmetric model above cancels exactly at the origin.
  static NoiseModel sign_lattice(double delta);
  // xi ~ Delta * N(0,1), fresh draw per query.
  static NoiseModel gaussian(double delta);

  // User-pluggable models.
  static NoiseModel deterministic(std::string name, double delta,
                                  DeterministicFn fn);
  static NoiseModel stochastic(std::string name, double delta, StochasticFn fn);

  // Lookup by config name ("zero", "inverse_radius", "sign_lattice",
  // "gaussian").  Unknown names throw ConfigError.
  static NoiseModel by_name(const std::string& name, double delta);

  NoiseKind kind() const { return kind_; }
  double bound() const { return delta_; }
  const std::string& name() const { return name_; }

  // The additive term for one query.  Deterministic models ignore the rng;
  // stochastic models ignore z.
  double sample(const Vec& z, Rng& rng) const;

 private:
  NoiseModel(std::string name, NoiseKind kind, double delta)
      : name_(std::move(name)), kind_(kind), delta_(delta) {}

  std::string name_;
  NoiseKind kind_;
  double delta_;
  DeterministicFn det_fn_;
  StochasticFn stoch_fn_;
};

// Function-value oracle: returns f_i(z) plus the noise model's perturbation.
// The call counter lives here (and is atomic) so oracle-complexity
// accounting is enforced structurally rather than by solver bookkeeping.
class ZerothOrderOracle {
 public:
  using ValueFn = std::function<double(int, const Vec&)>;

  ZerothOrderOracle(const SaddleProblem& problem, NoiseModel noise);

  // Raw-callable constructor for tests that need objectives outside the
  // saddle-problem family (e.g. linear functions with no stationary point).
  ZerothOrderOracle(int n, int dim, ValueFn value, NoiseModel noise);

  ZerothOrderOracle(const ZerothOrderOracle&) = delete;
  ZerothOrderOracle& operator=(const ZerothOrderOracle&) = delete;

  // f_i(z) + noise.  Counts exactly one call.
  double query_value(int component, const Vec& z, Rng& rng);

  int n() const { return n_; }
  int dim() const { return dim_; }
  const NoiseModel& noise() const { return noise_; }

  std::uint64_t calls() const {
    return call_counter_.load(std::memory_order_relaxed);
  }
  void reset_calls() { call_counter_.store(0, std::memory_order_relaxed); }

 private:
  int n_;
  int dim_;
  ValueFn value_;
  NoiseModel noise_;
  std::atomic<std::uint64_t> call_counter_{0};
};

// Operator oracle with an additive bounded bias term: returns
// F_i(z) + bias(z) with ||bias(z)|| <= zeta.
class BiasedFirstOrderOracle {
 public:
  using BiasFn = std::function<Vec(const Vec&)>;

  // Unbiased (bias == 0, zeta == 0).
  explicit BiasedFirstOrderOracle(const SaddleProblem& problem);
  BiasedFirstOrderOracle(const SaddleProblem& problem, BiasFn bias,
                         double zeta);

  BiasedFirstOrderOracle(const BiasedFirstOrderOracle&) = delete;
  BiasedFirstOrderOracle& operator=(const BiasedFirstOrderOracle&) = delete;

  // F_i(z) + bias(z).  Counts exactly one call.
  Vec query_operator(int component, const Vec& z);

  const SaddleProblem& problem() const { return problem_; }
  double zeta() const { return zeta_; }

  std::uint64_t calls() const {
    return call_counter_.load(std::memory_order_relaxed);
  }
  void reset_calls() { call_counter_.store(0, std::memory_order_relaxed); }

 private:
  const SaddleProblem& problem_;
  BiasFn bias_;
  double zeta_;
  std::atomic<std::uint64_t> call_counter_{0};
};

}  // namespace zoseg
