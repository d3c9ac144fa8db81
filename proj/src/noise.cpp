#include "zoseg/noise.hpp"

#include <cmath>
#include <utility>

#include "zoseg/errors.hpp"

namespace zoseg {

NoiseModel NoiseModel::zero() {
  NoiseModel m("zero", NoiseKind::Deterministic, 0.0);
  m.det_fn_ = [](const Vec&) { return 0.0; };
  return m;
}

NoiseModel NoiseModel::inverse_radius(double delta) {
  if (delta < 0.0) {
    throw ConfigError("NoiseModel: delta must be nonnegative");
  }
  NoiseModel m("inverse_radius", NoiseKind::Deterministic, delta);
  m.det_fn_ = [delta](const Vec& z) { return delta / (1.0 + z.norm()); };
  return m;
}

NoiseModel NoiseModel::sign_lattice(double delta) {
  if (delta < 0.0) {
    throw ConfigError("NoiseModel: delta must be nonnegative");
  }
  NoiseModel m("sign_lattice", NoiseKind::Deterministic, delta);
  m.det_fn_ = [delta](const Vec& z) {
    const double s = std::sin(z.sum());
    return delta * ((s > 0.0) - (s < 0.0));
  };
  return m;
}

NoiseModel NoiseModel::gaussian(double delta) {
  if (delta < 0.0) {
    throw ConfigError("NoiseModel: delta must be nonnegative");
  }
  NoiseModel m("gaussian", NoiseKind::Stochastic, delta);
  m.stoch_fn_ = [delta](Rng& rng) { return delta * rng.normal(); };
  return m;
}

NoiseModel NoiseModel::deterministic(std::string name, double delta,
                                     DeterministicFn fn) {
  NoiseModel m(std::move(name), NoiseKind::Deterministic, delta);
  m.det_fn_ = std::move(fn);
  return m;
}

NoiseModel NoiseModel::stochastic(std::string name, double delta,
                                  StochasticFn fn) {
  NoiseModel m(std::move(name), NoiseKind::Stochastic, delta);
  m.stoch_fn_ = std::move(fn);
  return m;
}

NoiseModel NoiseModel::by_name(const std::string& name, double delta) {
  if (name == "zero") return zero();
  if (name == "inverse_radius") return inverse_radius(delta);
  if (name == "sign_lattice") return sign_lattice(delta);
  if (name == "gaussian") return gaussian(delta);
  throw ConfigError("unknown noise model '" + name +
                    "' (expected zero, inverse_radius, sign_lattice, "
                    "or gaussian)");
}

double NoiseModel::sample(const Vec& z, Rng& rng) const {
  if (kind_ == NoiseKind::Deterministic) {
    return det_fn_(z);
  }
  return stoch_fn_(rng);
}

ZerothOrderOracle::ZerothOrderOracle(const SaddleProblem& problem,
                                     NoiseModel noise)
    : n_(problem.n()),
      dim_(problem.dim()),
      value_([&problem](int i, const Vec& z) { return problem.value(i, z); }),
      noise_(std::move(noise)) {}

ZerothOrderOracle::ZerothOrderOracle(int n, int dim, ValueFn value,
                                     NoiseModel noise)
    : n_(n), dim_(dim), value_(std::move(value)), noise_(std::move(noise)) {
  if (n_ <= 0 || dim_ <= 0) {
    throw DimensionError("ZerothOrderOracle: n and dim must be positive");
  }
}

double ZerothOrderOracle::query_value(int component, const Vec& z, Rng& rng) {
  if (component < 0 || component >= n_) {
    throw DimensionError("ZerothOrderOracle: component out of range");
  }
  if (z.size() != dim_) {
    throw DimensionError("ZerothOrderOracle: point has wrong dimension");
  }
  call_counter_.fetch_add(1, std::memory_order_relaxed);
  return value_(component, z) + noise_.sample(z, rng);
}

BiasedFirstOrderOracle::BiasedFirstOrderOracle(const SaddleProblem& problem)
    : problem_(problem), bias_(nullptr), zeta_(0.0) {}

BiasedFirstOrderOracle::BiasedFirstOrderOracle(const SaddleProblem& problem,
                                               BiasFn bias, double zeta)
    : problem_(problem), bias_(std::move(bias)), zeta_(zeta) {
  if (zeta_ < 0.0) {
    throw ConfigError("BiasedFirstOrderOracle: zeta must be nonnegative");
  }
}

Vec BiasedFirstOrderOracle::query_operator(int component, const Vec& z) {
  call_counter_.fetch_add(1, std::memory_order_relaxed);
  Vec out = problem_.operator_at(component, z);
  if (bias_) {
    out += bias_(z);
  }
  return out;
}

}  // namespace zoseg
