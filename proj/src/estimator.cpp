#include "zoseg/estimator.hpp"

#include "zoseg/errors.hpp"

namespace zoseg {

namespace {

void check_config(const EstimatorConfig& config) {
  if (!(config.tau > 0.0)) {
    throw ConfigError("estimator: tau must be positive");
  }
  if (config.batch_size < 1) {
    throw ConfigError("estimator: batch size must be at least 1");
  }
}

// Shared two-point core.  component_minus lets the batched stochastic
// variant query an independent component at the second point.
Vec two_point_sphere(ZerothOrderOracle& oracle, const Vec& z,
                     int component_plus, int component_minus, const Vec& e,
                     double tau, Rng& rng) {
  const double d = static_cast<double>(z.size());
  const double f_plus = oracle.query_value(component_plus, z + tau * e, rng);
  const double f_minus = oracle.query_value(component_minus, z - tau * e, rng);
  return (d / (2.0 * tau)) * (f_plus - f_minus) * e;
}

}  // namespace

BatchSample draw_batch(const EstimatorConfig& config,
                       const SamplingStrategy& strategy, int d, Rng& rng) {
  check_config(config);
  if (d <= 0) {
    throw DimensionError("draw_batch: dimension must be positive");
  }
  BatchSample batch;
  batch.directions.reserve(config.batch_size);
  batch.components.reserve(config.batch_size);
  const bool paired = config.kind == EstimatorKind::SphereStochastic;
  if (paired) {
    batch.components_second.reserve(config.batch_size);
  }
  for (int i = 0; i < config.batch_size; ++i) {
    if (config.kind == EstimatorKind::GaussianBaseline) {
      batch.directions.push_back(sample_standard_normal_vec(d, rng));
    } else {
      batch.directions.push_back(sample_unit_sphere(d, rng));
    }
    batch.components.push_back(strategy.sample_component(rng));
    if (paired) {
      batch.components_second.push_back(strategy.sample_component(rng));
    }
  }
  return batch;
}

Vec estimate_single(ZerothOrderOracle& oracle, const Vec& z, int component,
                    const Vec& e, const EstimatorConfig& config, Rng& rng) {
  check_config(config);
  if (e.size() != z.size()) {
    throw DimensionError("estimate_single: direction/point size mismatch");
  }
  return two_point_sphere(oracle, z, component, component, e, config.tau, rng);
}

Vec estimate_batched(ZerothOrderOracle& oracle, const Vec& z,
                     const BatchSample& batch, const EstimatorConfig& config,
                     Rng& rng) {
  check_config(config);
  if (batch.size() != config.batch_size) {
    throw ConfigError("estimate_batched: batch size does not match config");
  }
  const bool paired = config.kind == EstimatorKind::SphereStochastic;
  if (paired &&
      batch.components_second.size() != batch.components.size()) {
    throw ConfigError("estimate_batched: stochastic kind requires paired "
                      "second components");
  }
  // Fixed index order keeps the mean (and the rng consumption) reproducible.
  Vec sum = Vec::Zero(z.size());
  for (int i = 0; i < batch.size(); ++i) {
    if (config.kind == EstimatorKind::GaussianBaseline) {
      const Vec& u = batch.directions[i];
      const double f_plus =
          oracle.query_value(batch.components[i], z + config.tau * u, rng);
      const double f_minus =
          oracle.query_value(batch.components[i], z - config.tau * u, rng);
      sum += (f_plus - f_minus) / (2.0 * config.tau) * u;
    } else {
      const int second =
          paired ? batch.components_second[i] : batch.components[i];
      sum += two_point_sphere(oracle, z, batch.components[i], second,
                              batch.directions[i], config.tau, rng);
    }
  }
  return sum / static_cast<double>(batch.size());
}

Vec estimate_gaussian_baseline(ZerothOrderOracle& oracle, const Vec& z,
                               int component, const EstimatorConfig& config,
                               Rng& rng) {
  check_config(config);
  const Vec u = sample_standard_normal_vec(static_cast<int>(z.size()), rng);
  const double f_plus = oracle.query_value(component, z + config.tau * u, rng);
  const double f_minus =
      oracle.query_value(component, z - config.tau * u, rng);
  return (f_plus - f_minus) / (2.0 * config.tau) * u;
}

Vec flip_dual_block(Vec g, int dim_x) {
  if (dim_x < 0 || dim_x > g.size()) {
    throw DimensionError("flip_dual_block: invalid primal dimension");
  }
  g.tail(g.size() - dim_x) *= -1.0;
  return g;
}

}  // namespace zoseg
