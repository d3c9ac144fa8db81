#pragma once

#include <vector>

#include "zoseg/core.hpp"
#include "zoseg/noise.hpp"
#include "zoseg/sampling.hpp"

namespace zoseg {

enum class EstimatorKind { SphereDeterministic, SphereStochastic,
                           GaussianBaseline };

struct EstimatorConfig {
  double tau = 1.0;     // smoothing radius
  int batch_size = 1;   // B
  EstimatorKind kind = EstimatorKind::SphereDeterministic;
};

// One batch worth of randomness, drawn up front so the solver can evaluate
// estimates at two different points on the SAME batch.  For the
// stochastic-noise kind each member carries a second, independently drawn
// component index used at the second query point.
struct BatchSample {
  std::vector<Vec> directions;          // unit vectors (Gaussian kind: raw
                                        // normal vectors, not normalized)
  std::vector<int> components;
  std::vector<int> components_second;   // stochastic kind only, else empty

  int size() const { return static_cast<int>(directions.size()); }
};

// Draws B directions and component indices (from the strategy's
// distribution).  d is the ambient dimension of the query points.
BatchSample draw_batch(const EstimatorConfig& config,
                       const SamplingStrategy& strategy, int d, Rng& rng);

// Two-point sphere estimate of grad f_component at z:
//   d/(2 tau) * (f~(z + tau e) - f~(z - tau e)) * e
// The same component is queried at both points; stochastic noise models
// draw independent perturbations per query by construction.  Exactly two
// value queries.
Vec estimate_single(ZerothOrderOracle& oracle, const Vec& z, int component,
                    const Vec& e, const EstimatorConfig& config, Rng& rng);

// Mean of B single estimates consuming the batch's stored randomness; for
// the stochastic-noise kind the second query of member i uses its paired
// independent component.  2B value queries.
Vec estimate_batched(ZerothOrderOracle& oracle, const Vec& z,
                     const BatchSample& batch, const EstimatorConfig& config,
                     Rng& rng);

// Gaussian-smoothing baseline: (f~(z + tau u) - f~(z - tau u))/(2 tau) * u
// with u ~ N(0, I_d).  No dimension factor: E[u u^T] = I already.
Vec estimate_gaussian_baseline(ZerothOrderOracle& oracle, const Vec& z,
                               int component, const EstimatorConfig& config,
                               Rng& rng);

// The estimators above approximate the plain gradient of f.  The
// extragradient iteration consumes the saddle operator [grad_x f; -grad_y f],
// so the dual block must be negated before use; driving the iteration with
// the raw gradient estimate ascends the concave block and diverges.
Vec flip_dual_block(Vec g, int dim_x);

}  // namespace zoseg
