#include <doctest.h>

#include <cmath>
#include <vector>

#include "zoseg/core.hpp"
#include "zoseg/errors.hpp"
#include "zoseg/estimator.hpp"
#include "zoseg/noise.hpp"
#include "zoseg/sampling.hpp"

using namespace zoseg;

namespace {

// Oracle around f(z) = <a, z> + offset_i; the two-point sphere estimate of a
// linear function is exact for any tau: d * <a, e> * e.
struct LinearSetup {
    Vec a;
    ZerothOrderOracle oracle;

    LinearSetup(Vec a_in, int n, NoiseModel noise)
        : a(std::move(a_in)),
          oracle(
              n, static_cast<int>(a.size()),
              [coeff = a](int component, const Vec& z) {
                  return coeff.dot(z) + 10.0 * component;
              },
              std::move(noise)) {}
};

SamplingStrategy uniform_strategy(int n) {
    Vec mu = Vec::Constant(n, 0.5);
    Vec L = Vec::Constant(n, 1.0);
    return build_strategy(SamplingKind::Uniform, compute_aggregates(mu, L), mu,
                          L);
}

}  // namespace

TEST_CASE("two-point sphere estimate is exact on linear functions") {
    Vec a(4);
    a << 1.0, -2.0, 0.5, 3.0;
    LinearSetup setup(a, 2, NoiseModel::zero());
    EstimatorConfig config;
    config.tau = 0.37;
    Rng dir_rng(8);
    Rng query_rng(9);
    Vec z(4);
    z << 0.1, 0.2, 0.3, 0.4;
    for (int rep = 0; rep < 10; ++rep) {
        const Vec e = sample_unit_sphere(4, dir_rng);
        const Vec got =
            estimate_single(setup.oracle, z, 1, e, config, query_rng);
        const Vec expect = 4.0 * a.dot(e) * e;
        CHECK((got - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
    }
}

TEST_CASE("linear exactness is independent of the smoothing radius") {
    Vec a(3);
    a << 2.0, 1.0, -1.0;
    LinearSetup setup(a, 1, NoiseModel::zero());
    Rng dir_rng(4);
    const Vec e = sample_unit_sphere(3, dir_rng);
    Vec z = Vec::Zero(3);
    Rng q1(1), q2(1);
    EstimatorConfig small, large;
    small.tau = 1e-3;
    large.tau = 10.0;
    const Vec g_small = estimate_single(setup.oracle, z, 0, e, small, q1);
    const Vec g_large = estimate_single(setup.oracle, z, 0, e, large, q2);
    CHECK((g_small - g_large).norm() <= 1e-9);
}

TEST_CASE("constant functions estimate to exactly zero") {
    ZerothOrderOracle oracle(
        1, 5, [](int, const Vec&) { return 3.25; }, NoiseModel::zero());
    EstimatorConfig config;
    Rng rng(12);
    const Vec e = sample_unit_sphere(5, rng);
    const Vec z = Vec::Zero(5);
    CHECK(estimate_single(oracle, z, 0, e, config, rng).norm() == 0.0);
    CHECK(estimate_gaussian_baseline(oracle, z, 0, config, rng).norm() == 0.0);
}

TEST_CASE("each single estimate costs exactly two value queries") {
    Vec a(2);
    a << 1.0, 1.0;
    LinearSetup setup(a, 1, NoiseModel::gaussian(0.1));
    EstimatorConfig config;
    Rng rng(3);
    const Vec e = sample_unit_sphere(2, rng);
    const Vec z = Vec::Zero(2);
    setup.oracle.reset_calls();
    estimate_single(setup.oracle, z, 0, e, config, rng);
    CHECK(setup.oracle.calls() == 2);
    estimate_gaussian_baseline(setup.oracle, z, 0, config, rng);
    CHECK(setup.oracle.calls() == 4);
}

TEST_CASE("batched estimate equals the mean of its member estimates") {
    Vec a(3);
    a << 1.0, 2.0, 3.0;
    LinearSetup setup(a, 4, NoiseModel::zero());
    EstimatorConfig config;
    config.batch_size = 8;
    SamplingStrategy strategy = uniform_strategy(4);
    Rng rng(21);
    const BatchSample batch = draw_batch(config, strategy, 3, rng);
    CHECK(batch.size() == 8);
    Vec z(3);
    z << 1.0, -1.0, 0.5;
    Rng query_rng(5);
    const Vec got = estimate_batched(setup.oracle, z, batch, config, query_rng);
    Vec manual = Vec::Zero(3);
    for (int i = 0; i < batch.size(); ++i) {
        Rng throwaway(0);
        manual += estimate_single(setup.oracle, z, batch.components[i],
                                  batch.directions[i], config, throwaway);
    }
    manual /= batch.size();
    CHECK((got - manual).norm() <= 1e-13 * (1.0 + manual.norm()));
    // 2B queries for the batch itself (plus the 2B from the manual loop).
    CHECK(setup.oracle.calls() == 32);
}

TEST_CASE("batch of one with the same randomness reduces to a single estimate") {
    Vec a(2);
    a << -1.0, 2.0;
    LinearSetup setup(a, 2, NoiseModel::zero());
    EstimatorConfig config;
    config.batch_size = 1;
    Rng rng(33);
    const Vec e = sample_unit_sphere(2, rng);
    BatchSample batch;
    batch.directions = {e};
    batch.components = {1};
    Vec z(2);
    z << 0.3, 0.4;
    Rng q1(7), q2(7);
    const Vec single = estimate_single(setup.oracle, z, 1, e, config, q1);
    const Vec batched = estimate_batched(setup.oracle, z, batch, config, q2);
    CHECK((single - batched).norm() == 0.0);
}

TEST_CASE("draw_batch shapes depend on the estimator kind") {
    SamplingStrategy strategy = uniform_strategy(3);
    Rng rng(2);

    EstimatorConfig det;
    det.batch_size = 5;
    det.kind = EstimatorKind::SphereDeterministic;
    BatchSample b1 = draw_batch(det, strategy, 4, rng);
    CHECK(b1.size() == 5);
    CHECK(b1.components.size() == 5);
    CHECK(b1.components_second.empty());
    for (const Vec& e : b1.directions) {
        CHECK(e.size() == 4);
        CHECK(e.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (int c : b1.components) {
        CHECK(c >= 0);
        CHECK(c < 3);
    }

    EstimatorConfig stoch = det;
    stoch.kind = EstimatorKind::SphereStochastic;
    BatchSample b2 = draw_batch(stoch, strategy, 4, rng);
    CHECK(b2.components_second.size() == 5);

    EstimatorConfig gaussian = det;
    gaussian.kind = EstimatorKind::GaussianBaseline;
    BatchSample b3 = draw_batch(gaussian, strategy, 4, rng);
    // Gaussian directions are raw normal vectors, generically not unit norm.
    bool any_nonunit = false;
    for (const Vec& u : b3.directions)
        any_nonunit = any_nonunit || std::abs(u.norm() - 1.0) > 1e-6;
    CHECK(any_nonunit);
}

TEST_CASE("stochastic kind queries the paired component at the mirror point") {
    std::vector<int> seen;
    ZerothOrderOracle oracle(
        4, 2,
        [&seen](int component, const Vec&) {
            seen.push_back(component);
            return 0.0;
        },
        NoiseModel::zero());
    EstimatorConfig config;
    config.batch_size = 3;
    config.kind = EstimatorKind::SphereStochastic;
    BatchSample batch;
    Rng rng(6);
    for (int i = 0; i < 3; ++i) batch.directions.push_back(sample_unit_sphere(2, rng));
    batch.components = {0, 1, 2};
    batch.components_second = {3, 0, 1};
    Vec z = Vec::Zero(2);
    estimate_batched(oracle, z, batch, config, rng);
    // Per member: plus-point query on components[i], minus-point on
    // components_second[i].
    REQUIRE(seen.size() == 6);
    CHECK(seen[0] == 0);
    CHECK(seen[1] == 3);
    CHECK(seen[2] == 1);
    CHECK(seen[3] == 0);
    CHECK(seen[4] == 2);
    CHECK(seen[5] == 1);
}

TEST_CASE("deterministic kind uses one component for both points") {
    std::vector<int> seen;
    ZerothOrderOracle oracle(
        4, 2,
        [&seen](int component, const Vec&) {
            seen.push_back(component);
            return 0.0;
        },
        NoiseModel::zero());
    EstimatorConfig config;
    Rng rng(6);
    const Vec e = sample_unit_sphere(2, rng);
    Vec z = Vec::Zero(2);
    estimate_single(oracle, z, 2, e, config, rng);
    REQUIRE(seen.size() == 2);
    CHECK(seen[0] == 2);
    CHECK(seen[1] == 2);
}

TEST_CASE("batch averaging shrinks variance by roughly the batch size") {
    Vec a(4);
    a << 1.0, 0.5, -0.5, 2.0;
    LinearSetup setup(a, 1, NoiseModel::zero());
    SamplingStrategy strategy = uniform_strategy(1);
    Vec z = Vec::Zero(4);
    const int reps = 1000;
    const int b = 16;

    EstimatorConfig single_cfg;
    EstimatorConfig batch_cfg;
    batch_cfg.batch_size = b;

    Rng rng(555);
    double mean1 = 0.0, mean2 = 0.0, sq1 = 0.0, sq2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const Vec e = sample_unit_sphere(4, rng);
        const double v1 = estimate_single(setup.oracle, z, 0, e, single_cfg,
                                          rng)[0];
        const BatchSample batch = draw_batch(batch_cfg, strategy, 4, rng);
        const double v2 =
            estimate_batched(setup.oracle, z, batch, batch_cfg, rng)[0];
        mean1 += v1;
        mean2 += v2;
        sq1 += v1 * v1;
        sq2 += v2 * v2;
    }
    mean1 /= reps;
    mean2 /= reps;
    const double var1 = sq1 / reps - mean1 * mean1;
    const double var2 = sq2 / reps - mean2 * mean2;
    const double ratio = var1 / var2;
    CHECK(ratio > b / 1.5);
    CHECK(ratio < b * 1.5);
}

TEST_CASE("gaussian baseline reproduces <a,u> u on linear functions") {
    Vec a(3);
    a << 1.0, -1.0, 2.0;
    LinearSetup setup(a, 1, NoiseModel::zero());
    EstimatorConfig config;
    config.tau = 0.2;
    config.kind = EstimatorKind::GaussianBaseline;
    Rng rng(91);
    Rng shadow(91);
    Vec z(3);
    z << 0.5, 0.5, 0.5;
    const Vec got = estimate_gaussian_baseline(setup.oracle, z, 0, config, rng);
    const Vec u = sample_standard_normal_vec(3, shadow);
    const Vec expect = a.dot(u) * u;
    CHECK((got - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
}

TEST_CASE("flip_dual_block negates exactly the dual coordinates") {
    Vec g(5);
    g << 1.0, 2.0, 3.0, 4.0, 5.0;
    const Vec flipped = flip_dual_block(g, 2);
    CHECK(flipped[0] == 1.0);
    CHECK(flipped[1] == 2.0);
    CHECK(flipped[2] == -3.0);
    CHECK(flipped[3] == -4.0);
    CHECK(flipped[4] == -5.0);
}

TEST_CASE("estimator configuration is validated") {
    Vec a(2);
    a << 1.0, 1.0;
    LinearSetup setup(a, 1, NoiseModel::zero());
    SamplingStrategy strategy = uniform_strategy(1);
    Rng rng(1);
    EstimatorConfig bad_tau;
    bad_tau.tau = 0.0;
    const Vec e = sample_unit_sphere(2, rng);
    CHECK_THROWS_AS(
        estimate_single(setup.oracle, Vec::Zero(2), 0, e, bad_tau, rng),
        ConfigError);
    EstimatorConfig bad_batch;
    bad_batch.batch_size = 0;
    CHECK_THROWS_AS(draw_batch(bad_batch, strategy, 2, rng), ConfigError);
}
