#include <doctest.h>

#include <vector>

#include "zoseg/errors.hpp"
#include "zoseg/rng.hpp"
#include "zoseg/sampling.hpp"

using namespace zoseg;

namespace {

Vec make_vec(std::initializer_list<double> vals) {
    Vec v(static_cast<int>(vals.size()));
    int i = 0;
    for (double x : vals) v[i++] = x;
    return v;
}

}  // namespace

TEST_CASE("aggregates average plainly when all moduli are nonnegative") {
    const Vec mu = make_vec({1.0, 2.0, 3.0});
    const Vec L = make_vec({1.0, 1.0, 1.0});
    const AggregateConstants agg = compute_aggregates(mu, L);
    CHECK(agg.mu_bar == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(agg.L_bar == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(agg.L_max == 1.0);
    CHECK(agg.L_min == 1.0);
}

TEST_CASE("aggregates penalize negative moduli four-fold") {
    const Vec mu = make_vec({1.0, 2.0, -1.0});
    const Vec L = make_vec({1.0, 2.0, 3.0});
    const AggregateConstants agg = compute_aggregates(mu, L);
    // (1 + 2)/3 + 4*(-1)/3 = -1/3
    CHECK(agg.mu_bar == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(agg.L_bar == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(agg.L_max == 3.0);
    CHECK(agg.L_min == 1.0);
}

TEST_CASE("aggregate computation validates its inputs") {
    CHECK_THROWS_AS(
        compute_aggregates(make_vec({1.0}), make_vec({1.0, 2.0})),
        DimensionError);
    CHECK_THROWS_AS(compute_aggregates(Vec(), Vec()), ConfigError);
    CHECK_THROWS_AS(
        compute_aggregates(make_vec({1.0}), make_vec({0.0})), ConfigError);
}

TEST_CASE("uniform strategy defaults and tables") {
    const Vec mu = make_vec({0.5, 0.5});
    const Vec L = make_vec({2.0, 2.0});
    const AggregateConstants agg = compute_aggregates(mu, L);
    SamplingStrategy s = build_strategy(SamplingKind::Uniform, agg, mu, L);
    CHECK(s.kind() == SamplingKind::Uniform);
    CHECK(s.n() == 2);
    CHECK(s.base_gamma() == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    CHECK(s.probability(0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s.probability(1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s.gamma1(0) == s.base_gamma());
    CHECK(s.gamma1(1) == s.base_gamma());
}

TEST_CASE("importance strategy reweights probabilities and stepsizes") {
    const Vec mu = make_vec({0.5, 0.5});
    const Vec L = make_vec({1.0, 3.0});
    const AggregateConstants agg = compute_aggregates(mu, L);
    SamplingStrategy s = build_strategy(SamplingKind::Importance, agg, mu, L);
    CHECK(s.probability(0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(s.probability(1) == doctest::Approx(0.75).epsilon(1e-15));
    // gamma = 1/(6 Lbar) = 1/12, gamma_1i = gamma * Lbar / L_i = 1/(6 L_i)
    CHECK(s.base_gamma() == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    CHECK(s.gamma1(0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(s.gamma1(1) == doctest::Approx(1.0 / 18.0).epsilon(1e-15));

    double total = 0.0;
    for (int i = 0; i < s.n(); ++i) total += s.probability(i);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // E[gamma_1xi] = sum p_i gamma_1i = gamma, a key identity the analysis
    // leans on.
    double expect_gamma = 0.0;
    for (int i = 0; i < s.n(); ++i)
        expect_gamma += s.probability(i) * s.gamma1(i);
    CHECK(expect_gamma == doctest::Approx(s.base_gamma()).epsilon(1e-15));
}

TEST_CASE("uniform and importance coincide for homogeneous constants") {
    const Vec mu = make_vec({0.3, 0.3, 0.3});
    const Vec L = make_vec({2.0, 2.0, 2.0});
    const AggregateConstants agg = compute_aggregates(mu, L);
    SamplingStrategy us = build_strategy(SamplingKind::Uniform, agg, mu, L);
    SamplingStrategy is = build_strategy(SamplingKind::Importance, agg, mu, L);
    for (int i = 0; i < 3; ++i) {
        CHECK(us.probability(i) == doctest::Approx(is.probability(i)));
        CHECK(us.gamma1(i) == doctest::Approx(is.gamma1(i)));
    }
    CHECK(us.base_gamma() == doctest::Approx(is.base_gamma()));
}

TEST_CASE("theory-safe mode enforces the per-component stepsize cap") {
    const Vec mu = make_vec({1.0});
    const Vec L = make_vec({2.0});
    const AggregateConstants agg = compute_aggregates(mu, L);
    // cap = 1/(4*1 + 2*2) = 1/8; default gamma = 1/12 passes
    CHECK_NOTHROW(build_strategy(SamplingKind::Uniform, agg, mu, L));
    // explicit 0.2 > 1/8 is rejected...
    CHECK_THROWS_AS(
        build_strategy(SamplingKind::Uniform, agg, mu, L, 0.2, true),
        ConfigError);
    // ...unless theory-safe mode is explicitly disabled
    SamplingStrategy loose =
        build_strategy(SamplingKind::Uniform, agg, mu, L, 0.2, false);
    CHECK(loose.base_gamma() == 0.2);
}

TEST_CASE("strategies require positive averaged monotonicity") {
    const Vec mu = make_vec({-1.0, -1.0});
    const Vec L = make_vec({1.0, 1.0});
    const AggregateConstants agg = compute_aggregates(mu, L);
    CHECK(agg.mu_bar < 0.0);
    CHECK_THROWS_AS(build_strategy(SamplingKind::Uniform, agg, mu, L),
                    ConfigError);
}

TEST_CASE("invalid explicit stepsizes are rejected") {
    const Vec mu = make_vec({0.5});
    const Vec L = make_vec({1.0});
    const AggregateConstants agg = compute_aggregates(mu, L);
    CHECK_THROWS_AS(
        build_strategy(SamplingKind::Uniform, agg, mu, L, 0.0, false),
        ConfigError);
    CHECK_THROWS_AS(
        build_strategy(SamplingKind::Uniform, agg, mu, L, -0.1, false),
        ConfigError);
}

TEST_CASE("uniform sampling frequencies match the distribution") {
    const Vec mu = make_vec({0.5, 0.5, 0.5, 0.5});
    const Vec L = make_vec({1.0, 1.0, 1.0, 1.0});
    const AggregateConstants agg = compute_aggregates(mu, L);
    SamplingStrategy s = build_strategy(SamplingKind::Uniform, agg, mu, L);
    Rng rng(314);
    std::vector<int> counts(4, 0);
    const int m = 100000;
    for (int i = 0; i < m; ++i) counts[s.sample_component(rng)] += 1;
    for (int i = 0; i < 4; ++i) {
        const double freq = static_cast<double>(counts[i]) / m;
        CHECK(freq > 0.24);
        CHECK(freq < 0.26);
    }
}

TEST_CASE("importance sampling frequencies track the Lipschitz weights") {
    const Vec mu = make_vec({0.5, 0.5});
    const Vec L = make_vec({1.0, 3.0});
    const AggregateConstants agg = compute_aggregates(mu, L);
    SamplingStrategy s = build_strategy(SamplingKind::Importance, agg, mu, L);
    Rng rng(915);
    int hits = 0;
    const int m = 100000;
    for (int i = 0; i < m; ++i)
        if (s.sample_component(rng) == 1) hits += 1;
    const double freq = static_cast<double>(hits) / m;
    CHECK(freq > 0.745);
    CHECK(freq < 0.755);
}

TEST_CASE("single component strategies always sample index zero") {
    const Vec mu = make_vec({1.0});
    const Vec L = make_vec({1.0});
    const AggregateConstants agg = compute_aggregates(mu, L);
    SamplingStrategy s = build_strategy(SamplingKind::Importance, agg, mu, L);
    Rng rng(0);
    for (int i = 0; i < 100; ++i) CHECK(s.sample_component(rng) == 0);
}
