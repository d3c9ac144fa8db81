#include <doctest.h>

#include <cmath>

#include "zoseg/core.hpp"
#include "zoseg/errors.hpp"
#include "zoseg/problem.hpp"

using namespace zoseg;

namespace {

QuadraticBilinearSpec small_spec(std::uint64_t seed) {
    QuadraticBilinearSpec spec;
    spec.dim_x = 4;
    spec.dim_y = 4;
    spec.n = 6;
    spec.matrix_scale = 1.0;
    spec.lambda_min = 0.2;
    spec.lambda_max = 1.5;
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST_CASE("spectral norm matches reference singular values") {
    Rng rng(3);
    Mat a(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    CHECK(spectral_norm(a, rng) ==
          doctest::Approx(5.4649857042190426).epsilon(1e-9));

    Mat b(1, 1);
    b << 2.0;
    CHECK(spectral_norm(b, rng) == doctest::Approx(2.0).epsilon(1e-12));

    Mat c(3, 2);
    c << 1.0, 0.0, 0.0, 3.0, 4.0, 0.0;
    CHECK(spectral_norm(c, rng) ==
          doctest::Approx(4.1231056256176606).epsilon(1e-9));

    Mat z = Mat::Zero(2, 3);
    CHECK(spectral_norm(z, rng) == 0.0);
}

TEST_CASE("one dimensional instance has closed-form values") {
    QuadraticBilinearSpec spec;
    spec.dim_x = 1;
    spec.dim_y = 1;
    spec.n = 1;
    Mat c(1, 1);
    c << 2.0;
    spec.matrices = {c};
    spec.lambdas = {1.0};
    SaddleProblem problem = build_quadratic_bilinear(spec);

    CHECK(problem.monotonicity()[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(problem.lipschitz()[0] ==
          doctest::Approx(2.2360679774997898).epsilon(1e-9));

    Vec z(2);
    z << 1.0, 3.0;
    // f = x*2*y + x^2/2 - y^2/2 = 6 + 0.5 - 4.5
    CHECK(problem.value(0, z) == doctest::Approx(2.0).epsilon(1e-14));
    // F = (x + 2y, y - 2x) = (7, 1)
    const Vec f = problem.operator_at(0, z);
    CHECK(f[0] == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(f[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("random instances vanish at the saddle point") {
    SaddleProblem problem = build_quadratic_bilinear(small_spec(19));
    const Vec& zs = problem.solution();
    CHECK(residual_at(problem, zs) == 0.0);
    for (int i = 0; i < problem.n(); ++i) {
        CHECK(problem.operator_at(i, zs).norm() <= 1e-12);
    }
    CHECK(sigma_star_squared(problem) <= 1e-24);
    CHECK(sigma_star_squared_importance(problem) <= 1e-24);
}

TEST_CASE("component operators satisfy their stated constants") {
    SaddleProblem problem = build_quadratic_bilinear(small_spec(23));
    Rng rng(77);
    const int d = problem.dim();
    for (int rep = 0; rep < 20; ++rep) {
        const Vec z1 = sample_standard_normal_vec(d, rng) * 2.0;
        const Vec z2 = sample_standard_normal_vec(d, rng) * 2.0;
        for (int i = 0; i < problem.n(); ++i) {
            const double lhs =
                (problem.operator_at(i, z1) - problem.operator_at(i, z2)).norm();
            const double rhs = problem.lipschitz()[i] * (z1 - z2).norm();
            CHECK(lhs <= rhs * (1.0 + 1e-9) + 1e-12);
            // For this family <F_i(z), z> = lambda_i ||z||^2 exactly: the
            // bilinear block is antisymmetric and drops out.
            const double inner = problem.operator_at(i, z1).dot(z1);
            CHECK(inner == doctest::Approx(problem.monotonicity()[i] *
                                           z1.squaredNorm())
                               .epsilon(1e-10));
        }
    }
}

TEST_CASE("mean operator averages the components") {
    SaddleProblem problem = build_quadratic_bilinear(small_spec(31));
    Rng rng(5);
    const Vec z = sample_standard_normal_vec(problem.dim(), rng);
    Vec manual = Vec::Zero(problem.dim());
    for (int i = 0; i < problem.n(); ++i) manual += problem.operator_at(i, z);
    manual /= problem.n();
    CHECK((problem.mean_operator(z) - manual).norm() <= 1e-14);
}

TEST_CASE("instance generation is deterministic in the seed") {
    SaddleProblem a = build_quadratic_bilinear(small_spec(42));
    SaddleProblem b = build_quadratic_bilinear(small_spec(42));
    SaddleProblem c = build_quadratic_bilinear(small_spec(43));
    CHECK((a.lipschitz() - b.lipschitz()).norm() == 0.0);
    CHECK((a.monotonicity() - b.monotonicity()).norm() == 0.0);
    CHECK((a.lipschitz() - c.lipschitz()).norm() != 0.0);
    Vec z(a.dim());
    z.setOnes();
    for (int i = 0; i < a.n(); ++i) {
        CHECK((a.operator_at(i, z) - b.operator_at(i, z)).norm() == 0.0);
        CHECK(a.value(i, z) == b.value(i, z));
    }
}

TEST_CASE("explicit overrides are validated") {
    QuadraticBilinearSpec spec;
    spec.dim_x = 2;
    spec.dim_y = 2;
    spec.n = 2;
    spec.matrices = {Mat::Zero(2, 2)};  // wrong count
    spec.lambdas = {1.0, 1.0};
    CHECK_THROWS_AS(build_quadratic_bilinear(spec), ConfigError);

    spec.matrices = {Mat::Zero(2, 2), Mat::Zero(3, 2)};  // wrong shape
    CHECK_THROWS_AS(build_quadratic_bilinear(spec), ConfigError);

    spec.matrices = {Mat::Zero(2, 2), Mat::Zero(2, 2)};
    spec.lambdas = {1.0, -0.5};  // lambda must be positive
    CHECK_THROWS_AS(build_quadratic_bilinear(spec), ConfigError);
}

TEST_CASE("bad dimensions are rejected") {
    QuadraticBilinearSpec spec;
    spec.dim_x = 0;
    CHECK_THROWS_AS(build_quadratic_bilinear(spec), ConfigError);
    spec.dim_x = 2;
    spec.n = 0;
    CHECK_THROWS_AS(build_quadratic_bilinear(spec), ConfigError);
    spec.n = 2;
    spec.lambda_min = 0.5;
    spec.lambda_max = 0.1;  // empty interval
    CHECK_THROWS_AS(build_quadratic_bilinear(spec), ConfigError);
}

TEST_CASE("constructor checks that z_star is stationary") {
    auto value = [](int, const Vec& z) { return 0.5 * z.squaredNorm(); };
    auto op = [](int, const Vec& z) { return Vec(z); };
    Vec l(1), m(1);
    l << 1.0;
    m << 1.0;
    Vec good = Vec::Zero(2);
    CHECK_NOTHROW(SaddleProblem(1, 1, 1, value, op, l, m, good));
    Vec bad(2);
    bad << 1.0, 0.0;  // F(bad) = bad != 0
    CHECK_THROWS_AS(SaddleProblem(1, 1, 1, value, op, l, m, bad), ConfigError);
}
