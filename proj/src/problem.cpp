#include "zoseg/problem.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "zoseg/errors.hpp"

namespace zoseg {

SaddleProblem::SaddleProblem(int dim_x, int dim_y, int n, ValueFn value,
                             OperatorFn op, Vec lipschitz, Vec monotonicity,
                             Vec z_star)
    : dim_x_(dim_x),
      dim_y_(dim_y),
      n_(n),
      value_(std::move(value)),
      op_(std::move(op)),
      lipschitz_(std::move(lipschitz)),
      monotonicity_(std::move(monotonicity)),
      z_star_(std::move(z_star)) {
  if (dim_x_ <= 0 || dim_y_ <= 0) {
    throw DimensionError("SaddleProblem: block dimensions must be positive");
  }
  if (n_ <= 0) {
    throw DimensionError("SaddleProblem: need at least one component");
  }
  if (lipschitz_.size() != n_ || monotonicity_.size() != n_) {
    throw DimensionError("SaddleProblem: constant vectors must have length n");
  }
  if (z_star_.size() != dim()) {
    throw DimensionError("SaddleProblem: z_star has wrong dimension");
  }
  for (int i = 0; i < n_; ++i) {
    if (!(lipschitz_[i] > 0.0)) {
      throw ConfigError("SaddleProblem: Lipschitz constants must be positive");
    }
  }
  // The whole convergence story is relative to z*; refuse to construct a
  // problem whose claimed solution is not actually stationary.
  const double station = mean_operator(z_star_).norm();
  if (!(station <= 1e-9)) {
    throw ConfigError(
        "SaddleProblem: mean operator at z_star is not zero (norm " +
        std::to_string(station) + ")");
  }
}

double SaddleProblem::value(int component, const Vec& z) const {
  if (component < 0 || component >= n_) {
    throw DimensionError("SaddleProblem::value: component out of range");
  }
  if (z.size() != dim()) {
    throw DimensionError("SaddleProblem::value: point has wrong dimension");
  }
  return value_(component, z);
}

Vec SaddleProblem::operator_at(int component, const Vec& z) const {
  if (component < 0 || component >= n_) {
    throw DimensionError("SaddleProblem::operator_at: component out of range");
  }
  if (z.size() != dim()) {
    throw DimensionError("SaddleProblem::operator_at: point has wrong dimension");
  }
  return op_(component, z);
}

Vec SaddleProblem::mean_operator(const Vec& z) const {
  Vec sum = Vec::Zero(dim());
  for (int i = 0; i < n_; ++i) {
    sum += op_(i, z);
  }
  return sum / static_cast<double>(n_);
}

double spectral_norm(const Mat& C, Rng& rng) {
  if (C.rows() == 0 || C.cols() == 0) {
    throw DimensionError("spectral_norm: empty matrix");
  }
  // Power iteration on C'C.  A random start vector makes a zero projection
  // onto the top eigenspace a measure-zero event.
  Vec v = sample_unit_sphere(static_cast<int>(C.cols()), rng);
  double lambda = 0.0;
  const int max_iters = 10000;
  for (int it = 0; it < max_iters; ++it) {
    Vec w = C.transpose() * (C * v);
    const double norm = w.norm();
    if (norm == 0.0) {
      return 0.0;  // C v = 0 for a random v: C is (numerically) zero
    }
    v = w / norm;
    const double next = norm;  // Rayleigh quotient estimate of lambda_max(C'C)
    if (std::abs(next - lambda) <= 1e-10 * std::max(next, 1e-300)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

SaddleProblem build_quadratic_bilinear(const QuadraticBilinearSpec& spec) {
  // builder inputs are configuration, so every violation is a ConfigError
  if (spec.n <= 0 || spec.dim_x <= 0 || spec.dim_y <= 0) {
    throw ConfigError("build_quadratic_bilinear: sizes must be positive");
  }
  if (spec.lambda_min > spec.lambda_max) {
    throw ConfigError("build_quadratic_bilinear: lambda_min > lambda_max");
  }
  if (!spec.matrices.empty() &&
      static_cast<int>(spec.matrices.size()) != spec.n) {
    throw ConfigError("build_quadratic_bilinear: need n explicit matrices");
  }
  if (!spec.lambdas.empty() && static_cast<int>(spec.lambdas.size()) != spec.n) {
    throw ConfigError("build_quadratic_bilinear: need n explicit lambdas");
  }
  for (const double lambda : spec.lambdas) {
    if (!(lambda > 0.0)) {
      throw ConfigError(
          "build_quadratic_bilinear: explicit lambdas must be positive");
    }
  }

  Rng rng(spec.seed);
  // Separate substreams per concern so adding e.g. one more lambda draw can
  // never shift the matrix entries.
  Rng matrix_rng = rng.substream(1);
  Rng lambda_rng = rng.substream(2);
  Rng power_rng = rng.substream(3);

  std::vector<Mat> matrices;
  matrices.reserve(spec.n);
  if (!spec.matrices.empty()) {
    for (const Mat& C : spec.matrices) {
      if (C.rows() != spec.dim_x || C.cols() != spec.dim_y) {
        throw ConfigError(
            "build_quadratic_bilinear: explicit matrix has wrong shape");
      }
      matrices.push_back(C);
    }
  } else {
    for (int i = 0; i < spec.n; ++i) {
      Mat C(spec.dim_x, spec.dim_y);
      for (int r = 0; r < spec.dim_x; ++r) {
        for (int c = 0; c < spec.dim_y; ++c) {
          C(r, c) = spec.matrix_scale * (2.0 * matrix_rng.uniform() - 1.0);
        }
      }
      matrices.push_back(std::move(C));
    }
  }

  std::vector<double> lambdas;
  lambdas.reserve(spec.n);
  if (!spec.lambdas.empty()) {
    lambdas = spec.lambdas;
  } else {
    for (int i = 0; i < spec.n; ++i) {
      lambdas.push_back(spec.lambda_min +
                        (spec.lambda_max - spec.lambda_min) *
                            lambda_rng.uniform());
    }
  }

  Vec L(spec.n);
  Vec mu(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const double smax = spectral_norm(matrices[i], power_rng);
    L[i] = std::sqrt(lambdas[i] * lambdas[i] + smax * smax);
    mu[i] = lambdas[i];
  }

  const int dim_x = spec.dim_x;
  const int dim_y = spec.dim_y;
  auto mats = std::make_shared<std::vector<Mat>>(std::move(matrices));
  auto lams = std::make_shared<std::vector<double>>(std::move(lambdas));

  auto value = [mats, lams, dim_x](int i, const Vec& z) -> double {
    const auto x = z.head(dim_x);
    const auto y = z.tail(z.size() - dim_x);
    const double lam = (*lams)[static_cast<std::size_t>(i)];
    return x.dot((*mats)[static_cast<std::size_t>(i)] * y) +
           0.5 * lam * x.squaredNorm() - 0.5 * lam * y.squaredNorm();
  };
  auto op = [mats, lams, dim_x](int i, const Vec& z) -> Vec {
    const auto x = z.head(dim_x);
    const auto y = z.tail(z.size() - dim_x);
    const Mat& C = (*mats)[static_cast<std::size_t>(i)];
    const double lam = (*lams)[static_cast<std::size_t>(i)];
    Vec out(z.size());
    out.head(dim_x) = lam * x + C * y;            // grad_x f_i
    out.tail(z.size() - dim_x) = lam * y - C.transpose() * x;  // -grad_y f_i
    return out;
  };

  return SaddleProblem(dim_x, dim_y, spec.n, std::move(value), std::move(op),
                       std::move(L), std::move(mu),
                       Vec::Zero(dim_x + dim_y));
}

double residual_at(const SaddleProblem& problem, const Vec& z) {
  return squared_distance(z, problem.solution());
}

double sigma_star_squared(const SaddleProblem& problem) {
  double sum = 0.0;
  for (int i = 0; i < problem.n(); ++i) {
    sum += problem.operator_at(i, problem.solution()).squaredNorm();
  }
  return sum / static_cast<double>(problem.n());
}

double sigma_star_squared_importance(const SaddleProblem& problem) {
  const Vec& L = problem.lipschitz();
  const double L_bar = L.mean();
  double sum = 0.0;
  for (int i = 0; i < problem.n(); ++i) {
    sum += (L_bar / L[i]) *
           problem.operator_at(i, problem.solution()).squaredNorm();
  }
  return sum / static_cast<double>(problem.n());
}

}  // namespace zoseg
