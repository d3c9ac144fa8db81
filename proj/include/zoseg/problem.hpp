#pragma once

#include <functional>
#include <vector>

#include "zoseg/core.hpp"

namespace zoseg {

// Finite-sum saddle problem min_x max_y (1/n) sum_i f_i(x, y), described by
// per-component value and operator callables plus the constants the theory
// needs.  Components are strongly convex-strongly concave with modulus mu_i
// (possibly <= 0 for individual components) and L_i-Lipschitz operators.
class SaddleProblem {
 public:
  using ValueFn = std::function<double(int, const Vec&)>;
  using OperatorFn = std::function<Vec(int, const Vec&)>;

  // z_star must satisfy mean_i F_i(z_star) = 0 within tolerance 1e-9; the
  // constructor checks this so every downstream residual is meaningful.
  SaddleProblem(int dim_x, int dim_y, int n, ValueFn value, OperatorFn op,
                Vec lipschitz, Vec monotonicity, Vec z_star);

  int dim_x() const { return dim_x_; }
  int dim_y() const { return dim_y_; }
  int dim() const { return dim_x_ + dim_y_; }
  int n() const { return n_; }

  // f_i(z)
  double value(int component, const Vec& z) const;
  // F_i(z) = [grad_x f_i; -grad_y f_i]
  Vec operator_at(int component, const Vec& z) const;
  // (1/n) sum_i F_i(z)
  Vec mean_operator(const Vec& z) const;

  const Vec& lipschitz() const { return lipschitz_; }
  const Vec& monotonicity() const { return monotonicity_; }
  const Vec& solution() const { return z_star_; }

 private:
  int dim_x_;
  int dim_y_;
  int n_;
  ValueFn value_;
  OperatorFn op_;
  Vec lipschitz_;
  Vec monotonicity_;
  Vec z_star_;
};

// Synthetic instance: f_i(x, y) = x'C_i y + (lambda_i/2)||x||^2
//                               - (lambda_i/2)||y||^2,
// with C_i entries i.i.d. uniform on [-matrix_scale, matrix_scale] and
// lambda_i uniform on [lambda_min, lambda_max].  The unique saddle point is
// z* = 0.  mu_i = lambda_i and L_i = sqrt(lambda_i^2 + sigma_max(C_i)^2).
struct QuadraticBilinearSpec {
  int dim_x = 64;
  int dim_y = 64;
  int n = 32;
  double matrix_scale = 1.0;
  double lambda_min = 0.1;
  double lambda_max = 1.0;
  std::uint64_t seed = 0;

  // When non-empty these override the random draw (sizes must agree with n
  // and the dims).  Used by tests that need hand-built spectra.
  std::vector<Mat> matrices;
  std::vector<double> lambdas;
};

SaddleProblem build_quadratic_bilinear(const QuadraticBilinearSpec& spec);

// ||z - z*||^2
double residual_at(const SaddleProblem& problem, const Vec& z);

// Heterogeneity at the solution under uniform sampling:
//   sigma*^2 = (1/n) sum_i ||F_i(z*)||^2
double sigma_star_squared(const SaddleProblem& problem);

// Importance-sampling counterpart, reweighted by mean(L)/L_i:
//   sigma*_IS^2 = (1/n) sum_i (Lbar/L_i) ||F_i(z*)||^2
double sigma_star_squared_importance(const SaddleProblem& problem);

// Largest singular value by power iteration on C'C (relative tolerance
// 1e-10, capped at 10^4 iterations).  Exposed for direct testing.
double spectral_norm(const Mat& C, Rng& rng);

}  // namespace zoseg
