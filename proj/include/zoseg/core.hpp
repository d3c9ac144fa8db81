#pragma once

#include <Eigen/Core>

#include "zoseg/rng.hpp"

namespace zoseg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// A point z = (x, y) of the saddle problem, stored as one flat vector with
// the primal block first.  Most of the library works on the flat form; this
// helper exists for code that needs to address the blocks.
struct SaddlePoint {
  Vec x;
  Vec y;

  int dim() const { return static_cast<int>(x.size() + y.size()); }

  Vec joined() const {
    Vec z(dim());
    z << x, y;
    return z;
  }

  static SaddlePoint split(const Vec& z, int dim_x) {
    SaddlePoint p;
    p.x = z.head(dim_x);
    p.y = z.tail(z.size() - dim_x);
    return p;
  }
};

// ||a - b||^2 without forming intermediates beyond the difference.
double squared_distance(const Vec& a, const Vec& b);

// One standard normal draw (Box-Muller, two raw words).
double sample_standard_normal(Rng& rng);

// d independent standard normals.
Vec sample_standard_normal_vec(int d, Rng& rng);

// Uniform draw from the unit sphere S^{d-1}: normalized Gaussian vector,
// redrawn in the (astronomically unlikely) case the norm underflows.
Vec sample_unit_sphere(int d, Rng& rng);

}  // namespace zoseg
