#include "zoseg/core.hpp"

#include <cmath>

#include "zoseg/errors.hpp"

namespace zoseg {

double Rng::normal() {
  // Box-Muller, cosine branch only.  u1 is shifted into (0, 1] so the log
  // is always finite; u2 spans the full angle.
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double squared_distance(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw DimensionError("squared_distance: size mismatch");
  }
  return (a - b).squaredNorm();
}

double sample_standard_normal(Rng& rng) { return rng.normal(); }

Vec sample_standard_normal_vec(int d, Rng& rng) {
  if (d <= 0) {
    throw DimensionError("sample_standard_normal_vec: d must be positive");
  }
  Vec v(d);
  for (int i = 0; i < d; ++i) {
    v[i] = rng.normal();
  }
  return v;
}

Vec sample_unit_sphere(int d, Rng& rng) {
  if (d <= 0) {
    throw DimensionError("sample_unit_sphere: d must be positive");
  }
  for (;;) {
    Vec v = sample_standard_normal_vec(d, rng);
    const double norm = v.norm();
    if (norm >= 1e-300) {
      return v / norm;
    }
    // fall through and redraw; d normals all underflowing at once does not
    // happen in practice but the guard keeps the function total
  }
}

}  // namespace zoseg
