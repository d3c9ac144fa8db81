#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace zoseg {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched or invalid dimensions (empty vectors, d <= 0, ...).
struct DimensionError : Error {
  using Error::Error;
};

// Invalid configuration values (bad enum names, out-of-range scalars, ...).
struct ConfigError : Error {
  using Error::Error;
};

// Raised when an iterate leaves the representable region.  Carries enough
// state for callers to flush partial results and report where things died.
struct DivergenceError : Error {
  DivergenceError(std::string what, Eigen::VectorXd last_finite_iterate,
                  long iteration_index)
      : Error(std::move(what)),
        last_finite(std::move(last_finite_iterate)),
        iteration(iteration_index) {}

  Eigen::VectorXd last_finite;
  long iteration;
};

}  // namespace zoseg
