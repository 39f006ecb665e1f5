#pragma once

#include <span>

namespace nlslab {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double max_residual = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_linear(std::span<const double> xs, std::span<const double> ys);

/// Least squares on (log x, log y); entries must be positive.
LinearFit fit_loglog(std::span<const double> xs, std::span<const double> ys);

}  // namespace nlslab
