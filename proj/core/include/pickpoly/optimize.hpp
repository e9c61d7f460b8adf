#pragma once

#include <functional>
#include <span>
#include <vector>

namespace pickpoly {

struct NelderMeadOptions {
  int max_evals = 4000;
  /// Stop when the spread of simplex values is below ftol * (1 + |f_best|)
  /// and the simplex diameter is below xtol.
  double ftol = 1e-10;
  double xtol = 1e-8;
  /// Edge length of the initial simplex along each coordinate.
  std::vector<double> initial_step;
};

struct LocalMinimum {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead simplex search with dimension-adaptive coefficients. The
/// objective may return +infinity to reject a point (an extreme barrier).
LocalMinimum nelder_mead(const Objective& f, std::vector<double> x0,
                         const NelderMeadOptions& options);

}  // namespace pickpoly
