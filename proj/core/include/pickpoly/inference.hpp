#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pickpoly/full_model.hpp"
#include "pickpoly/pickands.hpp"
#include "pickpoly/submodel.hpp"

namespace pickpoly {

struct UV {
  double u = 0.0;
  double v = 0.0;
};

/// n >= 1 pairs strictly inside (0,1)^2.
class SampleSet {
 public:
  explicit SampleSet(std::vector<UV> pairs);

  /// CSV with mandatory header "u,v".
  static SampleSet from_csv(std::istream& in);
  void to_csv(std::ostream& out) const;

  /// Pseudo-observations rank/(n+1), midranks for ties.
  SampleSet with_ranks() const;

  std::size_t size() const noexcept { return pairs_.size(); }
  std::span<const UV> pairs() const noexcept { return pairs_; }

 private:
  std::vector<UV> pairs_;
};

inline constexpr double kLogLikSentinel = -1e300;

struct LogLikelihood {
  double value = 0.0;
  /// Density was <= 0 at some pair; `value` is then kLogLikSentinel.
  bool degenerate = false;
};

/// Sum of log copula densities.
LogLikelihood log_likelihood(const PickandsPoly& a, const SampleSet& data);

struct OptimConfig {
  int starts = 20;
  std::uint64_t seed = 1;
  int max_evals = 3000;
  double ftol = 1e-10;
  /// Weight of the log-barrier on the endpoint-derivative constraints, per
  /// observation.
  double barrier = 1e-6;
};

/// A fitted estimate: a polynomial for the likelihood estimators, a grid
/// function for the CFG estimator.
using Estimate = std::variant<PickandsPoly, PiecewiseLinearPickands>;

struct FitResult {
  std::string model;  ///< "full", "sub" or "cfg"
  Estimate estimate;
  double loglik = 0.0;  ///< NaN for cfg
  std::variant<std::monostate, FullModelParam, SubmodelParam> param;
  int starts_used = 0;
  bool converged = false;

  double value(double t) const;
  /// The Pickands conditions hold (polynomial: validate_pickands; grid: the
  /// piecewise-linear conditions).
  bool is_valid() const;
};

/// Multi-start maximization of the likelihood over Theta_m.
FitResult fit_full(const SampleSet& data, int m, const OptimConfig& config = {});

/// Multi-start maximization of the likelihood over the polytope C_m^+.
FitResult fit_sub(const SampleSet& data, int m, const OptimConfig& config = {});

inline constexpr int kDefaultCfgGrid = 1001;

/// Endpoint-corrected CFG estimator on `grid` abscissae, repaired as the
/// greatest convex minorant of 1 ^ (A v V).
FitResult fit_cfg(const SampleSet& data, int grid = kDefaultCfgGrid);

/// Lower convex hull of (k/(n-1), values[k]) evaluated back on the grid.
std::vector<double> greatest_convex_minorant(std::span<const double> values);

}  // namespace pickpoly
