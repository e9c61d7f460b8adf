#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pickpoly/inference.hpp"
#include "pickpoly/pickands.hpp"

namespace pickpoly {

/// A(t) = (1-psi1)t + (1-psi2)(1-t) + [(psi1 t)^{1/alpha} + {psi2(1-t)}^{1/alpha}]^alpha
struct AsymmetricLogistic {
  double alpha = 1.0;
  double psi1 = 1.0;
  double psi2 = 1.0;
};

/// A(t) = 1 - psi t + psi t^2
struct SymmetricMixed {
  double psi = 0.0;
};

struct PolynomialModel {
  PickandsPoly a;
};

using ReferenceModel = std::variant<AsymmetricLogistic, SymmetricMixed, PolynomialModel>;

/// Throws DomainError when a parameter is out of range.
void check_model(const ReferenceModel& model);
std::string model_name(const ReferenceModel& model);

GenericPickands model_pickands(const ReferenceModel& model);

/// Conditional inversion: u uniform, then v solves dC/du(u, v) = w by
/// bisection. Deterministic given the seed.
SampleSet sample_copula(const ReferenceModel& model, std::size_t n, std::uint64_t seed);

inline constexpr int kDefaultStudyGrid = 101;

struct StudyConfig {
  ReferenceModel model = SymmetricMixed{0.0};
  std::size_t n = 100;
  int replicates = 100;
  int m = 5;
  std::vector<std::string> estimators{"full", "sub", "cfg"};
  std::uint64_t seed = 1;
  /// Abscissae (uniform on [0,1]) at which the estimates are compared.
  int grid = kDefaultStudyGrid;
  /// Abscissae of the CFG estimator itself.
  int cfg_grid = kDefaultCfgGrid;
  /// Fit the likelihood estimators to rank pseudo-observations.
  bool ranks = false;
  int starts = 20;
  /// 0: hardware concurrency. PICKPOLY_THREADS caps it either way.
  int threads = 0;
};

/// Throws DomainError for an invalid configuration.
void check_study_config(const StudyConfig& config);

struct ReplicateFailure {
  int replicate = 0;
  std::string message;
};

struct EstimatorSummary {
  std::string estimator;
  std::vector<double> mean;
  std::vector<double> mse;
  std::vector<double> variance;
  std::vector<double> bias2;
  /// One entry per replicate; NaN for cfg and for failed replicates.
  std::vector<double> logliks;
  std::vector<ReplicateFailure> failures;
  /// Successful replicates whose estimate violates the Pickands conditions.
  int invalid = 0;

  double grid_mean_mse() const;
};

struct StudyReport {
  std::vector<double> t;
  std::vector<double> truth;
  std::vector<EstimatorSummary> estimators;
  int replicates = 0;
  /// Wall-clock seconds. Not part of the deterministic content.
  double runtime_seconds = 0.0;

  const EstimatorSummary& summary(const std::string& estimator) const;
};

/// Threads actually used for `requested` (0 = auto), honouring PICKPOLY_THREADS.
int resolve_threads(int requested);

/// Replicate r draws its sample with derive_seed(seed, r). More than 1% failed
/// replicates for any estimator is a StudyError.
StudyReport run_study(const StudyConfig& config);

}  // namespace pickpoly
