#include "pickpoly/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <random>
#include <thread>

#include "pickpoly/errors.hpp"
#include "pickpoly/numeric.hpp"

namespace pickpoly {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

// Analytic (A, A', A'') of the asymmetric logistic model.
struct Alog {
  double alpha, psi1, psi2;

  Jet jet(double t) const {
    const double r = 1.0 / alpha;
    const double a = psi1 * t, b = psi2 * (1.0 - t);
    Jet j;
    j.value = (1.0 - psi1) * t + (1.0 - psi2) * (1.0 - t);
    j.first = psi2 - psi1;
    const double ar = a > 0.0 ? std::pow(a, r) : 0.0;
    const double br = b > 0.0 ? std::pow(b, r) : 0.0;
    const double s = ar + br;
    if (s <= 0.0) return j;
    j.value += std::pow(s, alpha);
    // d/dt of a^r is r psi1 a^{r-1}; the factor r cancels alpha.
    const double ar1 = a > 0.0 ? ar / a : (r == 1.0 ? 1.0 : 0.0);
    const double br1 = b > 0.0 ? br / b : (r == 1.0 ? 1.0 : 0.0);
    const double d = psi1 * ar1 - psi2 * br1;
    j.first += std::pow(s, alpha - 1.0) * d;
    if (r == 1.0) return j;
    auto second_term = [r](double psi, double x) {
      if (psi == 0.0) return 0.0;
      return psi * psi * std::pow(x, r - 2.0);
    };
    j.second = (r - 1.0) * (std::pow(s, alpha - 1.0) * (second_term(psi1, a) + second_term(psi2, b)) -
                            std::pow(s, alpha - 2.0) * d * d);
    return j;
  }
};

Jet mixed_jet(double psi, double t) {
  return {1.0 - psi * t + psi * t * t, -psi + 2.0 * psi * t, 2.0 * psi};
}

template <class F>
SampleSet sample_with(const F& a, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto open_uniform = [&] {
    double x = 0.0;
    do {
      x = unif(rng);
    } while (x <= 0.0);
    return x;
  };
  constexpr double eps = 1e-14;
  std::vector<UV> pairs(n);
  for (auto& p : pairs) {
    const double u = open_uniform();
    const double w = open_uniform();
    double lo = eps, hi = 1.0 - eps;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (copula_du(a, u, mid) < w) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    p = {u, 0.5 * (lo + hi)};
  }
  return SampleSet(std::move(pairs));
}

std::vector<double> uniform_grid(int g) {
  std::vector<double> t(static_cast<std::size_t>(g));
  for (int k = 0; k < g; ++k) t[static_cast<std::size_t>(k)] = static_cast<double>(k) / (g - 1);
  return t;
}

}  // namespace

void check_model(const ReferenceModel& model) {
  std::visit(Overloaded{
                 [](const AsymmetricLogistic& m) {
                   if (!(m.alpha > 0.0 && m.alpha <= 1.0)) {
                     throw DomainError("asymmetric_logistic: alpha must lie in (0,1]");
                   }
                   if (!in_unit(m.psi1) || !in_unit(m.psi2)) {
                     throw DomainError("asymmetric_logistic: psi1, psi2 must lie in [0,1]");
                   }
                 },
                 [](const SymmetricMixed& m) {
                   if (!in_unit(m.psi)) throw DomainError("symmetric_mixed: psi must lie in [0,1]");
                 },
                 [](const PolynomialModel&) {},
             },
             model);
}

std::string model_name(const ReferenceModel& model) {
  return std::visit(Overloaded{
                        [](const AsymmetricLogistic&) { return std::string("asymmetric_logistic"); },
                        [](const SymmetricMixed&) { return std::string("symmetric_mixed"); },
                        [](const PolynomialModel&) { return std::string("polynomial"); },
                    },
                    model);
}

GenericPickands model_pickands(const ReferenceModel& model) {
  check_model(model);
  return std::visit(
      Overloaded{
          [](const AsymmetricLogistic& m) {
            const Alog f{m.alpha, m.psi1, m.psi2};
            return GenericPickands([f](double t) { return f.jet(t).value; },
                                   [f](double t) { return f.jet(t).first; },
                                   [f](double t) { return f.jet(t).second; }, "asymmetric_logistic");
          },
          [](const SymmetricMixed& m) {
            const double psi = m.psi;
            return GenericPickands([psi](double t) { return mixed_jet(psi, t).value; },
                                   [psi](double t) { return mixed_jet(psi, t).first; },
                                   [psi](double t) { return mixed_jet(psi, t).second; },
                                   "symmetric_mixed");
          },
          [](const PolynomialModel& m) { return GenericPickands::from_poly(m.a); },
      },
      model);
}

SampleSet sample_copula(const ReferenceModel& model, std::size_t n, std::uint64_t seed) {
  check_model(model);
  if (n == 0) throw DomainError("sample_copula: n must be at least 1");
  struct MixedF {
    double psi;
    double value(double t) const { return mixed_jet(psi, t).value; }
    Jet jet(double t) const { return mixed_jet(psi, t); }
  };
  struct AlogF {
    Alog f;
    double value(double t) const { return f.jet(t).value; }
    Jet jet(double t) const { return f.jet(t); }
  };
  return std::visit(Overloaded{
                        [&](const AsymmetricLogistic& m) {
                          return sample_with(AlogF{{m.alpha, m.psi1, m.psi2}}, n, seed);
                        },
                        [&](const SymmetricMixed& m) { return sample_with(MixedF{m.psi}, n, seed); },
                        [&](const PolynomialModel& m) { return sample_with(m.a, n, seed); },
                    },
                    model);
}

void check_study_config(const StudyConfig& config) {
  check_model(config.model);
  if (config.n < 2) throw DomainError("study: n must be at least 2");
  if (config.replicates < 1) throw DomainError("study: replicates must be at least 1");
  if (config.m < 0) throw DomainError("study: m must be nonnegative");
  if (config.grid < 2) throw DomainError("study: grid must have at least two abscissae");
  if (config.cfg_grid < 2) throw DomainError("study: cfg grid must have at least two abscissae");
  if (config.starts < 1) throw DomainError("study: starts must be at least 1");
  if (config.estimators.empty()) throw DomainError("study: no estimators requested");
  for (std::size_t i = 0; i < config.estimators.size(); ++i) {
    const auto& e = config.estimators[i];
    if (e != "full" && e != "sub" && e != "cfg") throw DomainError("study: unknown estimator '" + e + "'");
    for (std::size_t j = 0; j < i; ++j) {
      if (config.estimators[j] == e) throw DomainError("study: duplicate estimator '" + e + "'");
    }
  }
}

double EstimatorSummary::grid_mean_mse() const {
  double s = 0.0;
  for (double x : mse) s += x;
  return mse.empty() ? 0.0 : s / static_cast<double>(mse.size());
}

const EstimatorSummary& StudyReport::summary(const std::string& estimator) const {
  for (const auto& s : estimators) {
    if (s.estimator == estimator) return s;
  }
  throw DomainError("study report has no estimator '" + estimator + "'");
}

int resolve_threads(int requested) {
  int threads = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* env = std::getenv("PICKPOLY_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) threads = std::min<long>(threads, cap);
  }
  return threads;
}

StudyReport run_study(const StudyConfig& config) {
  check_study_config(config);
  const auto started = std::chrono::steady_clock::now();

  StudyReport report;
  report.replicates = config.replicates;
  report.t = uniform_grid(config.grid);
  const GenericPickands truth = model_pickands(config.model);
  for (double t : report.t) report.truth.push_back(truth.value(t));

  const std::size_t reps = static_cast<std::size_t>(config.replicates);
  const std::size_t n_est = config.estimators.size();
  const std::size_t g = report.t.size();

  struct Slot {
    std::optional<std::vector<double>> values;
    double loglik = std::numeric_limits<double>::quiet_NaN();
    bool valid = true;
    std::string error;
  };
  std::vector<std::vector<Slot>> slots(reps, std::vector<Slot>(n_est));

  auto run_replicate = [&](std::size_t r) {
    const std::uint64_t rep_seed = derive_seed(config.seed, r);
    std::optional<SampleSet> data;
    try {
      data.emplace(sample_copula(config.model, config.n, rep_seed));
    } catch (const std::exception& e) {
      for (auto& s : slots[r]) s.error = std::string("sampling failed: ") + e.what();
      return;
    }
    const SampleSet fit_data = config.ranks ? data->with_ranks() : *data;
    for (std::size_t e = 0; e < n_est; ++e) {
      Slot& slot = slots[r][e];
      const std::string& name = config.estimators[e];
      OptimConfig oc;
      oc.starts = config.starts;
      oc.seed = derive_seed(rep_seed, e + 1);
      try {
        FitResult fit = name == "full" ? fit_full(fit_data, config.m, oc)
                        : name == "sub" ? fit_sub(fit_data, config.m, oc)
                                        : fit_cfg(*data, config.cfg_grid);
        std::vector<double> v(g);
        for (std::size_t k = 0; k < g; ++k) v[k] = fit.value(report.t[k]);
        slot.values = std::move(v);
        slot.loglik = fit.loglik;
        slot.valid = fit.is_valid();
      } catch (const std::exception& ex) {
        slot.error = ex.what();
      }
    }
  };

  const int threads = std::min<int>(resolve_threads(config.threads), static_cast<int>(reps));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < reps; r = next++) run_replicate(r);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  // Aggregation in replicate order keeps the floating-point sums independent
  // of scheduling.
  for (std::size_t e = 0; e < n_est; ++e) {
    EstimatorSummary s;
    s.estimator = config.estimators[e];
    s.mean.assign(g, 0.0);
    s.mse.assign(g, 0.0);
    s.variance.assign(g, 0.0);
    s.bias2.assign(g, 0.0);
    std::size_t ok = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      const Slot& slot = slots[r][e];
      s.logliks.push_back(slot.loglik);
      if (!slot.values) {
        s.failures.push_back({static_cast<int>(r), slot.error});
        continue;
      }
      if (!slot.valid) ++s.invalid;
      ++ok;
      for (std::size_t k = 0; k < g; ++k) s.mean[k] += (*slot.values)[k];
    }
    if (static_cast<double>(s.failures.size()) > 0.01 * static_cast<double>(reps)) {
      throw StudyError("study: estimator '" + s.estimator + "' failed on " +
                       std::to_string(s.failures.size()) + " of " + std::to_string(reps) +
                       " replicates; first: " + s.failures.front().message);
    }
    if (ok == 0) throw StudyError("study: estimator '" + s.estimator + "' produced no estimates");
    const double cnt = static_cast<double>(ok);
    for (double& x : s.mean) x /= cnt;
    for (std::size_t r = 0; r < reps; ++r) {
      const Slot& slot = slots[r][e];
      if (!slot.values) continue;
      for (std::size_t k = 0; k < g; ++k) {
        const double x = (*slot.values)[k];
        s.variance[k] += (x - s.mean[k]) * (x - s.mean[k]);
        s.mse[k] += (x - report.truth[k]) * (x - report.truth[k]);
      }
    }
    for (std::size_t k = 0; k < g; ++k) {
      s.variance[k] /= cnt;
      s.mse[k] /= cnt;
      const double bias = s.mean[k] - report.truth[k];
      s.bias2[k] = bias * bias;
    }
    report.estimators.push_back(std::move(s));
  }

  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace pickpoly
