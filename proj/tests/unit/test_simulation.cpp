#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "oracles.hpp"
#include "pickpoly/errors.hpp"
#include "pickpoly/simulation.hpp"

using namespace pickpoly;

namespace {

const AsymmetricLogistic kAlog{0.5, 0.1, 0.5};

PolynomialModel polfull() {
  return {PickandsPoly::from_bernstein(a_from_h(BernsteinPoly({2.0, -1.0 / 3.0, 0.2})))};
}

double ks_uniform(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max({d, (i + 1) / n - x[i], x[i] - i / n});
  }
  return d;
}

}  // namespace

TEST(ModelPickands, Examples) {
  const GenericPickands one = model_pickands(AsymmetricLogistic{1.0, 1.0, 1.0});
  for (int i = 0; i <= 10; ++i) EXPECT_NEAR(one.value(i / 10.0), 1.0, 1e-15);
  const GenericPickands alog = model_pickands(kAlog);
  EXPECT_DOUBLE_EQ(alog.value(1.0), 1.0);
  EXPECT_DOUBLE_EQ(alog.value(0.0), 1.0);
  EXPECT_NEAR(model_pickands(SymmetricMixed{0.9}).value(0.5), 0.775, 1e-15);
  EXPECT_THROW(model_pickands(AsymmetricLogistic{0.0, 0.5, 0.5}), DomainError);
  EXPECT_THROW(model_pickands(AsymmetricLogistic{0.5, 1.5, 0.5}), DomainError);
  EXPECT_THROW(model_pickands(SymmetricMixed{-0.1}), DomainError);
}

TEST(ModelPickands, AnalyticDerivativesMatchFiniteDifferences) {
  oracle::Rng rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    const AsymmetricLogistic m{oracle::uniform(rng, 0.2, 1.0), oracle::uniform(rng, 0.0, 1.0),
                               oracle::uniform(rng, 0.0, 1.0)};
    const GenericPickands a = model_pickands(m);
    for (int i = 1; i < 20; ++i) {
      const double t = i / 20.0;
      const Jet j = a.jet(t);
      EXPECT_NEAR(j.first, oracle::central_diff([&](double x) { return a.value(x); }, t), 1e-6);
      EXPECT_NEAR(j.second, oracle::central_diff([&](double x) { return a.jet(x).first; }, t), 1e-5);
      EXPECT_GE(j.second, -1e-12);  // convex for alpha in (0,1]
    }
  }
}

TEST(SampleCopula, DeterministicGivenSeed) {
  const SampleSet a = sample_copula(kAlog, 200, 5);
  const SampleSet b = sample_copula(kAlog, 200, 5);
  const SampleSet c = sample_copula(kAlog, 200, 6);
  ASSERT_EQ(a.size(), 200u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.pairs()[i].u, b.pairs()[i].u);
    EXPECT_EQ(a.pairs()[i].v, b.pairs()[i].v);
  }
  EXPECT_NE(a.pairs()[0].u, c.pairs()[0].u);
}

TEST(SampleCopula, IndependenceHasNoCorrelation) {
  const std::size_t n = 5000;
  const SampleSet s = sample_copula(SymmetricMixed{0.0}, n, 9);
  double su = 0, sv = 0, suv = 0, suu = 0, svv = 0;
  for (const UV& p : s.pairs()) {
    su += p.u;
    sv += p.v;
    suv += p.u * p.v;
    suu += p.u * p.u;
    svv += p.v * p.v;
  }
  const double nn = static_cast<double>(n);
  const double cov = suv / nn - su / nn * sv / nn;
  const double r = cov / std::sqrt((suu / nn - su * su / nn / nn) * (svv / nn - sv * sv / nn / nn));
  EXPECT_LT(std::abs(r), 3.0 / std::sqrt(nn));
}

TEST(SampleCopula, MixedModelCdfAtCentre) {
  const std::size_t n = 100000;
  const SampleSet s = sample_copula(SymmetricMixed{0.9}, n, 10);
  const double p = copula_cdf(model_pickands(SymmetricMixed{0.9}), 0.5, 0.5);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  EXPECT_NEAR(oracle::empirical_copula(s.pairs(), 0.5, 0.5), p, 3.0 * se);
}

TEST(SampleCopula, UniformMarginsAndEmpiricalCopula) {
  const std::vector<ReferenceModel> models{kAlog, SymmetricMixed{0.9}, polfull()};
  std::uint64_t seed = 100;
  for (const auto& model : models) {
    const std::size_t n = 100000;
    const SampleSet s = sample_copula(model, n, ++seed);
    std::vector<double> u, v;
    for (const UV& p : s.pairs()) {
      u.push_back(p.u);
      v.push_back(p.v);
    }
    EXPECT_LE(ks_uniform(u), 1.63 / std::sqrt(static_cast<double>(n)));
    EXPECT_LE(ks_uniform(v), 1.63 / std::sqrt(static_cast<double>(n)));
    const GenericPickands a = model_pickands(model);
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
      for (int j = 1; j <= 9; ++j) {
        worst = std::max(worst, std::abs(oracle::empirical_copula(s.pairs(), i / 10.0, j / 10.0) -
                                         copula_cdf(a, i / 10.0, j / 10.0)));
      }
    }
    EXPECT_LE(worst, 0.01) << model_name(model);
  }
}

TEST(SampleCopula, ConditionalIsMonotoneForAllModels) {
  const std::vector<ReferenceModel> models{kAlog, AsymmetricLogistic{0.2, 1.0, 0.7}, SymmetricMixed{1.0}, polfull()};
  for (const auto& model : models) {
    const GenericPickands a = model_pickands(model);
    for (double u : {0.01, 0.2, 0.5, 0.9, 0.999}) {
      double prev = 0.0;
      for (int j = 0; j <= 400; ++j) {
        const double d = copula_du(a, u, j / 400.0);
        EXPECT_GE(d, prev - 1e-12) << model_name(model) << ' ' << u << ' ' << j;
        EXPECT_LE(d, 1.0 + 1e-12);
        prev = d;
      }
      EXPECT_NEAR(prev, 1.0, 1e-12);
    }
  }
}

TEST(StudyConfig, Validation) {
  StudyConfig c;
  c.n = 1;
  EXPECT_THROW(check_study_config(c), DomainError);
  c = StudyConfig{};
  c.estimators = {"full", "mle"};
  EXPECT_THROW(check_study_config(c), DomainError);
  c.estimators = {"sub", "sub"};
  EXPECT_THROW(check_study_config(c), DomainError);
  c = StudyConfig{};
  c.replicates = 0;
  EXPECT_THROW(check_study_config(c), DomainError);
}

TEST(RunStudy, SingleReplicateDecomposition) {
  StudyConfig c;
  c.model = SymmetricMixed{0.7};
  c.n = 40;
  c.replicates = 1;
  c.m = 3;
  c.starts = 3;
  c.grid = 21;
  const StudyReport r = run_study(c);
  ASSERT_EQ(r.estimators.size(), 3u);
  for (const auto& s : r.estimators) {
    for (std::size_t k = 0; k < r.t.size(); ++k) {
      EXPECT_EQ(s.variance[k], 0.0);
      EXPECT_NEAR(s.mse[k], s.bias2[k], 1e-15);
    }
  }
}

TEST(RunStudy, DecompositionAndDeterminismAcrossThreads) {
  StudyConfig c;
  c.model = kAlog;
  c.n = 50;
  c.replicates = 12;
  c.m = 3;
  c.starts = 3;
  c.grid = 31;
  c.seed = 4242;
  c.threads = 1;
  const StudyReport one = run_study(c);
  c.threads = 3;
  ::unsetenv("PICKPOLY_THREADS");
  const StudyReport three = run_study(c);
  ASSERT_EQ(one.estimators.size(), three.estimators.size());
  for (std::size_t e = 0; e < one.estimators.size(); ++e) {
    const auto& a = one.estimators[e];
    const auto& b = three.estimators[e];
    EXPECT_EQ(a.mse, b.mse);
    EXPECT_EQ(a.variance, b.variance);
    EXPECT_EQ(a.bias2, b.bias2);
    EXPECT_EQ(a.mean, b.mean);
    ASSERT_EQ(a.logliks.size(), b.logliks.size());
    for (std::size_t r = 0; r < a.logliks.size(); ++r) {
      if (std::isnan(a.logliks[r])) EXPECT_TRUE(std::isnan(b.logliks[r]));
      else EXPECT_EQ(a.logliks[r], b.logliks[r]);
    }
    EXPECT_TRUE(a.failures.empty());
    EXPECT_EQ(a.invalid, 0);
    for (std::size_t k = 0; k < one.t.size(); ++k) EXPECT_NEAR(a.mse[k], a.variance[k] + a.bias2[k], 1e-10);
  }
  EXPECT_EQ(one.summary("cfg").estimator, "cfg");
  EXPECT_THROW(one.summary("nope"), DomainError);
}

TEST(ResolveThreads, EnvironmentCaps) {
  ::setenv("PICKPOLY_THREADS", "2", 1);
  EXPECT_EQ(resolve_threads(8), 2);
  EXPECT_EQ(resolve_threads(1), 1);
  ::setenv("PICKPOLY_THREADS", "junk", 1);
  EXPECT_EQ(resolve_threads(5), 5);
  ::unsetenv("PICKPOLY_THREADS");
  EXPECT_GE(resolve_threads(0), 1);
}

TEST(RunStudy, SubmodelBeatsFullForSmallSamples) {
  // Large m relative to n favours the submodel; the advantage fades as n grows.
  // The n = 30 gap is about 5% of the MSE, so it needs many replicates.
  auto gap = [](std::size_t n, int reps) {
    StudyConfig c;
    c.model = kAlog;
    c.n = n;
    c.replicates = reps;
    c.m = 5;
    c.starts = 5;
    c.grid = 51;
    c.seed = 5;
    c.estimators = {"full", "sub"};
    const StudyReport r = run_study(c);
    return r.summary("full").grid_mean_mse() - r.summary("sub").grid_mean_mse();
  };
  const double small = gap(30, 1000);
  const double large = gap(1000, 20);
  EXPECT_GT(small, 0.0);
  EXPECT_LE(std::abs(large), small / 2.0);
}
