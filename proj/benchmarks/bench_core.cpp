#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "pickpoly/bernstein.hpp"
#include "pickpoly/full_model.hpp"
#include "pickpoly/inference.hpp"
#include "pickpoly/pickands.hpp"
#include "pickpoly/simulation.hpp"
#include "pickpoly/submodel.hpp"

namespace {

using namespace pickpoly;

BernsteinPoly alternating(int m) {
  std::vector<double> c(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) c[static_cast<std::size_t>(k)] = 1.0 + 0.5 * std::cos(k);
  return BernsteinPoly(c);
}

void BM_Evaluate(benchmark::State& state) {
  const BernsteinPoly p = alternating(static_cast<int>(state.range(0)));
  double t = 0.0;
  for (auto _ : state) {
    t = t > 0.99 ? 0.0 : t + 0.013;
    benchmark::DoNotOptimize(evaluate(p, t));
  }
}
BENCHMARK(BM_Evaluate)->Arg(4)->Arg(16)->Arg(64);

void BM_EvaluateJet(benchmark::State& state) {
  const BernsteinPoly p = alternating(static_cast<int>(state.range(0)));
  double t = 0.0;
  for (auto _ : state) {
    t = t > 0.99 ? 0.0 : t + 0.013;
    benchmark::DoNotOptimize(evaluate_jet(p, t));
  }
}
BENCHMARK(BM_EvaluateJet)->Arg(7)->Arg(32);

void BM_ValidatePickands(benchmark::State& state) {
  const BernsteinPoly a = a_from_h(alternating(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(validate_pickands(a));
}
BENCHMARK(BM_ValidatePickands)->Arg(2)->Arg(8)->Arg(32);

void BM_ThetaToH(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const ThetaMap map(m);
  std::vector<double> theta(static_cast<std::size_t>(m) + 1, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(map.h(theta));
}
BENCHMARK(BM_ThetaToH)->Arg(5)->Arg(9)->Arg(20);

void BM_LorentzDegree(benchmark::State& state) {
  const BernsteinPoly h({2.0, -1.0 / 3.0, 0.2});
  for (auto _ : state) benchmark::DoNotOptimize(lorentz_degree(h));
}
BENCHMARK(BM_LorentzDegree);

void BM_LogLikelihood(benchmark::State& state) {
  const SampleSet data = sample_copula(SymmetricMixed{0.9}, static_cast<std::size_t>(state.range(0)), 7);
  const PickandsPoly a = PickandsPoly::from_bernstein(a_from_h(BernsteinPoly({0.9, 0.9, 0.9, 0.9, 0.9, 0.9})));
  for (auto _ : state) benchmark::DoNotOptimize(log_likelihood(a, data));
}
BENCHMARK(BM_LogLikelihood)->Arg(100)->Arg(1000);

void BM_FitSub(benchmark::State& state) {
  const SampleSet data = sample_copula(SymmetricMixed{0.9}, 100, 11);
  OptimConfig oc;
  oc.starts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_sub(data, 5, oc));
}
BENCHMARK(BM_FitSub)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_FitCfg(benchmark::State& state) {
  const SampleSet data = sample_copula(SymmetricMixed{0.9}, 100, 11);
  for (auto _ : state) benchmark::DoNotOptimize(fit_cfg(data));
}
BENCHMARK(BM_FitCfg)->Unit(benchmark::kMicrosecond);

void BM_Sample(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sample_copula(AsymmetricLogistic{0.5, 0.1, 0.5}, 1000, 3));
}
BENCHMARK(BM_Sample)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
