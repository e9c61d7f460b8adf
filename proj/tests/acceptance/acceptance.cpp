// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pickpoly/full_model.hpp"
#include "pickpoly/measures.hpp"
#include "pickpoly/serialization.hpp"
#include "pickpoly/simulation.hpp"
#include "pickpoly/submodel.hpp"

using namespace pickpoly;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

// Best of `repeats` wall-clock runs, in seconds.
double min_seconds(const std::function<void()>& f, int repeats) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double v_fn(double t) { return std::max(t, 1.0 - t); }

const std::vector<double> kPolfullH{2.0, -1.0 / 3.0, 0.2};

Outcome c1_round_trip() {
  Outcome o;
  const std::vector<double> expect{1.0, -83.0 / 180.0, 1.0, -7.0 / 9.0, 43.0 / 180.0};
  BernsteinPoly a = BernsteinPoly::zero(0);
  BernsteinPoly h = BernsteinPoly::zero(0);
  const double secs = min_seconds(
      [&] {
        a = a_from_h(BernsteinPoly(kPolfullH));
        h = h_from_a(a);
      },
      20);
  const auto power = bernstein_to_power(a).coeffs();
  o.require(power.size() == expect.size(), "power degree");
  double err = 0.0;
  for (std::size_t k = 0; k < std::min(power.size(), expect.size()); ++k) err = std::max(err, std::abs(power[k] - expect[k]));
  o.require(err <= 1e-12, "power coefficients off by " + fmt(err));
  double back = 0.0;
  for (std::size_t k = 0; k < kPolfullH.size(); ++k) back = std::max(back, std::abs(h[k] - kPolfullH[k]));
  o.require(h.degree() == 2 && back <= 1e-12, "inverse map error " + fmt(back));
  o.require(secs < 1e-3, "runtime " + fmt(secs) + " s");
  o.detail = o.pass ? "max coeff error " + fmt(err) + ", inverse error " + fmt(back) : o.detail;
  return o;
}

Outcome c2_counterexample() {
  Outcome o;
  const BernsteinPoly a = power_to_bernstein(PowerPoly({1.0, 0.0, 0.0, -1.0, 1.0}), 4);
  ValidationReport r;
  const double secs = min_seconds([&] { r = validate_pickands(a); }, 20);
  o.require(!r.valid, "accepted");
  const auto it = std::find_if(r.violations.begin(), r.violations.end(), [](const Violation& v) { return v.rule == "convexity"; });
  o.require(it != r.violations.end(), "no convexity violation");
  if (it != r.violations.end()) {
    o.require(it->witness > 0.0 && it->witness < 0.5, "witness " + fmt(it->witness));
    if (o.pass) o.detail = "convexity witness " + fmt(it->witness);
  }
  // Endpoints, endpoint slopes and bounds hold, so only convexity can reject it.
  o.require(a[0] == 1.0 && a[4] == 1.0, "endpoint values");
  o.require(secs < 1e-3, "runtime " + fmt(secs) + " s");
  return o;
}

Outcome c3_gap_exhibits() {
  Outcome o;
  const BernsteinPoly a4({1.0, 0.75, 1.0, 0.75, 1.0});
  o.require(validate_pickands(a4).valid, "A4+ rejected by validate_pickands");
  o.require(!in_submodel_a(a4), "A4+ accepted by in_submodel_a");
  const BernsteinPoly h(kPolfullH);
  const LorentzResult r = lorentz_degree(h);
  o.require(r.kind == LorentzResult::Kind::finite && r.degree == 6, "lorentz degree " + r.to_string());
  o.require(!in_submodel_h(elevate_degree(h, 5).coeffs()).member, "degree-5 elevation is a member");
  o.require(in_submodel_h(elevate_degree(h, 6).coeffs()).member, "degree-6 elevation is not a member");
  if (o.pass) o.detail = "lorentz degree 6, polfull in A8+ minus A7+";
  return o;
}

Outcome c4_lorentz_closed_form() {
  Outcome o;
  int checked = 0;
  const double secs = min_seconds(
      [&] {
        checked = 0;
        for (double alpha : {0.25, 1.0}) {
          for (double beta : {0.1, 0.5, 1.0, 1.5, 1.9}) {
            const LorentzResult r = lorentz_degree(oracle::h_alpha_beta(alpha, beta));
            const int want = 2 * static_cast<int>(std::ceil((1.0 + beta) / (2.0 - beta)));
            o.require(r.kind == LorentzResult::Kind::finite && r.degree == want,
                      "alpha " + fmt(alpha) + " beta " + fmt(beta) + ": degree " + r.to_string() +
                          ", closed form " + std::to_string(want));
            ++checked;
          }
          for (double beta : {-1.0, -0.5}) {
            const LorentzResult r = lorentz_degree(oracle::h_alpha_beta(alpha, beta));
            o.require(r.kind == LorentzResult::Kind::finite && r.degree == 2, "beta " + fmt(beta));
            ++checked;
          }
          const LorentzResult inf = lorentz_degree(oracle::h_alpha_beta(alpha, 2.0));
          o.require(inf.kind == LorentzResult::Kind::infinite, "beta 2: " + inf.to_string());
          ++checked;
        }
      },
      3);
  o.require(secs < 1.0, "runtime " + fmt(secs) + " s");
  if (o.pass) o.detail = std::to_string(checked) + " cases";
  return o;
}

Outcome c5_tau_range() {
  Outcome o;
  double worst = 0.0;
  for (int m = 1; m <= 30; ++m) {
    const double k = std::floor(m / 2.0);
    const double want = k / (k + 0.5);
    const double got = submodel_tau_range(m, 2);
    worst = std::max(worst, std::abs(got - want));
    o.require(std::abs(got - want) <= 1e-14, "m " + std::to_string(m));
    const double tau2 = tau_measures(PickandsPoly::from_bernstein(bernstein_approx(v_fn, m))).tau2;
    o.require(std::abs(tau2 - got) <= 1e-14, "B_m(V) tau2 at m " + std::to_string(m));
  }
  if (o.pass) o.detail = "max error " + fmt(worst);
  return o;
}

Outcome c6_approx_bounds() {
  Outcome o;
  oracle::Rng rng(6);
  const double secs = min_seconds(
      [&] {
        for (int trial = 0; trial < 100; ++trial) {
          const GenericPickands a = GenericPickands::from_poly(oracle::random_pickands(rng, static_cast<int>(rng() % 8)));
          for (int m : {2, 8, 32}) {
            for (int i = 0; i <= 100; ++i) {
              const ApproxErrorReport r = approx_error_bound(a, m, i / 100.0);
              o.require(r.error >= -1e-12 && r.error <= r.bound + 1e-12,
                        "trial " + std::to_string(trial) + " m " + std::to_string(m));
            }
          }
        }
      },
      1);
  const GenericPickands v = GenericPickands::comonotone();
  for (int m : {2, 8, 32}) {
    const ApproxErrorReport r = approx_error_bound(v, m, 0.5);
    o.require(r.v_bound.has_value() && std::abs(r.error - *r.v_bound) <= 1e-15, "V-bound equality at m " + std::to_string(m));
  }
  o.require(secs < 5.0, "runtime " + fmt(secs) + " s");
  if (o.pass) o.detail = "30300 abscissa checks in " + fmt(secs) + " s";
  return o;
}

Outcome c7_full_model_soundness() {
  Outcome o;
  oracle::Rng rng(7);
  const double secs = min_seconds(
      [&] {
        for (int trial = 0; trial < 1000; ++trial) {
          const int m = static_cast<int>(rng() % 10);
          const FullModelParam p(m, oracle::random_feasible_theta(rng, m));
          o.require(feasibility(p).feasible, "generated theta not feasible");
          o.require(validate_pickands(theta_to_pickands(p).poly()).valid, "feasible theta gave invalid A");
        }
        for (int trial = 0; trial < 1000; ++trial) {
          const int m = static_cast<int>(rng() % 10);
          if (m == 0) {
            // h = theta is linear at degree 0; feasible iff 0 <= theta <= 2.
            const double x = trial % 2 == 0 ? oracle::uniform(rng, -2.0, -1e-9) : oracle::uniform(rng, 2.0 + 1e-9, 4.0);
            o.require(!feasibility(FullModelParam(0, {x})).feasible, "infeasible degree-0 theta accepted");
            continue;
          }
          auto theta = oracle::random_vector(rng, static_cast<std::size_t>(m) + 1, -1.0, 1.0);
          const Feasibility f = feasibility(FullModelParam(m, theta));
          // Scale out of the ellipsoid intersection: the functionals are quadratic in theta.
          const double scale = std::sqrt(oracle::uniform(rng, 1.001, 4.0) / std::max(f.q0, f.q1));
          for (double& x : theta) x *= scale;
          o.require(!feasibility(FullModelParam(m, theta)).feasible, "infeasible theta accepted");
        }
      },
      1);
  o.require(secs < 10.0, "runtime " + fmt(secs) + " s");
  if (o.pass) o.detail = "2000 parameters in " + fmt(secs) + " s";
  return o;
}

Outcome c8_appendix_formulas() {
  Outcome o;
  oracle::Rng rng(8);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int m = static_cast<int>(rng() % 10);
    const auto theta = oracle::random_vector(rng, static_cast<std::size_t>(m) + 1, -2.0, 2.0);
    const BernsteinPoly h = theta_to_h(FullModelParam(m, theta));
    for (int i = 0; i <= 32; ++i) {
      const double t = i / 32.0;
      worst = std::max(worst, std::abs(evaluate(h, t) - oracle::h_theta_direct(m, theta, t)));
    }
  }
  o.require(worst <= 1e-10, "max error " + fmt(worst));
  if (o.pass) o.detail = "max error " + fmt(worst);
  return o;
}

Outcome c9_sampler() {
  Outcome o;
  const std::vector<ReferenceModel> models{AsymmetricLogistic{0.5, 0.1, 0.5}, SymmetricMixed{0.9},
                                           PolynomialModel{PickandsPoly::from_bernstein(a_from_h(BernsteinPoly(kPolfullH)))}};
  std::string summary;
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t seed = 9000;
  for (const auto& model : models) {
    const SampleSet s = sample_copula(model, 100000, ++seed);
    const GenericPickands a = model_pickands(model);
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
      for (int j = 1; j <= 9; ++j) {
        worst = std::max(worst, std::abs(oracle::empirical_copula(s.pairs(), i / 10.0, j / 10.0) -
                                         copula_cdf(a, i / 10.0, j / 10.0)));
      }
    }
    o.require(worst <= 0.01, model_name(model) + " sup deviation " + fmt(worst));
    summary += model_name(model) + " " + fmt(worst) + "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 30.0, "runtime " + fmt(secs) + " s");
  if (o.pass) o.detail = summary + fmt(secs) + " s";
  return o;
}

StudyConfig desk_study() {
  StudyConfig c;
  c.model = SymmetricMixed{0.9};
  c.n = 100;
  c.replicates = 200;
  c.m = 5;
  c.estimators = {"full", "sub", "cfg"};
  c.seed = 2024;
  return c;
}

Outcome c10_desk_study(StudyReport& report) {
  Outcome o;
  StudyConfig c = desk_study();
  c.threads = 1;
  report = run_study(c);
  std::string summary;
  for (const auto& e : report.estimators) {
    o.require(e.failures.empty() && e.invalid == 0,
              e.estimator + ": " + std::to_string(e.failures.size()) + " failures, " + std::to_string(e.invalid) + " invalid");
    o.require(e.grid_mean_mse() <= 5e-3, e.estimator + " grid-mean MSE " + fmt(e.grid_mean_mse()));
    summary += e.estimator + " " + fmt(e.grid_mean_mse()) + "; ";
  }
  o.require(report.summary("sub").grid_mean_mse() <= report.summary("cfg").grid_mean_mse(), "submodel MSE above CFG");
  o.require(report.runtime_seconds < 600.0, "runtime " + fmt(report.runtime_seconds) + " s");
  if (o.pass) o.detail = "grid-mean MSE " + summary + fmt(report.runtime_seconds) + " s";
  return o;
}

Outcome c11_determinism(const StudyReport& first) {
  Outcome o;
  StudyConfig c = desk_study();
  c.threads = 2;
  const StudyReport second = run_study(c);
  o.require(to_json(first).dump() == to_json(second).dump(), "reports differ between 1 and 2 threads");
  for (std::size_t e = 0; e < std::min(first.estimators.size(), second.estimators.size()); ++e) {
    o.require(first.estimators[e].mse == second.estimators[e].mse, "mse differs for " + first.estimators[e].estimator);
  }
  if (o.pass) o.detail = "1 thread vs 2 threads bit-identical";
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  };

  report(1, "characterization round trip", c1_round_trip);
  report(2, "counterexample detection", c2_counterexample);
  report(3, "gap exhibits", c3_gap_exhibits);
  report(4, "Lorentz closed form", c4_lorentz_closed_form);
  report(5, "dependence-measure range", c5_tau_range);
  report(6, "approximation bounds", c6_approx_bounds);
  report(7, "full-model soundness", c7_full_model_soundness);
  report(8, "coefficient-formula equivalence", c8_appendix_formulas);
  report(9, "sampler validity", c9_sampler);
  StudyReport desk;
  bool have_desk = false;
  report(10, "desk-scale study", [&] {
    Outcome o = c10_desk_study(desk);
    have_desk = true;
    return o;
  });
  report(11, "determinism", [&] {
    if (!have_desk) return Outcome{false, "criterion 10 did not produce a report"};
    return c11_determinism(desk);
  });
  std::printf("%d of 11 criteria passed\n", 11 - failed);
  return failed == 0 ? 0 : 1;
}
