#include "pickpoly/inference.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "pickpoly/errors.hpp"
#include "pickpoly/numeric.hpp"
#include "pickpoly/optimize.hpp"

namespace pickpoly {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& field, std::size_t line) {
  const std::string f = trim(field);
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(f, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (f.empty() || used != f.size()) {
    throw InputError("csv line " + std::to_string(line) + ": not a number: '" + f + "'");
  }
  return x;
}

std::vector<double> midranks(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = rank;
    i = j + 1;
  }
  return r;
}

// Per-pair quantities that do not depend on A: s = log u + log v, t = log v / s.
struct Prepared {
  std::vector<double> s;
  std::vector<double> t;
  double sum_s = 0.0;
};

Prepared prepare(const SampleSet& data) {
  Prepared p;
  p.s.reserve(data.size());
  p.t.reserve(data.size());
  for (const UV& uv : data.pairs()) {
    const double lu = std::log(uv.u), lv = std::log(uv.v);
    const double s = lu + lv;
    p.s.push_back(s);
    p.t.push_back(std::clamp(lv / s, 0.0, 1.0));
    p.sum_s += s;
  }
  return p;
}

// log c = s(A(t) - 1) + log term; returns -inf when the term is not positive.
double loglik_prepared(const BernsteinPoly& a, const Prepared& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.s.size(); ++i) {
    const double t = p.t[i], s = p.s[i];
    const Jet j = evaluate_jet(a, t);
    const double term =
        (j.value - t * j.first) * (j.value + (1.0 - t) * j.first) - t * (1.0 - t) * j.second / s;
    if (!(term > 0.0)) return -kInf;
    total += s * j.value + std::log(term);
  }
  return total - p.sum_s;
}

struct Candidate {
  std::vector<double> x;
  double loglik = -kInf;
  bool converged = false;
};

// Best by loglik; the earlier index wins ties.
std::size_t pick_best(const std::vector<Candidate>& cands) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    if (cands[i].loglik > cands[best].loglik) best = i;
  }
  return best;
}

NelderMeadOptions nm_options(const OptimConfig& config, std::vector<double> step) {
  NelderMeadOptions o;
  o.max_evals = config.max_evals;
  o.ftol = config.ftol;
  o.xtol = 1e-7;
  o.initial_step = std::move(step);
  return o;
}

void check_fit_args(const SampleSet& data, int m, const OptimConfig& config, const char* who) {
  if (m < 0) throw DomainError(std::string(who) + ": m must be nonnegative");
  if (config.starts < 1) throw DomainError(std::string(who) + ": starts must be at least 1");
  if (data.size() == 0) throw InputError(std::string(who) + ": empty sample");
}

FitResult fit_full_degree0(const SampleSet& data, const Prepared& prep) {
  // Theta_0 = [0, 2]: h is the constant theta.
  auto a_of = [](double theta) {
    return a_from_h(BernsteinPoly(std::vector<double>{theta}));
  };
  auto objective = [&](double theta) {
    const double ll = loglik_prepared(a_of(theta), prep);
    return std::isfinite(ll) ? -ll : std::numeric_limits<double>::max();
  };
  const auto [arg, val] = boost::math::tools::brent_find_minima(objective, 0.0, 2.0, 40);
  (void)val;
  double theta = arg;
  double ll = loglik_prepared(a_of(theta), prep);
  for (double edge : {0.0, 2.0}) {
    const double le = loglik_prepared(a_of(edge), prep);
    if (le > ll) {
      ll = le;
      theta = edge;
    }
  }
  (void)data;
  FitResult r{"full", PickandsPoly::from_bernstein(a_of(theta)), ll,
              FullModelParam(0, {theta}), 1, true};
  return r;
}

}  // namespace

SampleSet::SampleSet(std::vector<UV> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw InputError("sample must contain at least one pair");
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const UV& p = pairs_[i];
    if (!(p.u > 0.0 && p.u < 1.0 && p.v > 0.0 && p.v < 1.0)) {
      throw InputError("pair " + std::to_string(i) + " not strictly inside (0,1)^2");
    }
  }
}

SampleSet SampleSet::from_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<UV> pairs;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = trim(line);
    if (row.empty()) continue;
    if (!header) {
      std::string compact;
      for (char c : row) {
        if (c != ' ' && c != '\t') compact.push_back(c);
      }
      if (compact != "u,v") throw InputError("csv: expected header 'u,v'");
      header = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos) {
      throw InputError("csv line " + std::to_string(lineno) + ": expected two fields");
    }
    pairs.push_back({parse_real(row.substr(0, comma), lineno), parse_real(row.substr(comma + 1), lineno)});
  }
  if (!header) throw InputError("csv: missing header 'u,v'");
  return SampleSet(std::move(pairs));
}

void SampleSet::to_csv(std::ostream& out) const {
  std::ostringstream buf;
  buf.precision(17);
  buf << "u,v\n";
  for (const UV& p : pairs_) buf << p.u << ',' << p.v << '\n';
  out << buf.str();
}

SampleSet SampleSet::with_ranks() const {
  std::vector<double> u, v;
  u.reserve(size());
  v.reserve(size());
  for (const UV& p : pairs_) {
    u.push_back(p.u);
    v.push_back(p.v);
  }
  const auto ru = midranks(u), rv = midranks(v);
  const double denom = static_cast<double>(size()) + 1.0;
  std::vector<UV> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = {ru[i] / denom, rv[i] / denom};
  return SampleSet(std::move(out));
}

LogLikelihood log_likelihood(const PickandsPoly& a, const SampleSet& data) {
  const double ll = loglik_prepared(a.poly(), prepare(data));
  if (!std::isfinite(ll)) return {kLogLikSentinel, true};
  return {ll, false};
}

double FitResult::value(double t) const {
  return std::visit([t](const auto& e) { return e.value(t); }, estimate);
}

bool FitResult::is_valid() const {
  if (const auto* p = std::get_if<PickandsPoly>(&estimate)) return validate_pickands(p->poly()).valid;
  return std::get<PiecewiseLinearPickands>(estimate).validate(1e-10).valid;
}

FitResult fit_full(const SampleSet& data, int m, const OptimConfig& config) {
  check_fit_args(data, m, config, "fit_full");
  const Prepared prep = prepare(data);
  if (m == 0) return fit_full_degree0(data, prep);

  const ThetaMap map(m);
  const std::size_t dim = map.dimension();
  const double n = static_cast<double>(data.size());

  auto penalized = [&](std::span<const double> theta) {
    const BernsteinPoly h = map.h(theta);
    const EndpointFunctionals f = endpoint_functionals(h);
    if (!(f.left < 1.0 && f.right < 1.0)) return kInf;
    const double ll = loglik_prepared(a_from_h(h), prep);
    if (!std::isfinite(ll)) return kInf;
    return -ll / n - config.barrier * (std::log1p(-f.left) + std::log1p(-f.right));
  };
  auto loglik_of = [&](std::span<const double> theta) {
    return loglik_prepared(a_from_h(map.h(theta)), prep);
  };
  // Both functionals are quadratic forms in theta, so scaling a direction d
  // by 1/sqrt(max q(d)) lands on the boundary of Theta_m.
  auto radius = [&](std::span<const double> d) {
    const EndpointFunctionals f = map.functionals(d);
    const double q = std::max(f.left, f.right);
    return q > 0.0 ? 1.0 / std::sqrt(q) : kInf;
  };

  std::vector<double> step(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> e(dim, 0.0);
    e[i] = 1.0;
    step[i] = 0.1 * std::min(radius(e), 10.0);
  }
  const NelderMeadOptions opts = nm_options(config, step);

  std::vector<Candidate> cands;
  cands.push_back({std::vector<double>(dim, 0.0), 0.0, true});
  int used = 0;
  for (int k = 0; k < config.starts; ++k) {
    std::mt19937_64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(k)));
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif;
    std::vector<double> d(dim);
    for (double& x : d) x = gauss(rng);
    const double r = radius(d);
    if (!std::isfinite(r)) continue;
    const double scale = 0.999 * r * std::pow(unif(rng), 1.0 / static_cast<double>(dim));
    for (double& x : d) x *= scale;
    if (!std::isfinite(penalized(d))) continue;
    ++used;
    LocalMinimum lm = nelder_mead(penalized, d, opts);
    if (!std::isfinite(lm.value)) continue;
    cands.push_back({lm.x, loglik_of(lm.x), lm.converged});
  }
  if (used == 0) throw OptimizationError("fit_full: no feasible start found");

  std::size_t best = pick_best(cands);
  if (best != 0) {
    LocalMinimum lm = nelder_mead(penalized, cands[best].x, opts);
    if (std::isfinite(lm.value)) {
      const double ll = loglik_of(lm.x);
      if (ll >= cands[best].loglik) cands[best] = {lm.x, ll, lm.converged};
    }
  }

  const FullModelParam param = canonicalize_signs(FullModelParam(m, cands[best].x));
  PickandsPoly a = theta_to_pickands(param);
  return FitResult{"full", std::move(a), cands[best].loglik, param, used, cands[best].converged};
}

FitResult fit_sub(const SampleSet& data, int m, const OptimConfig& config) {
  check_fit_args(data, m, config, "fit_sub");
  const Prepared prep = prepare(data);
  const std::size_t dim = static_cast<std::size_t>(m) + 1;
  const double n = static_cast<double>(data.size());

  // c = x^2 keeps every coefficient nonnegative; the two linear caps carry a
  // log-barrier.
  auto coeffs_of = [dim](std::span<const double> x) {
    std::vector<double> c(dim);
    for (std::size_t j = 0; j < dim; ++j) c[j] = x[j] * x[j];
    return c;
  };
  auto penalized = [&](std::span<const double> x) {
    const BernsteinPoly h(coeffs_of(x));
    const EndpointFunctionals f = endpoint_functionals(h);
    if (!(f.left < 1.0 && f.right < 1.0)) return kInf;
    const double ll = loglik_prepared(a_from_h(h), prep);
    if (!std::isfinite(ll)) return kInf;
    return -ll / n - config.barrier * (std::log1p(-f.left) + std::log1p(-f.right));
  };
  auto loglik_of = [&](std::span<const double> x) {
    return loglik_prepared(a_from_h(BernsteinPoly(coeffs_of(x))), prep);
  };

  // For h == 1 both functionals equal 1/2; a scale near sqrt(2) per
  // coordinate spans the polytope.
  const NelderMeadOptions opts = nm_options(config, std::vector<double>(dim, 0.3));

  std::vector<Candidate> cands;
  cands.push_back({std::vector<double>(dim, 0.0), 0.0, true});
  for (int k = 0; k < config.starts; ++k) {
    std::mt19937_64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(k)));
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unif;
    std::vector<double> c(dim);
    for (double& x : c) x = expo(rng);
    const EndpointFunctionals f = endpoint_functionals(BernsteinPoly(c));
    const double cap = std::max(f.left, f.right);
    const double scale = 0.999 * std::pow(unif(rng), 1.0 / static_cast<double>(dim)) / cap;
    std::vector<double> x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = std::sqrt(c[j] * scale);
    LocalMinimum lm = nelder_mead(penalized, x, opts);
    if (!std::isfinite(lm.value)) continue;
    cands.push_back({lm.x, loglik_of(lm.x), lm.converged});
  }

  std::size_t best = pick_best(cands);
  if (best != 0) {
    LocalMinimum lm = nelder_mead(penalized, cands[best].x, opts);
    if (std::isfinite(lm.value)) {
      const double ll = loglik_of(lm.x);
      if (ll >= cands[best].loglik) cands[best] = {lm.x, ll, lm.converged};
    }
  }

  SubmodelParam param(coeffs_of(cands[best].x));
  PickandsPoly a = PickandsPoly::from_bernstein(a_from_h(BernsteinPoly(param.c)));
  return FitResult{"sub", std::move(a), cands[best].loglik, param, config.starts,
                   cands[best].converged};
}

std::vector<double> greatest_convex_minorant(std::span<const double> values) {
  const std::size_t n = values.size();
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("greatest_convex_minorant: non-finite value");
  }
  if (n <= 2) return {values.begin(), values.end()};
  const double dx = 1.0 / static_cast<double>(n - 1);
  auto x = [dx](std::size_t k) { return static_cast<double>(k) * dx; };

  // Monotone chain, lower hull only.
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k < n; ++k) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull.back();
      const double cross = (x(b) - x(a)) * (values[k] - values[a]) -
                           (values[b] - values[a]) * (x(k) - x(a));
      if (cross <= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }

  std::vector<double> out(n);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const std::size_t a = hull[h], b = hull[h + 1];
    out[a] = values[a];
    for (std::size_t k = a + 1; k < b; ++k) {
      const double w = static_cast<double>(k - a) / static_cast<double>(b - a);
      out[k] = (1.0 - w) * values[a] + w * values[b];
    }
  }
  out[n - 1] = values[n - 1];
  return out;
}

FitResult fit_cfg(const SampleSet& data, int grid) {
  if (data.size() < 2) throw InputError("fit_cfg: need at least two pairs");
  if (grid < 2) throw DomainError("fit_cfg: grid must have at least two abscissae");
  const auto pairs = data.pairs();
  const bool all_u = std::all_of(pairs.begin(), pairs.end(), [&](const UV& p) { return p.u == pairs[0].u; });
  const bool all_v = std::all_of(pairs.begin(), pairs.end(), [&](const UV& p) { return p.v == pairs[0].v; });
  if (all_u || all_v) throw InputError("fit_cfg: degenerate sample (all values equal)");

  const SampleSet ranked = data.with_ranks();
  const std::size_t n = ranked.size();
  // log(-log u_i) and log(-log v_i).
  std::vector<double> lu(n), lv(n);
  for (std::size_t i = 0; i < n; ++i) {
    lu[i] = std::log(-std::log(ranked.pairs()[i].u));
    lv[i] = std::log(-std::log(ranked.pairs()[i].v));
  }
  auto log_cfg = [&](double t) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double lxi;
      if (t <= 0.0) {
        lxi = lu[i];
      } else if (t >= 1.0) {
        lxi = lv[i];
      } else {
        lxi = std::min(lu[i] - std::log1p(-t), lv[i] - std::log(t));
      }
      sum += lxi;
    }
    return -std::numbers::egamma - sum / static_cast<double>(n);
  };

  const double l0 = log_cfg(0.0), l1 = log_cfg(1.0);
  std::vector<double> values(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k) {
    const double t = static_cast<double>(k) / (grid - 1);
    double a = std::exp(log_cfg(t) - (1.0 - t) * l0 - t * l1);
    if (k == 0 || k == grid - 1) a = 1.0;
    values[static_cast<std::size_t>(k)] = std::min(1.0, std::max(a, std::max(t, 1.0 - t)));
  }
  PiecewiseLinearPickands est(greatest_convex_minorant(values));
  return FitResult{"cfg", std::move(est), std::numeric_limits<double>::quiet_NaN(),
                   std::monostate{}, 0, true};
}

}  // namespace pickpoly
