#include "pickpoly/full_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pickpoly/numeric.hpp"

namespace pickpoly {

FullModelParam::FullModelParam(int degree, std::vector<double> values)
    : m(degree), theta(std::move(values)) {
  if (m < 0) throw DomainError("FullModelParam: negative degree");
  if (theta.size() != static_cast<std::size_t>(m) + 1) {
    throw InputError("FullModelParam: theta must have length m+1 = " + std::to_string(m + 1));
  }
  for (double x : theta) {
    if (!std::isfinite(x)) throw InputError("FullModelParam: non-finite entry");
  }
}

std::span<const double> FullModelParam::p_block() const {
  return std::span<const double>(theta).first(static_cast<std::size_t>(p_size(m)));
}

std::span<const double> FullModelParam::q_block() const {
  return std::span<const double>(theta).subspan(static_cast<std::size_t>(p_size(m)));
}

double hypergeo_pmf(const HypergeoSpec& spec, int k) {
  const auto [n, M, N] = spec;
  if (n < 0 || M < 0 || N < 0 || n > N || M > N) {
    throw DomainError("hypergeo_pmf: need 0 <= n, M <= N");
  }
  const int lo = std::max(0, n + M - N);
  const int hi = std::min(n, M);
  if (k < lo || k > hi) return 0.0;
  return std::exp(log_binomial(M, k) + log_binomial(N - M, n - k) - log_binomial(N, n));
}

namespace {

// Expectation over the support of `spec` of weight * x[a(y)] * x[b(y)], with
// out-of-range basis indices contributing zero.
template <class Emit, class IndexA, class IndexB>
void expectation_terms(const HypergeoSpec& spec, int block_degree, IndexA index_a,
                       IndexB index_b, double scale, Emit&& emit) {
  const int lo = std::max(0, spec.n + spec.M - spec.N);
  const int hi = std::min(spec.n, spec.M);
  for (int y = lo; y <= hi; ++y) {
    const int i = index_a(y);
    const int j = index_b(y);
    if (i < 0 || i > block_degree || j < 0 || j > block_degree) continue;
    const double w = scale * hypergeo_pmf(spec, y);
    if (w != 0.0) emit(i, j, w);
  }
}

}  // namespace

ThetaMap::ThetaMap(int m) : m_(m) {
  if (m < 0) throw DomainError("ThetaMap: negative degree");
  if (m == 0) return;  // h = theta_0, handled directly
  const int p_off = 0;
  const int q_off = FullModelParam::p_size(m);

  if (m % 2 == 0) {
    const int half = m / 2;
    for (int k = 0; k <= m; ++k) {
      expectation_terms(
          {k, half, m}, half, [](int y) { return y; }, [k](int y) { return k - y; }, 1.0,
          [&](int i, int j, double w) { terms_.push_back({k, p_off + i, p_off + j, w}); });
    }
    const int qdeg = (m - 2) / 2;
    for (int k = 1; k <= m - 1; ++k) {
      const double factor = static_cast<double>(k) * (m - k) / (static_cast<double>(m) * (m - 1));
      expectation_terms(
          {k - 1, qdeg, m - 2}, qdeg, [](int y) { return y; },
          [k](int y) { return k - y - 1; }, factor,
          [&](int i, int j, double w) { terms_.push_back({k, q_off + i, q_off + j, w}); });
    }
  } else {
    const int half = (m - 1) / 2;
    for (int k = 1; k <= m; ++k) {
      expectation_terms(
          {k - 1, half, m - 1}, half, [](int y) { return y; },
          [k](int y) { return k - y - 1; }, static_cast<double>(k) / m,
          [&](int i, int j, double w) { terms_.push_back({k, p_off + i, p_off + j, w}); });
    }
    for (int k = 0; k <= m - 1; ++k) {
      expectation_terms(
          {k, half, m - 1}, half, [](int y) { return y; }, [k](int y) { return k - y; },
          static_cast<double>(m - k) / m,
          [&](int i, int j, double w) { terms_.push_back({k, q_off + i, q_off + j, w}); });
    }
  }
}

BernsteinPoly ThetaMap::h(std::span<const double> theta) const {
  if (theta.size() != dimension()) throw InputError("ThetaMap: theta has wrong length");
  if (m_ == 0) return BernsteinPoly(std::vector<double>{theta[0]});
  std::vector<double> c(static_cast<std::size_t>(m_) + 1, 0.0);
  for (const Term& t : terms_) c[t.k] += t.weight * theta[t.a] * theta[t.b];
  return BernsteinPoly(std::move(c));
}

EndpointFunctionals ThetaMap::functionals(std::span<const double> theta) const {
  return endpoint_functionals(h(theta));
}

BernsteinPoly theta_to_h(const FullModelParam& param) {
  return ThetaMap(param.m).h(param.theta);
}

Feasibility feasibility(const FullModelParam& param) {
  const EndpointFunctionals f = endpoint_functionals(theta_to_h(param));
  Feasibility out;
  out.q0 = f.left;
  out.q1 = f.right;
  out.feasible = f.left <= 1.0 + kFeasibilityTolerance && f.right <= 1.0 + kFeasibilityTolerance;
  if (param.m == 0 && param.theta[0] < 0.0) out.feasible = false;
  return out;
}

PickandsPoly theta_to_pickands(const FullModelParam& param) {
  const Feasibility f = feasibility(param);
  if (!f.feasible) {
    throw ConstraintError("theta outside Theta_m: q0 = " + std::to_string(f.q0) +
                          ", q1 = " + std::to_string(f.q1));
  }
  return PickandsPoly::from_bernstein(a_from_h(theta_to_h(param)));
}

FullModelParam canonicalize_signs(FullModelParam param) {
  if (param.m == 0) return param;
  auto flip_block = [&param](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (param.theta[i] == 0.0) continue;
      if (param.theta[i] < 0.0) {
        for (std::size_t j = begin; j < end; ++j) param.theta[j] = -param.theta[j];
      }
      return;
    }
  };
  const auto p = static_cast<std::size_t>(FullModelParam::p_size(param.m));
  flip_block(0, p);
  flip_block(p, param.theta.size());
  return param;
}

}  // namespace pickpoly
