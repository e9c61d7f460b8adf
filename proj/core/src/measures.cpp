#include "pickpoly/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pickpoly/numeric.hpp"

namespace pickpoly {

DependenceReport tau_measures(const PickandsPoly& a) {
  const auto c = a.poly().coeffs();
  const double mean = std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size());
  return {2.0 * (1.0 - a.value(0.5)), 4.0 * (1.0 - mean)};
}

DependenceReport tau_measures(const GenericPickands& a) {
  // Split at 1/2 so the kink of V-like functions sits on a panel boundary.
  auto f = [&a](double t) { return a.value(t); };
  const double integral = integrate(f, 0.0, 0.5, 1e-10) + integrate(f, 0.5, 1.0, 1e-10);
  return {2.0 * (1.0 - a.value(0.5)), 4.0 * (1.0 - integral)};
}

double submodel_tau_range(int m, int which) {
  if (m < 1) throw DomainError("submodel_tau_range: m must be at least 1");
  const int half = m / 2;
  switch (which) {
    case 1:
      return 1.0 - binomial_pmf(m - 1, half, 0.5);
    case 2:
      return half / (half + 0.5);
    default:
      throw DomainError("submodel_tau_range: which must be 1 or 2");
  }
}

ApproxErrorReport approx_error_bound(const GenericPickands& a, int m, double t) {
  if (m < 1) throw DomainError("approx_error_bound: m must be at least 1");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("approx_error_bound: t outside [0,1]");
  const BernsteinPoly approx = bernstein_approx([&a](double x) { return a.value(x); }, m);
  ApproxErrorReport r;
  r.error = evaluate(approx, t) - a.value(t);
  const int cell = std::min(static_cast<int>(std::floor(m * t)), m - 1);
  r.bound = 2.0 * t * (1.0 - t) * binomial_pmf(m - 1, cell, t);
  if (a.tag() == kComonotoneTag) {
    r.v_bound = (1.0 - std::max(t, 1.0 - t)) * binomial_pmf(m - 1, m / 2, t);
  }
  return r;
}

}  // namespace pickpoly
