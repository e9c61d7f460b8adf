#include "pickpoly/numeric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

namespace pickpoly {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial_pmf(int n, int k, double p) {
  if (k < 0 || k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  if (n == 0) return 1.0;
  const double log_pmf =
      log_binomial(n, k) + k * std::log(p) + (n - k) * std::log1p(-p);
  return std::exp(log_pmf);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (a == b) return 0.0;
  // The library tolerance is relative; scale by a first coarse estimate so
  // the absolute target holds.
  using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  double error = 0.0;
  const double coarse = Quad::integrate(f, a, b, 0, 0.0, &error);
  const double scale = std::max(std::abs(coarse), 1e-300);
  const double rel_tol =
      std::max(abs_tol / scale, 4 * std::numeric_limits<double>::epsilon());
  return Quad::integrate(f, a, b, 30, rel_tol, &error);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer applied to a (master, index) counter.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(master) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

}  // namespace pickpoly
