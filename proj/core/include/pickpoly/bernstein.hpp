#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "pickpoly/errors.hpp"

namespace pickpoly {

/// A polynomial on [0,1] stored by its Bernstein coefficients of degree m.
/// Entry k of `coeffs()` is the coefficient of b_{k,m}(x) = C(m,k) x^k (1-x)^(m-k).
/// Immutable once constructed; every coefficient is finite.
class BernsteinPoly {
 public:
  BernsteinPoly() : coeffs_{0.0} {}
  explicit BernsteinPoly(std::vector<double> coeffs);

  static BernsteinPoly zero(int degree);
  static BernsteinPoly constant(double value, int degree);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const& noexcept { return coeffs_; }
  std::vector<double> coeffs() && { return std::move(coeffs_); }
  double operator[](std::size_t k) const { return coeffs_[k]; }
  double operator()(double x) const;

  friend bool operator==(const BernsteinPoly&, const BernsteinPoly&) = default;

 private:
  std::vector<double> coeffs_;
};

/// A polynomial in the monomial basis; entry k multiplies t^k.
class PowerPoly {
 public:
  PowerPoly() : coeffs_{0.0} {}
  explicit PowerPoly(std::vector<double> coeffs);

  std::span<const double> coeffs() const& noexcept { return coeffs_; }
  std::vector<double> coeffs() && { return std::move(coeffs_); }
  /// Index of the highest exactly-nonzero coefficient (0 for the zero polynomial).
  int natural_degree() const noexcept;
  double operator()(double t) const;

 private:
  std::vector<double> coeffs_;
};

/// Value with first and second derivative at one abscissa.
struct Jet {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

double basis_eval(int k, int m, double x);

/// de Casteljau evaluation (repeated convex combinations of coefficients).
double evaluate(const BernsteinPoly& p, double x);

/// Value, P' and P'' from a single de Casteljau pass.
Jet evaluate_jet(const BernsteinPoly& p, double x);

/// P' as a degree m-1 polynomial; the zero polynomial of degree 0 when m == 0.
BernsteinPoly derivative_coeffs(const BernsteinPoly& p);

/// P'' as a degree m-2 polynomial; the zero polynomial of degree 0 when m < 2.
BernsteinPoly second_derivative_coeffs(const BernsteinPoly& p);

/// One step of degree elevation, m -> m+1.
BernsteinPoly elevate_once(const BernsteinPoly& p);

/// Representation of the same polynomial at degree `target` >= degree().
BernsteinPoly elevate_degree(const BernsteinPoly& p, int target);

/// Restriction of p to [0, at] and [at, 1], each reparameterized onto [0,1].
std::pair<BernsteinPoly, BernsteinPoly> subdivide(const BernsteinPoly& p,
                                                  double at);

/// Bernstein approximation B_m(f, .): coefficient k is f(k/m).
template <class F>
BernsteinPoly bernstein_approx(F&& f, int m) {
  if (m < 0) throw DomainError("bernstein_approx: negative degree");
  std::vector<double> c(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    const double x = m == 0 ? 0.0 : static_cast<double>(k) / m;
    c[k] = f(x);
    if (!std::isfinite(c[k])) {
      throw InputError("bernstein_approx: non-finite value at grid point " +
                       std::to_string(x));
    }
  }
  return BernsteinPoly(std::move(c));
}

/// Exact basis change; m must be at least the natural degree of p.
BernsteinPoly power_to_bernstein(const PowerPoly& p, int m);
PowerPoly bernstein_to_power(const BernsteinPoly& p);

}  // namespace pickpoly
