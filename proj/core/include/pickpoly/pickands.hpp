#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pickpoly/bernstein.hpp"

namespace pickpoly {

// ---------------------------------------------------------------------------
// Nonnegativity on [0,1]

enum class Certificate { nonnegative, negative, inconclusive };

struct NonnegativityResult {
  Certificate status = Certificate::inconclusive;
  /// For `negative`: abscissa of the located minimum, where P < -tolerance.
  std::optional<double> witness;
  double witness_value = 0.0;
  /// Number of de Casteljau bisections performed.
  int subdivisions = 0;

  bool nonneg() const noexcept { return status == Certificate::nonnegative; }
};

/// Certified decision of P >= 0 on [0,1] by Bernstein subdivision: nonnegative
/// only when every leaf interval has all coefficients >= -tolerance.
NonnegativityResult certify_nonnegative(const BernsteinPoly& p,
                                        double tolerance = 1e-12,
                                        int max_depth = 60);

struct PolyMinimum {
  double argmin = 0.0;
  double value = 0.0;
  /// Certified lower bound on the minimum over the searched interval.
  double lower_bound = 0.0;
};

/// Global minimum of p over [lo, hi] by branch and bound on Bernstein
/// coefficient bounds, polished with Newton steps on p'.
PolyMinimum minimize(const BernsteinPoly& p, double lo = 0.0, double hi = 1.0);

// ---------------------------------------------------------------------------
// Validation of polynomial Pickands functions

struct Violation {
  /// One of: degree, endpoint_value, endpoint_derivative, convexity,
  /// convexity_inconclusive, boundary, positivity, slopes.
  std::string rule;
  /// Coefficient index or abscissa, depending on the rule.
  double witness = 0.0;
  std::string detail;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

inline constexpr double kEndpointTolerance = 1e-9;
inline constexpr double kCoefficientTolerance = 1e-12;

/// Endpoint conditions c(0)=c(M)=1, c(1) and c(M-1) >= (M-1)/M, and A'' >= 0.
ValidationReport validate_pickands(const BernsteinPoly& a);

/// A polynomial Pickands function of degree m+2 (m >= 0). Construction
/// snaps c(0), c(m+2) to exactly 1 and rejects anything invalid.
class PickandsPoly {
 public:
  /// Throws ConstraintError carrying the violated rules.
  static PickandsPoly from_bernstein(const BernsteinPoly& a);
  /// A == 1, stored at degree 2.
  static PickandsPoly independence();

  const BernsteinPoly& poly() const noexcept { return poly_; }
  /// A'' in Bernstein form (degree m).
  const BernsteinPoly& second_derivative() const noexcept { return h_; }
  int m() const noexcept { return poly_.degree() - 2; }

  double value(double t) const { return evaluate(poly_, t); }
  Jet jet(double t) const { return evaluate_jet(poly_, t); }

 private:
  PickandsPoly(BernsteinPoly a, BernsteinPoly h) : poly_(std::move(a)), h_(std::move(h)) {}
  BernsteinPoly poly_;
  BernsteinPoly h_;
};

/// A Pickands function given by callables (A, A', A''), e.g. for models that
/// are not polynomial.
class GenericPickands {
 public:
  using Fn = std::function<double(double)>;

  /// Checks A(0)=A(1)=1 and V <= A <= 1 on a 1001-point grid (within 1e-12);
  /// throws ConstraintError otherwise.
  GenericPickands(Fn a, Fn d1, Fn d2, std::string tag);

  static GenericPickands comonotone();
  static GenericPickands independence();
  static GenericPickands from_poly(const PickandsPoly& a);

  double value(double t) const { return a_(t); }
  Jet jet(double t) const { return {a_(t), d1_(t), d2_(t)}; }
  const std::string& tag() const noexcept { return tag_; }

 private:
  Fn a_, d1_, d2_;
  std::string tag_;
};

inline constexpr const char* kComonotoneTag = "comonotone";

template <class F>
concept PickandsFunction = requires(const F& f, double t) {
  { f.value(t) } -> std::convertible_to<double>;
  { f.jet(t) } -> std::same_as<Jet>;
};

// ---------------------------------------------------------------------------
// h <-> A and the spectral measure

struct EndpointFunctionals {
  double left = 0.0;   ///< integral of (1-w) h(w) = -A'(0)
  double right = 0.0;  ///< integral of w h(w) = A'(1)
};

/// Closed-form coefficient sums for the two endpoint-derivative functionals.
EndpointFunctionals endpoint_functionals(const BernsteinPoly& h);

/// Coefficients of A(t) = 1 - int min{(1-t)w, t(1-w)} h(w) dw (degree m+2).
BernsteinPoly a_from_h(const BernsteinPoly& h);

/// h = A'' via second differences (degree m from degree m+2).
BernsteinPoly h_from_a(const BernsteinPoly& a);

struct SpectralDensity {
  BernsteinPoly h;
  double left_deriv = 0.0;   ///< -A'(0)
  double right_deriv = 0.0;  ///< A'(1)
  double mass0 = 0.0;        ///< atom at 0
  double mass1 = 0.0;        ///< atom at 1
};

/// Builds the spectral measure h0*delta_0 + h dw + h1*delta_1. Throws
/// NotSpectralDensityError if h is not certified nonnegative or an endpoint
/// functional exceeds 1 + 1e-12.
SpectralDensity spectral_measure(const BernsteinPoly& h);

// ---------------------------------------------------------------------------
// Copula

namespace detail {

inline void check_copula_args(double u, double v, const char* what) {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
    throw DomainError(std::string(what) + ": argument outside [0,1]");
  }
}

/// Argument t = log v / log(uv); 1/2 at the removable singularity u=v=1.
inline double pickands_argument(double log_u, double log_v) {
  const double s = log_u + log_v;
  if (s == 0.0) return 0.5;
  return std::clamp(log_v / s, 0.0, 1.0);
}

}  // namespace detail

/// C_A(u,v) = exp{log(uv) A(log v / log uv)}; 0 when u or v is 0.
template <PickandsFunction F>
double copula_cdf(const F& a, double u, double v) {
  detail::check_copula_args(u, v, "copula_cdf");
  if (u == 0.0 || v == 0.0) return 0.0;
  const double lu = std::log(u), lv = std::log(v);
  const double s = lu + lv;
  if (s == 0.0) return 1.0;
  return std::exp(s * a.value(detail::pickands_argument(lu, lv)));
}

/// dC/du = (C/u) [A(t) - t A'(t)], the conditional distribution of V given U=u.
template <PickandsFunction F>
double copula_du(const F& a, double u, double v) {
  detail::check_copula_args(u, v, "copula_du");
  if (u == 0.0 || v == 0.0) return 0.0;
  const double lu = std::log(u), lv = std::log(v);
  const double s = lu + lv;
  if (s == 0.0) return 1.0;
  const double t = detail::pickands_argument(lu, lv);
  const Jet j = a.jet(t);
  return std::exp(s * j.value) / u * (j.value - t * j.first);
}

/// Log of the copula density at one point, from log u and log v (both < 0).
/// With s = log uv and t = log v / s:
///   c(u,v) = C/(uv) * [ (A - tA')(A + (1-t)A') - t(1-t) A'' / s ].
template <PickandsFunction F>
double log_copula_density_from_logs(const F& a, double log_u, double log_v) {
  const double s = log_u + log_v;
  const double t = log_v / s;
  const Jet j = a.jet(t);
  const double term = (j.value - t * j.first) * (j.value + (1.0 - t) * j.first) -
                      t * (1.0 - t) * j.second / s;
  if (!(term > 0.0)) return -std::numeric_limits<double>::infinity();
  return s * (j.value - 1.0) + std::log(term);
}

template <PickandsFunction F>
double copula_density(const F& a, double u, double v) {
  if (!(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0)) {
    throw DomainError("copula_density: (u,v) must lie in the open unit square");
  }
  const double lu = std::log(u), lv = std::log(v);
  const double s = lu + lv;
  const double t = lv / s;
  const Jet j = a.jet(t);
  const double term = (j.value - t * j.first) * (j.value + (1.0 - t) * j.first) -
                      t * (1.0 - t) * j.second / s;
  return std::exp(s * (j.value - 1.0)) * term;
}

}  // namespace pickpoly
