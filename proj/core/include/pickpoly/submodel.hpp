#pragma once

#include <span>
#include <string>
#include <vector>

#include "pickpoly/bernstein.hpp"
#include "pickpoly/pickands.hpp"

namespace pickpoly {

/// Bernstein coefficients of h in the submodel polytope C_m^+.
struct SubmodelParam {
  int m = 0;
  std::vector<double> c;

  SubmodelParam() : c(1, 0.0) {}
  explicit SubmodelParam(std::vector<double> coeffs);
};

struct MembershipReport {
  bool member = true;
  std::vector<Violation> violations;
};

/// Polytope membership: every coefficient >= 0 and both endpoint sums <= 1
/// (tolerance 1e-12). Violations are `positivity` (witness: index) and
/// `boundary` (witness: 0 for the left sum, 1 for the right sum).
MembershipReport in_submodel_h(std::span<const double> c);

/// The piecewise-linear interpolant A* of the points (k/m, c_k).
class PiecewiseLinearPickands {
 public:
  explicit PiecewiseLinearPickands(std::vector<double> values);
  static PiecewiseLinearPickands from_coeffs(const BernsteinPoly& a);

  int segments() const noexcept { return static_cast<int>(values_.size()) - 1; }
  std::span<const double> values() const noexcept { return values_; }
  double knot(int k) const { return static_cast<double>(k) / segments(); }

  double value(double t) const;
  /// Left and right derivative are averaged at knots; A'' is zero a.e.
  Jet jet(double t) const;
  std::vector<double> slopes() const;

  /// Pickands conditions for a piecewise-linear function: unit endpoint
  /// values, nondecreasing slopes, first slope >= -1, last slope <= 1.
  ValidationReport validate(double tolerance = kCoefficientTolerance) const;

 private:
  std::vector<double> values_;
};

/// A is a Bernstein approximation of a Pickands function iff A* is one.
bool in_submodel_a(const BernsteinPoly& a);

struct LorentzResult {
  enum class Kind { finite, exceeds_cap, infinite };
  Kind kind = Kind::finite;
  int degree = 0;  ///< meaningful for `finite`; the cap for `exceeds_cap`

  std::string to_string() const;
};

inline constexpr int kDefaultLorentzCap = 512;

/// Smallest M >= deg(h) with all degree-M coefficients >= -1e-12, found by
/// single-step elevation. `infinite` when deg(h) > 0 and h has an interior
/// zero; throws DomainError if h is negative somewhere.
LorentzResult lorentz_degree(const BernsteinPoly& h, int cap = kDefaultLorentzCap);

/// One elevation step of a member of C_m^+; the result is a member of C_{m+1}^+.
SubmodelParam submodel_nesting_check(const SubmodelParam& param);

}  // namespace pickpoly
