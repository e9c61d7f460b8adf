#include "pickpoly/submodel.hpp"

#include <algorithm>
#include <cmath>

namespace pickpoly {

namespace {

double max_abs(std::span<const double> c) {
  double s = 0.0;
  for (double x : c) s = std::max(s, std::abs(x));
  return s;
}

// h = t * R  (requires c_0 == 0)
BernsteinPoly divide_by_t(const BernsteinPoly& h) {
  const int m = h.degree();
  std::vector<double> r(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) r[k] = h[k + 1] * m / (k + 1.0);
  return BernsteinPoly(std::move(r));
}

// h = (1 - t) * R  (requires c_m == 0)
BernsteinPoly divide_by_one_minus_t(const BernsteinPoly& h) {
  const int m = h.degree();
  std::vector<double> r(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) r[k] = h[k] * m / static_cast<double>(m - k);
  return BernsteinPoly(std::move(r));
}

bool all_nonnegative(const BernsteinPoly& p) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(),
                     [](double c) { return c >= -kCoefficientTolerance; });
}

}  // namespace

SubmodelParam::SubmodelParam(std::vector<double> coeffs) : c(std::move(coeffs)) {
  if (c.empty()) throw InputError("SubmodelParam: empty coefficient vector");
  for (double x : c) {
    if (!std::isfinite(x)) throw InputError("SubmodelParam: non-finite coefficient");
  }
  m = static_cast<int>(c.size()) - 1;
}

MembershipReport in_submodel_h(std::span<const double> c) {
  if (c.empty()) throw InputError("in_submodel_h: empty coefficient vector");
  MembershipReport report;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] < -kCoefficientTolerance) {
      report.member = false;
      report.violations.push_back(
          {"positivity", static_cast<double>(k), "c(" + std::to_string(k) + ") < 0"});
    }
  }
  const EndpointFunctionals f =
      endpoint_functionals(BernsteinPoly(std::vector<double>(c.begin(), c.end())));
  if (f.left > 1.0 + kCoefficientTolerance) {
    report.member = false;
    report.violations.push_back({"boundary", 0.0, "-A'(0) = " + std::to_string(f.left) + " > 1"});
  }
  if (f.right > 1.0 + kCoefficientTolerance) {
    report.member = false;
    report.violations.push_back({"boundary", 1.0, "A'(1) = " + std::to_string(f.right) + " > 1"});
  }
  return report;
}

PiecewiseLinearPickands::PiecewiseLinearPickands(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < 2) throw InputError("PiecewiseLinearPickands: need at least two knots");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("PiecewiseLinearPickands: non-finite value");
  }
}

PiecewiseLinearPickands PiecewiseLinearPickands::from_coeffs(const BernsteinPoly& a) {
  if (a.degree() < 1) throw DomainError("PiecewiseLinearPickands: degree must be at least 1");
  return PiecewiseLinearPickands(std::vector<double>(a.coeffs().begin(), a.coeffs().end()));
}

double PiecewiseLinearPickands::value(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("PiecewiseLinearPickands: t outside [0,1]");
  const int n = segments();
  const double x = t * n;
  const int k = std::min(static_cast<int>(std::floor(x)), n - 1);
  const double frac = x - k;
  return (1.0 - frac) * values_[k] + frac * values_[k + 1];
}

Jet PiecewiseLinearPickands::jet(double t) const {
  const int n = segments();
  const double x = t * n;
  const int k = std::min(static_cast<int>(std::floor(x)), n - 1);
  double slope = n * (values_[k + 1] - values_[k]);
  if (x == k && k > 0) slope = 0.5 * (slope + n * (values_[k] - values_[k - 1]));
  return {value(t), slope, 0.0};
}

std::vector<double> PiecewiseLinearPickands::slopes() const {
  const int n = segments();
  std::vector<double> s(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) s[k] = n * (values_[k + 1] - values_[k]);
  return s;
}

ValidationReport PiecewiseLinearPickands::validate(double tolerance) const {
  ValidationReport report;
  auto fail = [&report](std::string rule, double witness, std::string detail) {
    report.valid = false;
    report.violations.push_back({std::move(rule), witness, std::move(detail)});
  };
  if (std::abs(values_.front() - 1.0) > kEndpointTolerance) fail("endpoint_value", 0, "A*(0) != 1");
  if (std::abs(values_.back() - 1.0) > kEndpointTolerance) fail("endpoint_value", 1, "A*(1) != 1");
  const std::vector<double> s = slopes();
  if (s.front() < -1.0 - tolerance) fail("endpoint_derivative", 0, "first slope below -1");
  if (s.back() > 1.0 + tolerance) fail("endpoint_derivative", 1, "last slope above 1");
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (s[k] < s[k - 1] - tolerance) {
      fail("slopes", knot(static_cast<int>(k)), "slopes decrease at knot " + std::to_string(k));
      break;
    }
  }
  return report;
}

bool in_submodel_a(const BernsteinPoly& a) {
  return PiecewiseLinearPickands::from_coeffs(a).validate().valid;
}

std::string LorentzResult::to_string() const {
  switch (kind) {
    case Kind::finite:
      return std::to_string(degree);
    case Kind::exceeds_cap:
      return "exceeds cap";
    case Kind::infinite:
      return "infinite";
  }
  return "";
}

LorentzResult lorentz_degree(const BernsteinPoly& h, int cap) {
  if (cap < h.degree()) throw DomainError("lorentz_degree: cap below the degree of h");
  const NonnegativityResult cert = certify_nonnegative(h);
  if (cert.status == Certificate::negative) {
    throw DomainError("lorentz_degree: h is negative at t = " + std::to_string(*cert.witness));
  }
  if (all_nonnegative(h)) return {LorentzResult::Kind::finite, h.degree()};

  // A negative coefficient implies deg(h) > 0. Strip exact endpoint zeros,
  // then look for an interior zero of the remaining factor.
  const double zero_tol = 1e-15 * std::max(1.0, max_abs(h.coeffs()));
  BernsteinPoly g = h;
  while (g.degree() > 0 && std::abs(g[0]) <= zero_tol) g = divide_by_t(g);
  while (g.degree() > 0 && std::abs(g[g.degree()]) <= zero_tol) g = divide_by_one_minus_t(g);
  if (g.degree() > 0 && minimize(g).value <= zero_tol) {
    return {LorentzResult::Kind::infinite, 0};
  }

  BernsteinPoly e = h;
  while (e.degree() < cap) {
    e = elevate_once(e);
    if (all_nonnegative(e)) return {LorentzResult::Kind::finite, e.degree()};
  }
  return {LorentzResult::Kind::exceeds_cap, cap};
}

SubmodelParam submodel_nesting_check(const SubmodelParam& param) {
  const MembershipReport r = in_submodel_h(param.c);
  if (!r.member) throw ConstraintError("submodel_nesting_check: input is not in C_m^+");
  const BernsteinPoly e = elevate_once(BernsteinPoly(param.c));
  return SubmodelParam(std::vector<double>(e.coeffs().begin(), e.coeffs().end()));
}

}  // namespace pickpoly
