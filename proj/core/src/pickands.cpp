#include "pickpoly/pickands.hpp"

#include <algorithm>
#include <memory>
#include <queue>
#include <sstream>

namespace pickpoly {

namespace {

double min_coeff(const BernsteinPoly& p) {
  return *std::min_element(p.coeffs().begin(), p.coeffs().end());
}

double max_abs_coeff(const BernsteinPoly& p) {
  double s = 0.0;
  for (double c : p.coeffs()) s = std::max(s, std::abs(c));
  return s;
}

// Restriction of p to [lo, hi], reparameterized onto [0,1].
BernsteinPoly restrict_to(const BernsteinPoly& p, double lo, double hi) {
  BernsteinPoly q = p;
  if (lo > 0.0) q = subdivide(q, lo).second;
  if (hi < 1.0) {
    const double rel = (hi - lo) / (1.0 - lo);
    q = subdivide(q, std::clamp(rel, 0.0, 1.0)).first;
  }
  return q;
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

NonnegativityResult certify_nonnegative(const BernsteinPoly& p, double tolerance,
                                        int max_depth) {
  NonnegativityResult result;
  if (min_coeff(p) >= -tolerance) {
    result.status = Certificate::nonnegative;
    return result;
  }

  struct Node {
    BernsteinPoly poly;
    double lo, hi;
    int depth;
  };
  std::vector<Node> stack;
  stack.push_back({p, 0.0, 1.0, 0});
  bool negative = false;
  bool inconclusive = false;

  while (!stack.empty() && !negative) {
    Node node = std::move(stack.back());
    stack.pop_back();
    const auto c = node.poly.coeffs();
    if (*std::min_element(c.begin(), c.end()) >= -tolerance) continue;
    // Endpoint coefficients are exact values of p.
    if (c.front() < -tolerance || c.back() < -tolerance ||
        evaluate(node.poly, 0.5) < -tolerance) {
      negative = true;
      break;
    }
    if (node.depth >= max_depth) {
      inconclusive = true;
      continue;
    }
    auto [left, right] = subdivide(node.poly, 0.5);
    ++result.subdivisions;
    const double mid = 0.5 * (node.lo + node.hi);
    stack.push_back({std::move(right), mid, node.hi, node.depth + 1});
    stack.push_back({std::move(left), node.lo, mid, node.depth + 1});
  }

  if (negative) {
    const PolyMinimum mn = minimize(p);
    result.status = Certificate::negative;
    result.witness = mn.argmin;
    result.witness_value = mn.value;
  } else if (inconclusive) {
    result.status = Certificate::inconclusive;
  } else {
    result.status = Certificate::nonnegative;
  }
  return result;
}

PolyMinimum minimize(const BernsteinPoly& p, double lo, double hi) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) throw DomainError("minimize: bad interval");
  const BernsteinPoly root = restrict_to(p, lo, hi);
  const double width = hi - lo;
  const double eps = 1e-15 * std::max(1.0, max_abs_coeff(root));

  PolyMinimum best;
  best.argmin = lo;
  best.value = root[0];
  if (root[root.degree()] < best.value) {
    best.value = root[root.degree()];
    best.argmin = hi;
  }

  struct Node {
    BernsteinPoly poly;
    double a, b;  // in the local [0,1] parameter
    double bound;
  };
  auto cmp = [](const Node& x, const Node& y) { return x.bound > y.bound; };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp)> queue(cmp);
  queue.push({root, 0.0, 1.0, min_coeff(root)});

  double lower = queue.top().bound;
  for (int iter = 0; iter < 100000 && !queue.empty(); ++iter) {
    Node node = queue.top();
    queue.pop();
    lower = node.bound;
    if (node.bound >= best.value - eps) break;
    const double mid_val = evaluate(node.poly, 0.5);
    const double mid = 0.5 * (node.a + node.b);
    if (mid_val < best.value) {
      best.value = mid_val;
      best.argmin = lo + width * mid;
    }
    if (node.b - node.a < 1e-13) continue;
    auto [l, r] = subdivide(node.poly, 0.5);
    const double lb = min_coeff(l), rb = min_coeff(r);
    queue.push({std::move(l), node.a, mid, lb});
    queue.push({std::move(r), mid, node.b, rb});
  }
  if (!queue.empty()) lower = std::min(lower, queue.top().bound);
  best.lower_bound = std::min(lower, best.value);

  // Newton polish on p' for an interior minimum.
  if (best.argmin > lo && best.argmin < hi && p.degree() >= 2) {
    double t = best.argmin;
    for (int i = 0; i < 8; ++i) {
      const Jet j = evaluate_jet(p, t);
      if (!(j.second > 0.0)) break;
      const double next = t - j.first / j.second;
      if (!(next > lo && next < hi)) break;
      if (next == t) break;
      t = next;
    }
    const double v = evaluate(p, t);
    if (v <= best.value) {
      best.value = v;
      best.argmin = t;
    }
  }
  return best;
}

ValidationReport validate_pickands(const BernsteinPoly& a) {
  ValidationReport report;
  auto fail = [&report](std::string rule, double witness, std::string detail) {
    report.valid = false;
    report.violations.push_back({std::move(rule), witness, std::move(detail)});
  };

  const int deg = a.degree();
  if (deg < 2) {
    for (int k = 0; k <= deg; ++k) {
      if (std::abs(a[k] - 1.0) > kEndpointTolerance) {
        fail("degree", k, "polynomials of degree below 2 must be identically 1");
        break;
      }
    }
    return report;
  }

  if (std::abs(a[0] - 1.0) > kEndpointTolerance) {
    fail("endpoint_value", 0, "c(0) = " + format_double(a[0]) + " != 1");
  }
  if (std::abs(a[deg] - 1.0) > kEndpointTolerance) {
    fail("endpoint_value", deg, "c(M) = " + format_double(a[deg]) + " != 1");
  }
  const double floor = static_cast<double>(deg - 1) / deg - kCoefficientTolerance;
  if (a[1] < floor) {
    fail("endpoint_derivative", 1,
         "c(1) = " + format_double(a[1]) + " < (M-1)/M, so A'(0) < -1");
  }
  if (a[deg - 1] < floor) {
    fail("endpoint_derivative", deg - 1,
         "c(M-1) = " + format_double(a[deg - 1]) + " < (M-1)/M, so A'(1) > 1");
  }

  const NonnegativityResult cert = certify_nonnegative(second_derivative_coeffs(a));
  if (cert.status == Certificate::negative) {
    fail("convexity", *cert.witness,
         "A''(" + format_double(*cert.witness) + ") = " + format_double(cert.witness_value));
  } else if (cert.status == Certificate::inconclusive) {
    fail("convexity_inconclusive", 0.5, "nonnegativity of A'' could not be certified");
  }
  return report;
}

PickandsPoly PickandsPoly::from_bernstein(const BernsteinPoly& a) {
  BernsteinPoly poly = a;
  if (poly.degree() < 2) {
    const ValidationReport r = validate_pickands(poly);
    if (!r.valid) throw ConstraintError("not a Pickands function: " + r.violations[0].detail);
    poly = BernsteinPoly::constant(1.0, 2);
  }
  const ValidationReport report = validate_pickands(poly);
  if (!report.valid) {
    std::string msg = "not a Pickands function:";
    for (const auto& v : report.violations) msg += " [" + v.rule + "] " + v.detail + ";";
    throw ConstraintError(msg);
  }
  std::vector<double> c(poly.coeffs().begin(), poly.coeffs().end());
  c.front() = 1.0;
  c.back() = 1.0;
  BernsteinPoly snapped(std::move(c));
  BernsteinPoly h = second_derivative_coeffs(snapped);
  return PickandsPoly(std::move(snapped), std::move(h));
}

PickandsPoly PickandsPoly::independence() {
  return from_bernstein(BernsteinPoly::constant(1.0, 2));
}

GenericPickands::GenericPickands(Fn a, Fn d1, Fn d2, std::string tag)
    : a_(std::move(a)), d1_(std::move(d1)), d2_(std::move(d2)), tag_(std::move(tag)) {
  constexpr double tol = 1e-12;
  if (std::abs(a_(0.0) - 1.0) > tol || std::abs(a_(1.0) - 1.0) > tol) {
    throw ConstraintError("GenericPickands '" + tag_ + "': A(0) and A(1) must equal 1");
  }
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    const double v = a_(t);
    if (!(v >= std::max(t, 1.0 - t) - tol && v <= 1.0 + tol)) {
      throw ConstraintError("GenericPickands '" + tag_ + "': V <= A <= 1 fails at t = " +
                            format_double(t));
    }
  }
}

GenericPickands GenericPickands::comonotone() {
  return GenericPickands([](double t) { return std::max(t, 1.0 - t); },
                         [](double t) { return t < 0.5 ? -1.0 : (t > 0.5 ? 1.0 : 0.0); },
                         [](double) { return 0.0; }, kComonotoneTag);
}

GenericPickands GenericPickands::independence() {
  return GenericPickands([](double) { return 1.0; }, [](double) { return 0.0; },
                         [](double) { return 0.0; }, "independence");
}

GenericPickands GenericPickands::from_poly(const PickandsPoly& a) {
  auto shared = std::make_shared<const PickandsPoly>(a);
  return GenericPickands([shared](double t) { return shared->value(t); },
                         [shared](double t) { return shared->jet(t).first; },
                         [shared](double t) { return shared->jet(t).second; },
                         "polynomial");
}

EndpointFunctionals endpoint_functionals(const BernsteinPoly& h) {
  const int m = h.degree();
  EndpointFunctionals f;
  for (int j = 0; j <= m; ++j) {
    const double w = static_cast<double>(j + 1) / (m + 2);
    f.left += (1.0 - w) * h[j];
    f.right += w * h[j];
  }
  f.left /= (m + 1);
  f.right /= (m + 1);
  return f;
}

BernsteinPoly a_from_h(const BernsteinPoly& h) {
  const int m = h.degree();
  const int deg = m + 2;
  std::vector<double> c(static_cast<std::size_t>(deg) + 1);
  for (int k = 0; k <= deg; ++k) {
    const double x = static_cast<double>(k) / deg;
    double acc = 0.0;
    for (int j = 0; j <= m; ++j) {
      const double w = static_cast<double>(j + 1) / deg;
      acc += std::min((1.0 - x) * w, x * (1.0 - w)) * h[j];
    }
    c[k] = 1.0 - acc / (m + 1);
  }
  c.front() = 1.0;
  c.back() = 1.0;
  return BernsteinPoly(std::move(c));
}

BernsteinPoly h_from_a(const BernsteinPoly& a) {
  if (a.degree() < 2) throw DomainError("h_from_a: degree must be at least 2");
  return second_derivative_coeffs(a);
}

SpectralDensity spectral_measure(const BernsteinPoly& h) {
  const NonnegativityResult cert = certify_nonnegative(h);
  if (cert.status == Certificate::negative) {
    throw NotSpectralDensityError(
        "not a spectral density: h(" + format_double(*cert.witness) + ") < 0",
        cert.witness_value);
  }
  if (cert.status == Certificate::inconclusive) {
    throw NotSpectralDensityError("not a spectral density: nonnegativity inconclusive", 0.0);
  }
  const EndpointFunctionals f = endpoint_functionals(h);
  if (f.left > 1.0 + kCoefficientTolerance) {
    throw NotSpectralDensityError(
        "not a spectral density: -A'(0) = " + format_double(f.left) + " exceeds 1", f.left);
  }
  if (f.right > 1.0 + kCoefficientTolerance) {
    throw NotSpectralDensityError(
        "not a spectral density: A'(1) = " + format_double(f.right) + " exceeds 1", f.right);
  }
  return SpectralDensity{h, f.left, f.right, std::clamp(1.0 - f.left, 0.0, 1.0),
                         std::clamp(1.0 - f.right, 0.0, 1.0)};
}

}  // namespace pickpoly
