#include "pickpoly/bernstein.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "pickpoly/numeric.hpp"

namespace pickpoly {

namespace {

void check_finite(std::span<const double> coeffs, const char* what) {
  if (coeffs.empty()) throw InputError(std::string(what) + ": empty coefficient vector");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw InputError(std::string(what) + ": non-finite coefficient");
  }
}

void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(what) + ": abscissa outside [0,1]: " + std::to_string(x));
  }
}

// Small polynomials are evaluated on the stack; the likelihood loop calls
// this millions of times.
constexpr std::size_t kStackDegree = 64;

template <class Fn>
auto with_scratch(std::span<const double> c, Fn&& fn) {
  if (c.size() <= kStackDegree) {
    std::array<double, kStackDegree> buf;
    std::copy(c.begin(), c.end(), buf.begin());
    return fn(std::span<double>(buf.data(), c.size()));
  }
  std::vector<double> buf(c.begin(), c.end());
  return fn(std::span<double>(buf));
}

// Runs de Casteljau on b until `keep` points remain.
void casteljau_reduce(std::span<double> b, double x, std::size_t keep) {
  const double s = 1.0 - x;
  for (std::size_t len = b.size(); len > keep; --len) {
    for (std::size_t i = 0; i + 1 < len; ++i) b[i] = s * b[i] + x * b[i + 1];
  }
}

}  // namespace

BernsteinPoly::BernsteinPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  check_finite(coeffs_, "BernsteinPoly");
}

BernsteinPoly BernsteinPoly::zero(int degree) { return constant(0.0, degree); }

BernsteinPoly BernsteinPoly::constant(double value, int degree) {
  if (degree < 0) throw DomainError("BernsteinPoly: negative degree");
  return BernsteinPoly(std::vector<double>(static_cast<std::size_t>(degree) + 1, value));
}

double BernsteinPoly::operator()(double x) const { return evaluate(*this, x); }

PowerPoly::PowerPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  check_finite(coeffs_, "PowerPoly");
}

int PowerPoly::natural_degree() const noexcept {
  for (int k = static_cast<int>(coeffs_.size()) - 1; k > 0; --k) {
    if (coeffs_[k] != 0.0) return k;
  }
  return 0;
}

double PowerPoly::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double basis_eval(int k, int m, double x) {
  if (m < 0 || k < 0 || k > m) {
    throw DomainError("basis_eval: index " + std::to_string(k) +
                      " out of range for degree " + std::to_string(m));
  }
  check_unit_interval(x, "basis_eval");
  return binomial_pmf(m, k, x);
}

double evaluate(const BernsteinPoly& p, double x) {
  check_unit_interval(x, "evaluate");
  return with_scratch(p.coeffs(), [x](std::span<double> b) {
    casteljau_reduce(b, x, 1);
    return b[0];
  });
}

Jet evaluate_jet(const BernsteinPoly& p, double x) {
  check_unit_interval(x, "evaluate_jet");
  const int m = p.degree();
  if (m == 0) return {p[0], 0.0, 0.0};
  if (m == 1) return {(1.0 - x) * p[0] + x * p[1], p[1] - p[0], 0.0};
  return with_scratch(p.coeffs(), [x, m](std::span<double> b) {
    casteljau_reduce(b, x, 3);
    const double s = 1.0 - x;
    const double d0 = b[1] - b[0];
    const double d1 = b[2] - b[1];
    Jet j;
    j.value = s * (s * b[0] + x * b[1]) + x * (s * b[1] + x * b[2]);
    j.first = m * (s * d0 + x * d1);
    j.second = static_cast<double>(m) * (m - 1) * (d1 - d0);
    return j;
  });
}

BernsteinPoly derivative_coeffs(const BernsteinPoly& p) {
  const int m = p.degree();
  if (m == 0) return BernsteinPoly::zero(0);
  std::vector<double> d(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) d[k] = m * (p[k + 1] - p[k]);
  return BernsteinPoly(std::move(d));
}

BernsteinPoly second_derivative_coeffs(const BernsteinPoly& p) {
  const int m = p.degree();
  if (m < 2) return BernsteinPoly::zero(0);
  const double scale = static_cast<double>(m) * (m - 1);
  std::vector<double> d(static_cast<std::size_t>(m) - 1);
  for (int k = 0; k + 2 <= m; ++k) d[k] = scale * (p[k + 2] - 2.0 * p[k + 1] + p[k]);
  return BernsteinPoly(std::move(d));
}

BernsteinPoly elevate_once(const BernsteinPoly& p) {
  const int m = p.degree();
  std::vector<double> e(static_cast<std::size_t>(m) + 2);
  e[0] = p[0];
  e[m + 1] = p[m];
  for (int j = 1; j <= m; ++j) {
    const double w = static_cast<double>(j) / (m + 1);
    e[j] = w * p[j - 1] + (1.0 - w) * p[j];
  }
  return BernsteinPoly(std::move(e));
}

BernsteinPoly elevate_degree(const BernsteinPoly& p, int target) {
  if (target < p.degree()) {
    throw DomainError("elevate_degree: target " + std::to_string(target) +
                      " below degree " + std::to_string(p.degree()));
  }
  BernsteinPoly out = p;
  while (out.degree() < target) out = elevate_once(out);
  return out;
}

std::pair<BernsteinPoly, BernsteinPoly> subdivide(const BernsteinPoly& p, double at) {
  check_unit_interval(at, "subdivide");
  const int m = p.degree();
  std::vector<double> work(p.coeffs().begin(), p.coeffs().end());
  std::vector<double> left(static_cast<std::size_t>(m) + 1);
  std::vector<double> right(static_cast<std::size_t>(m) + 1);
  const double s = 1.0 - at;
  for (int r = 0; r <= m; ++r) {
    left[r] = work[0];
    right[m - r] = work[m - r];
    for (int i = 0; i < m - r; ++i) work[i] = s * work[i] + at * work[i + 1];
  }
  return {BernsteinPoly(std::move(left)), BernsteinPoly(std::move(right))};
}

BernsteinPoly power_to_bernstein(const PowerPoly& p, int m) {
  const int n = p.natural_degree();
  if (m < n) {
    throw DomainError("power_to_bernstein: degree " + std::to_string(m) +
                      " below natural degree " + std::to_string(n));
  }
  // c_k = sum_{i<=k} C(k,i)/C(m,i) a_i, with the ratio built incrementally.
  const auto a = p.coeffs();
  std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
  for (int k = 0; k <= m; ++k) {
    double ratio = 1.0;  // C(k,i)/C(m,i) at i = 0
    double acc = 0.0;
    for (int i = 0; i <= std::min(k, n); ++i) {
      if (i > 0) ratio *= static_cast<double>(k - i + 1) / (m - i + 1);
      acc += ratio * a[i];
    }
    c[k] = acc;
  }
  return BernsteinPoly(std::move(c));
}

PowerPoly bernstein_to_power(const BernsteinPoly& p) {
  // a_i = C(m,i) * Delta^i c_0: forward-difference table.
  const int m = p.degree();
  std::vector<double> diff(p.coeffs().begin(), p.coeffs().end());
  std::vector<double> a(static_cast<std::size_t>(m) + 1);
  double binom = 1.0;
  for (int i = 0; i <= m; ++i) {
    a[i] = binom * diff[0];
    for (int k = 0; k + i < m; ++k) diff[k] = diff[k + 1] - diff[k];
    binom = binom * (m - i) / (i + 1);
  }
  return PowerPoly(std::move(a));
}

}  // namespace pickpoly
