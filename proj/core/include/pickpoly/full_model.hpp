#pragma once

#include <span>
#include <vector>

#include "pickpoly/bernstein.hpp"
#include "pickpoly/pickands.hpp"

namespace pickpoly {

/// theta in R^{m+1}: the Bernstein coefficients of P (degree floor(m/2))
/// followed by those of Q (degree floor((m-1)/2)). For m == 0 the single
/// entry is the constant value of h itself, restricted to [0, 2].
struct FullModelParam {
  int m = 0;
  std::vector<double> theta;

  FullModelParam() : theta(1, 0.0) {}
  FullModelParam(int degree, std::vector<double> values);

  static int p_size(int m) { return m / 2 + 1; }
  static int q_size(int m) { return m >= 1 ? (m - 1) / 2 + 1 : 0; }

  std::span<const double> p_block() const;
  std::span<const double> q_block() const;
};

/// Y ~ Hypergeo(n, M, N): n draws without replacement from N items, M marked.
struct HypergeoSpec {
  int n = 0;
  int M = 0;
  int N = 0;
};

/// P(Y = k); zero outside the support (n+M-N) v 0 ... n ^ M.
double hypergeo_pmf(const HypergeoSpec& spec, int k);

/// Each coefficient of h_theta is a quadratic form in theta. ThetaMap holds
/// the hypergeometric weights for one degree m so repeated evaluation (as in
/// the likelihood maximization) costs O(number of terms).
class ThetaMap {
 public:
  explicit ThetaMap(int m);

  int m() const noexcept { return m_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(m_) + 1; }

  BernsteinPoly h(std::span<const double> theta) const;
  /// Endpoint functionals of h_theta without materializing h.
  EndpointFunctionals functionals(std::span<const double> theta) const;

 private:
  struct Term {
    int k;  // coefficient of h
    int a;  // theta index
    int b;  // theta index
    double weight;
  };
  int m_;
  std::vector<Term> terms_;
};

/// h_theta = P^2 + t(1-t) Q^2 (m even) or t P^2 + (1-t) Q^2 (m odd), computed
/// coefficientwise from the hypergeometric expectations.
BernsteinPoly theta_to_h(const FullModelParam& param);

struct Feasibility {
  bool feasible = false;
  double q0 = 0.0;  ///< integral of (1-w) h_theta = -A'(0)
  double q1 = 0.0;  ///< integral of w h_theta = A'(1)
};

inline constexpr double kFeasibilityTolerance = 1e-12;

/// theta in Theta_m = E0 n E1 (for m = 0: 0 <= theta <= 2).
Feasibility feasibility(const FullModelParam& param);

/// a_from_h(theta_to_h(param)); throws ConstraintError carrying (q0, q1) when
/// theta is infeasible.
PickandsPoly theta_to_pickands(const FullModelParam& param);

/// Resolves the sign ambiguity of (P, Q): the first nonzero entry of each
/// block is made nonnegative. h_theta is unchanged.
FullModelParam canonicalize_signs(FullModelParam param);

}  // namespace pickpoly
