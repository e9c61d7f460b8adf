#pragma once

#include <optional>

#include "pickpoly/pickands.hpp"

namespace pickpoly {

/// tau1 = 2{1 - A(1/2)}, tau2 = 4{1 - int A}; 0 <= tau1 <= tau2 <= 1.
struct DependenceReport {
  double tau1 = 0.0;
  double tau2 = 0.0;
};

/// For polynomials, int A is the exact coefficient mean.
DependenceReport tau_measures(const PickandsPoly& a);
/// Quadrature at 1e-10 for the integral.
DependenceReport tau_measures(const GenericPickands& a);

/// Upper endpoint of tau_i over the submodel of degree m, attained at B_m(V,.).
/// which = 1: 1 - P_{1/2}(S_{m-1} = floor(m/2)); which = 2: floor(m/2)/(floor(m/2)+1/2).
double submodel_tau_range(int m, int which);

struct ApproxErrorReport {
  double error = 0.0;  ///< B_m(A,t) - A(t)
  double bound = 0.0;  ///< 2t(1-t) P_t(S_{m-1} = floor(mt))
  /// {1 - V(t)} P_t(S_{m-1} = floor(m/2)); only reported when A is V.
  std::optional<double> v_bound;
};

ApproxErrorReport approx_error_bound(const GenericPickands& a, int m, double t);

}  // namespace pickpoly
