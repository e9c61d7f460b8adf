#pragma once

#include <cstdint>
#include <functional>

namespace pickpoly {

/// log of the binomial coefficient C(n, k) via log-gamma.
double log_binomial(int n, int k);

/// P(S_n = k) for S_n ~ Binomial(n, p). Exact at p in {0, 1}; zero outside
/// the support.
double binomial_pmf(int n, int k, double p);

/// Adaptive Gauss-Kronrod (15-point) quadrature of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-11);

/// Counter-based seed derivation: a deterministic 64-bit stream key for
/// (master, index). Streams never depend on execution order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace pickpoly
