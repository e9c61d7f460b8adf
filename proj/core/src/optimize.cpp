#include "pickpoly/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pickpoly/errors.hpp"

namespace pickpoly {

LocalMinimum nelder_mead(const Objective& f, std::vector<double> x0,
                         const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw DomainError("nelder_mead: empty starting point");

  // Adaptive coefficients (Gao & Han 2012) behave better than the classic
  // ones beyond a handful of dimensions.
  const double dim = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dim;
  const double contract = 0.75 - 1.0 / (2.0 * dim);
  const double shrink = n > 1 ? 1.0 - 1.0 / dim : 0.5;

  LocalMinimum out;
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double step = i < options.initial_step.size() ? options.initial_step[i] : 0.1;
    simplex[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);

  auto point_along = [&](double coef, const std::vector<double>& worst, std::vector<double>& dst) {
    for (std::size_t j = 0; j < n; ++j) dst[j] = centroid[j] + coef * (centroid[j] - worst[j]);
  };

  while (evals < options.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        diameter = std::max(diameter, std::abs(simplex[i][j] - simplex[best][j]));
      }
    }
    const double spread = values[worst] - values[best];
    if (std::isfinite(spread) &&
        spread <= options.ftol * (1.0 + std::abs(values[best])) && diameter <= options.xtol) {
      out.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (double& c : centroid) c /= dim;

    point_along(reflect, simplex[worst], trial);
    const double fr = eval(trial);
    if (fr < values[best]) {
      point_along(expand, simplex[worst], trial2);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = fr;
      continue;
    }
    // Contraction: outside if the reflected point improved on the worst.
    const bool outside = fr < values[worst];
    point_along(outside ? contract : -contract, simplex[worst], trial2);
    const double fc = eval(trial2);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) {
        simplex[i][j] = simplex[best][j] + shrink * (simplex[i][j] - simplex[best][j]);
      }
      values[i] = eval(simplex[i]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  out.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
  out.value = *best_it;
  out.evaluations = evals;
  return out;
}

}  // namespace pickpoly
