#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace quenchbat::quadrature {

// Batch integrand: fill out[i] = f(x[i]) for i in [0, count).
using BatchFn = std::function<void(const double* x, std::size_t count, double* out)>;

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::size_t max_intervals = 2000;
  // Interior abscissae where the integrand is non-smooth (band touchings,
  // occupation steps). Each becomes an initial panel boundary.
  std::vector<double> breakpoints;
  std::size_t initial_panels = 8;
};

struct QuadratureResult {
  double value;
  double error_estimate;
  std::size_t evaluations;
  std::size_t intervals;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b]. Bisects the interval with the
// largest error estimate until the global estimate meets the tolerance;
// throws QuadratureError when max_intervals is exhausted first. The final
// value sums leaf contributions in left-endpoint order with compensation,
// so results are independent of the refinement schedule's tie-breaking.
QuadratureResult integrate_adaptive(const BatchFn& f, double a, double b,
                                    const QuadratureOptions& options = {});

}  // namespace quenchbat::quadrature
