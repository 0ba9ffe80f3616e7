#pragma once

#include <functional>

namespace fraclift {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;    // estimated absolute error
  int subdivisions = 0;  // number of panels in the final partition
};

// Globally adaptive 21-point Gauss-Kronrod integration over [lo, hi]. The
// rule never samples the endpoints, so integrable endpoint singularities are
// allowed. Stops when the error estimate falls below
// max(abs_tol, rel_tol |value|, roundoff floor). Throws QuadratureError if
// max_subdivisions panels are not enough or the integrand is not finite.
QuadratureResult integrate_adaptive(const std::function<double(double)>& g, double lo,
                                    double hi, double abs_tol, double rel_tol,
                                    int max_subdivisions);

} // namespace fraclift
