#pragma once

// Numerical Riemann-Liouville differintegral straight from the integral
// definition. It shares nothing with the Gamma-ratio power rule beyond
// 1/Gamma(nu + 1), and exists to check that rule independently.

#include <functional>
#include <vector>

#include "fraclift/series.hpp"

namespace fraclift {

struct QuadratureConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  double fd_step = 1e-3;  // base step of the Richardson finite-difference ladder
  double max_order = 3.0; // orders k >= max_order are rejected

  void validate() const;  // DomainError on a bad configuration
};

struct OracleResult {
  double value = 0.0;
  double error = 0.0; // estimated absolute error
};

// (aD_x^k f)(x).
//  k < 0 : (1/Gamma(-k)) int_a^x f(t) (x-t)^(-k-1) dt. For -1 < k < 0 the
//          substitution u = (x-t)^(-k) removes the endpoint singularity.
//  k >= 0: n = ceil(k); the n-th central difference of the order-(n-k)
//          fractional integral, Richardson-extrapolated over three steps.
// Throws DomainError for x <= a or k >= max_order, QuadratureError when the
// integrals fail to converge.
OracleResult rl_oracle(const std::function<double(double)>& f, double a, double k,
                       double x, const QuadratureConfig& cfg = {});

struct EvalRow {
  double x;
  double termwise;
  double oracle;
  double abs_diff;
  double tail = 0.0; // |last represented term| of a truncated result at x
};
using EvalTable = std::vector<EvalRow>;

// Termwise value series_eval(rl_series(f, k), x) against rl_oracle applied to
// x -> series_eval(f, x), one row per x. Rows are evaluated concurrently.
// Both sides see the same truncated input, so a large `tail` does not affect
// their agreement, only how well the table describes the untruncated function.
// Throws DomainError when some x <= basepoint.
EvalTable compare(const GenSeries& f, double k, const std::vector<double>& xs,
                  const QuadratureConfig& cfg = {});

} // namespace fraclift
