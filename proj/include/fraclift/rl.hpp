#pragma once

#include <vector>

#include "fraclift/series.hpp"

namespace fraclift {

// b (x-a)^alpha is annihilated by the order-k Riemann-Liouville operator:
// alpha + 1 - k is a nonpositive integer while alpha + 1 is not.
bool rl_kernel_predicate(double alpha, double k);

// Power rule: Gamma(alpha+1)/Gamma(alpha+1-k) * b (x-a)^(alpha-k).
// Returns the empty series when the term is annihilated. Negative-integer
// alpha with integer k uses the limiting Gamma ratio (classical derivative of
// x^-m). Throws PoleError when alpha is a negative integer and the ratio has
// no finite value (e.g. non-integer k).
GenSeries rl_term(double b, double alpha, double k, double basepoint);

// Termwise application; truncation order drops by k.
GenSeries rl_series(const GenSeries& f, double k);

// Per-term record of rl_series, for reporting which terms were annihilated.
struct RlStep {
  Term input;
  Term output;       // coef 0 when annihilated
  bool annihilated;  // kernel predicate fired
};
std::vector<RlStep> rl_trace(const GenSeries& f, double k);

} // namespace fraclift
