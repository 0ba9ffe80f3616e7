#include "fraclift/rl.hpp"

#include <cmath>
#include <string>

#include "fraclift/errors.hpp"
#include "fraclift/gamma.hpp"

namespace fraclift {

namespace {

double power_rule_coef(double b, double alpha, double k) {
  if (k == 0.0) return b;
  try {
    return b * gamma_ratio(alpha + 1.0, alpha + 1.0 - k);
  } catch (const PoleError&) {
    throw PoleError("order-" + std::to_string(k) + " power rule undefined for exponent " +
                    std::to_string(alpha) + ": Gamma(alpha+1) is a pole");
  }
}

} // namespace

bool rl_kernel_predicate(double alpha, double k) {
  return is_gamma_pole(alpha + 1.0 - k) && !is_gamma_pole(alpha + 1.0);
}

GenSeries rl_term(double b, double alpha, double k, double basepoint) {
  if (!std::isfinite(k)) throw DomainError("differintegral order must be finite");
  if (rl_kernel_predicate(alpha, k)) return GenSeries(basepoint);
  return GenSeries(basepoint, {{alpha - k, power_rule_coef(b, alpha, k)}});
}

GenSeries rl_series(const GenSeries& f, double k) {
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& step : rl_trace(f, k))
    if (!step.annihilated) out.push_back(step.output);
  return GenSeries(f.basepoint(), std::move(out), f.truncation_order() - k);
}

std::vector<RlStep> rl_trace(const GenSeries& f, double k) {
  if (!std::isfinite(k)) throw DomainError("differintegral order must be finite");
  std::vector<RlStep> steps;
  steps.reserve(f.size());
  for (const auto& term : f.terms()) {
    const Term out_term{term.exponent - k, 0.0};
    if (rl_kernel_predicate(term.exponent, k)) {
      steps.push_back({term, out_term, true});
      continue;
    }
    steps.push_back({term, {out_term.exponent, power_rule_coef(term.coef, term.exponent, k)},
                     false});
  }
  return steps;
}

} // namespace fraclift
