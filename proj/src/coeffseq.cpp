#include "fraclift/coeffseq.hpp"

#include <cmath>
#include <string>

#include "fraclift/errors.hpp"
#include "fraclift/gamma.hpp"

namespace fraclift {

CoeffSeq::CoeffSeq(double basepoint, std::map<long, double> entries, double truncation)
    : basepoint_(basepoint), truncation_(truncation) {
  if (!std::isfinite(basepoint)) throw DomainError("sequence basepoint must be finite");
  for (const auto& [i, v] : entries) {
    if (!std::isfinite(v)) throw DomainError("non-finite sequence entry at index " +
                                             std::to_string(i));
    if (std::abs(v) < kCoefFloor) continue;
    if (static_cast<double>(i) > truncation_) continue;
    entries_.emplace(i, v);
  }
}

double CoeffSeq::operator()(long i) const noexcept {
  const auto it = entries_.find(i);
  return it == entries_.end() ? 0.0 : it->second;
}

CoeffSeq seq_add(const CoeffSeq& lhs, const CoeffSeq& rhs) {
  if (lhs.basepoint() != rhs.basepoint())
    throw BasepointMismatch("sequence basepoints differ: " +
                            std::to_string(lhs.basepoint()) + " vs " +
                            std::to_string(rhs.basepoint()));
  auto sum = lhs.entries();
  for (const auto& [i, v] : rhs.entries()) sum[i] += v;
  return CoeffSeq(lhs.basepoint(), std::move(sum),
                  std::min(lhs.truncation(), rhs.truncation()));
}

CoeffSeq seq_scale(double c, const CoeffSeq& s) {
  auto scaled = s.entries();
  for (auto& [i, v] : scaled) v *= c;
  return CoeffSeq(s.basepoint(), std::move(scaled), s.truncation());
}

CoeffSeq shift(const CoeffSeq& s, long k) {
  std::map<long, double> moved;
  for (const auto& [i, v] : s.entries()) moved.emplace(i - k, v);
  return CoeffSeq(s.basepoint(), std::move(moved),
                  s.truncation() - static_cast<double>(k));
}

GenSeries project(const CoeffSeq& s) {
  std::vector<Term> terms;
  terms.reserve(s.entries().size());
  for (const auto& [i, v] : s.entries()) {
    const double t = static_cast<double>(i);
    terms.push_back({t, v * recip_gamma(t + 1.0)});
  }
  return GenSeries(s.basepoint(), std::move(terms), s.truncation());
}

CoeffSeq lift_jet(const GenSeries& f) {
  std::map<long, double> entries;
  for (const auto& term : f.terms()) {
    if (term.exponent < 0.0 || term.exponent != std::round(term.exponent))
      throw DomainError("lift_jet: exponent " + std::to_string(term.exponent) +
                        " is not a nonnegative integer");
    entries.emplace(std::lround(term.exponent), term.coef * gamma(term.exponent + 1.0));
  }
  return CoeffSeq(f.basepoint(), std::move(entries), f.truncation_order());
}

} // namespace fraclift
