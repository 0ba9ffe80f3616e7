#include "fraclift/lifted.hpp"

#include <cmath>
#include <string>

#include "fraclift/errors.hpp"
#include "fraclift/gamma.hpp"

namespace fraclift {

Offset::Offset(double k) : q_(k) {
  if (!std::isfinite(k)) throw DomainError("shift order must be finite");
}

Offset Offset::integer(long n) { return Offset(Rational(n)); }

double Offset::value() const { return q_.convert_to<double>(); }

std::optional<long> Offset::as_integer() const {
  if (denominator(q_) == 1) return numerator(q_).convert_to<long>();
  const double v = value();
  if (is_near_integer(v)) return std::lround(v);
  return std::nullopt;
}

LiftedSeq::LiftedSeq(double basepoint, Offset offset, std::map<long, double> values,
                     double truncation)
    : basepoint_(basepoint), offset_(std::move(offset)), truncation_(truncation) {
  if (!std::isfinite(basepoint)) throw DomainError("lifted basepoint must be finite");
  for (const auto& [j, v] : values) {
    if (!std::isfinite(v))
      throw DomainError("non-finite lifted value at index " + std::to_string(j));
    if (std::abs(v) < kCoefFloor || static_cast<double>(j) > truncation_) continue;
    values_.emplace(j, v);
  }
}

double LiftedSeq::operator()(double z) const {
  const double j = z + offset_.value();
  if (!is_near_integer(j)) return 0.0;
  const auto it = values_.find(std::lround(j));
  return it == values_.end() ? 0.0 : it->second;
}

LiftedSeq lifted_add(const LiftedSeq& lhs, const LiftedSeq& rhs) {
  if (lhs.basepoint() != rhs.basepoint())
    throw BasepointMismatch("lifted basepoints differ: " +
                            std::to_string(lhs.basepoint()) + " vs " +
                            std::to_string(rhs.basepoint()));
  const auto n = (rhs.offset() - lhs.offset()).as_integer();
  if (!n)
    throw LatticeError("lifted offsets " + std::to_string(lhs.offset().value()) +
                       " and " + std::to_string(rhs.offset().value()) +
                       " are not congruent modulo 1");
  // rho_r(j - o_r) = rho_r((j - n) - o_l)
  auto sum = lhs.values();
  for (const auto& [j, v] : rhs.values()) sum[j - *n] += v;
  return LiftedSeq(lhs.basepoint(), lhs.offset(), std::move(sum),
                   std::min(lhs.truncation(), rhs.truncation() - static_cast<double>(*n)));
}

LiftedSeq lifted_scale(double c, const LiftedSeq& s) {
  auto scaled = s.values();
  for (auto& [j, v] : scaled) v *= c;
  return LiftedSeq(s.basepoint(), s.offset(), std::move(scaled), s.truncation());
}

bool same_function(const LiftedSeq& a, const LiftedSeq& b) {
  if (a.basepoint() != b.basepoint()) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const auto n = (b.offset() - a.offset()).as_integer();
  if (!n || a.values().size() != b.values().size()) return false;
  for (const auto& [j, v] : b.values()) {
    const auto it = a.values().find(j - *n);
    if (it == a.values().end() || it->second != v) return false;
  }
  return true;
}

LiftedSeq embed(const CoeffSeq& s) {
  return LiftedSeq(s.basepoint(), Offset{}, s.entries(), s.truncation());
}

LiftedSeq shift(const LiftedSeq& s, double k) {
  return LiftedSeq(s.basepoint(), s.offset() + Offset(k), s.values(), s.truncation());
}

CoeffSeq restrict_to_integers(const LiftedSeq& s) {
  const auto n = s.offset().as_integer();
  if (!n) return CoeffSeq(s.basepoint());
  // rho(i) = v(i + n)
  std::map<long, double> entries;
  for (const auto& [j, v] : s.values()) entries.emplace(j - *n, v);
  return CoeffSeq(s.basepoint(), std::move(entries),
                  s.truncation() - static_cast<double>(*n));
}

GenSeries project(const LiftedSeq& s) {
  std::vector<Term> terms;
  terms.reserve(s.values().size());
  for (const auto& [j, v] : s.values()) {
    const double t = (Offset::integer(j) - s.offset()).value();
    terms.push_back({t, v * recip_gamma(t + 1.0)});
  }
  const double order = s.truncation() == GenSeries::kExact
                           ? GenSeries::kExact
                           : s.truncation() - s.offset().value();
  return GenSeries(s.basepoint(), std::move(terms), order);
}

LiftedSeq lift_series(const GenSeries& f) {
  if (f.empty()) return LiftedSeq(f.basepoint(), Offset{}, {}, f.truncation_order());
  // Place the lowest exponent t0 at index ceil(t0); the offset is then the
  // exact distance, so j - offset reproduces t0 without rounding.
  const double t0 = f.terms().front().exponent;
  const double j0 = std::ceil(t0);
  const Offset offset = Offset(j0) - Offset(t0);
  const double shift_to_index = offset.value();

  std::map<long, double> values;
  for (const auto& term : f.terms()) {
    const double t = term.exponent;
    if (t < 0.0 && t == std::round(t))
      throw DomainError("lift_series: exponent " + std::to_string(t) +
                        " is a negative integer and has no preimage under projection");
    const long j = std::lround(t + shift_to_index);
    values.emplace(j, term.coef * gamma(t + 1.0));
  }
  const double order = f.is_exact() ? GenSeries::kExact
                                    : f.truncation_order() + shift_to_index;
  return LiftedSeq(f.basepoint(), offset, std::move(values), order);
}

} // namespace fraclift
