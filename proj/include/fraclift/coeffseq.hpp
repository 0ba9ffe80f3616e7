#pragma once

#include <map>

#include "fraclift/series.hpp"

namespace fraclift {

// Integer-indexed derivative-value sequence sigma with finite support.
// sigma(i) for i >= 0 holds f^(i)(a); negative indices are allowed and are
// exactly the entries the projection cannot see.
//
// truncation() is the largest index whose value is represented; entries
// above it are an unrepresented remainder. +inf means exact.
class CoeffSeq {
public:
  explicit CoeffSeq(double basepoint = 0.0, std::map<long, double> entries = {},
                    double truncation = GenSeries::kExact);

  double basepoint() const noexcept { return basepoint_; }
  const std::map<long, double>& entries() const noexcept { return entries_; }
  double truncation() const noexcept { return truncation_; }
  bool is_zero() const noexcept { return entries_.empty(); }

  // sigma(i); zero outside the support.
  double operator()(long i) const noexcept;

  friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;

private:
  double basepoint_;
  std::map<long, double> entries_;
  double truncation_;
};

CoeffSeq seq_add(const CoeffSeq& lhs, const CoeffSeq& rhs);
CoeffSeq seq_scale(double c, const CoeffSeq& s);

// (D^k sigma)(i) = sigma(i + k) for integer k.
CoeffSeq shift(const CoeffSeq& s, long k);

// R: sigma -> sum_i sigma(i) / Gamma(i + 1) (x - a)^i over all integers i.
// Negative indices meet a pole of Gamma and vanish, so the kernel is the set
// of sequences supported on i < 0.
GenSeries project(const CoeffSeq& s);

// R^-1 on an analytic jet: sigma(i) = i! * coef_i for i >= 0, zero for i < 0.
// Throws DomainError when an exponent is negative or non-integer.
CoeffSeq lift_jet(const GenSeries& f);

} // namespace fraclift
