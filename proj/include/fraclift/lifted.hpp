#pragma once

#include <map>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "fraclift/coeffseq.hpp"
#include "fraclift/series.hpp"

namespace fraclift {

// Accumulated shift order. Every double is a dyadic rational, so the sum of
// any sequence of applied orders is held exactly and the order in which
// shifts were applied cannot be observed.
class Offset {
public:
  Offset() = default;
  explicit Offset(double k);
  static Offset integer(long n);

  // Nearest double to the exact value.
  double value() const;

  // The integer n with |value - n| <= integer_tolerance(), if any.
  std::optional<long> as_integer() const;

  Offset operator+(const Offset& rhs) const { return Offset(q_ + rhs.q_); }
  Offset operator-(const Offset& rhs) const { return Offset(q_ - rhs.q_); }
  Offset operator-() const { return Offset(-q_); }

  friend bool operator==(const Offset& l, const Offset& r) { return l.q_ == r.q_; }

private:
  using Rational = boost::multiprecision::cpp_rational;
  explicit Offset(Rational q) : q_(std::move(q)) {}
  Rational q_{0};
};

// Element rho of the lifted space: rho(j - offset) = values(j) on the lattice
// Z - offset and rho = 0 everywhere else. Shifting only moves the offset.
//
// truncation() is in index space, like CoeffSeq::truncation().
class LiftedSeq {
public:
  explicit LiftedSeq(double basepoint = 0.0, Offset offset = {},
                     std::map<long, double> values = {},
                     double truncation = GenSeries::kExact);

  double basepoint() const noexcept { return basepoint_; }
  const Offset& offset() const noexcept { return offset_; }
  const std::map<long, double>& values() const noexcept { return values_; }
  double truncation() const noexcept { return truncation_; }
  bool is_zero() const noexcept { return values_.empty(); }

  // rho(z).
  double operator()(double z) const;

  // Structural identity: same offset (exactly) and bit-identical values.
  friend bool operator==(const LiftedSeq&, const LiftedSeq&) = default;

private:
  double basepoint_;
  Offset offset_;
  std::map<long, double> values_;
  double truncation_;
};

// Sum of two lifted sequences whose offsets differ by an integer; the result
// uses the left operand's offset. Throws LatticeError otherwise.
LiftedSeq lifted_add(const LiftedSeq& lhs, const LiftedSeq& rhs);
LiftedSeq lifted_scale(double c, const LiftedSeq& s);

// True when both represent the same function rho (offsets may differ by an
// integer with values re-indexed accordingly).
bool same_function(const LiftedSeq& a, const LiftedSeq& b);

// The embedding iota: offset 0, values = sigma. Off the integer lattice the
// embedded function is zero.
LiftedSeq embed(const CoeffSeq& s);

// D^k: offset + k, values untouched. Any real k.
LiftedSeq shift(const LiftedSeq& s, double k);

// rho restricted to the integers. Zero unless the offset is an integer.
CoeffSeq restrict_to_integers(const LiftedSeq& s);

// Extended R: each value v(j) becomes v(j) / Gamma(t + 1) (x - a)^t with
// t = j - offset; lattice points with t + 1 in Z<=0 are annihilated.
GenSeries project(const LiftedSeq& s);

// Preimage of project for a generalized series: offset chosen so the series'
// lattice lands on the integers, v(j) = coef * Gamma(t + 1).
// Throws DomainError for a negative-integer exponent (no preimage).
LiftedSeq lift_series(const GenSeries& f);

} // namespace fraclift
