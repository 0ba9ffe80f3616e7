#pragma once

#include <limits>
#include <vector>

namespace fraclift {

struct Term {
  double exponent = 0.0;
  double coef = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

// Coefficients below this magnitude are dropped on construction.
inline constexpr double kCoefFloor = 1e-300;

// Generalized power series sum_t coef_t (x - a)^t with finitely many terms
// whose exponents all lie on one lattice {phi + n : n in Z}, phi in [0, 1).
//
// Construction canonicalizes: terms are sorted by exponent, exponents within
// integer_tolerance() of an integer are snapped to it, exponents within the
// same tolerance of each other are merged, tiny coefficients are dropped and
// terms above the truncation order are discarded. A truncation order of
// +inf means the represented terms are the whole function.
class GenSeries {
public:
  static constexpr double kExact = std::numeric_limits<double>::infinity();

  explicit GenSeries(double basepoint = 0.0, double truncation_order = kExact);
  GenSeries(double basepoint, std::vector<Term> terms,
            double truncation_order = kExact);

  static GenSeries monomial(double basepoint, double exponent, double coef = 1.0);

  double basepoint() const noexcept { return basepoint_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  double truncation_order() const noexcept { return truncation_order_; }
  bool is_exact() const noexcept { return truncation_order_ == kExact; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  // Lattice phase in [0, 1); 0 for the empty series.
  double phase() const noexcept;

  // Every exponent is a nonnegative integer (a Taylor jet).
  bool is_analytic_jet() const noexcept;

  // Coefficient at the given exponent (tolerant match), 0 if absent.
  double coef_at(double exponent) const noexcept;

  GenSeries with_truncation(double order) const;

  friend bool operator==(const GenSeries&, const GenSeries&) = default;

private:
  double basepoint_;
  std::vector<Term> terms_;
  double truncation_order_;
};

// Both require equal basepoints (BasepointMismatch) and a common lattice
// (LatticeError). The result is truncated at the smaller order.
GenSeries operator+(const GenSeries& lhs, const GenSeries& rhs);
GenSeries operator-(const GenSeries& lhs, const GenSeries& rhs);
GenSeries operator-(const GenSeries& s);
GenSeries operator*(double c, const GenSeries& s);

// Truncated Cauchy product. Terms above `order` are dropped; the result's
// truncation order also accounts for the factors' unrepresented remainders.
GenSeries truncated_product(const GenSeries& lhs, const GenSeries& rhs, double order);

// Sum of coef * (x - a)^exponent over the represented terms.
// Non-integer exponents need x > a; negative exponents need x != a.
double series_eval(const GenSeries& f, double x);

// Largest relative coefficient difference over the union of exponents.
// An exponent present on one side only counts as 1. Basepoint mismatch
// counts as +inf.
double max_relative_difference(const GenSeries& a, const GenSeries& b);

// Same, with |ca - cb| / max(1, |ca|, |cb|).
double max_mixed_difference(const GenSeries& a, const GenSeries& b);

} // namespace fraclift
