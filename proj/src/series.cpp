#include "fraclift/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fraclift/errors.hpp"
#include "fraclift/gamma.hpp"

namespace fraclift {

namespace {

double frac_part(double e) { return e - std::floor(e); }

bool same_phase(double p, double q) {
  const double d = std::abs(p - q);
  return std::min(d, 1.0 - d) <= integer_tolerance();
}

void require_same_basepoint(const GenSeries& a, const GenSeries& b) {
  if (a.basepoint() != b.basepoint())
    throw BasepointMismatch("series basepoints differ: " +
                            std::to_string(a.basepoint()) + " vs " +
                            std::to_string(b.basepoint()));
}

template <typename Fn>
double max_difference(const GenSeries& a, const GenSeries& b, Fn&& scale) {
  if (a.basepoint() != b.basepoint()) return std::numeric_limits<double>::infinity();
  const double tol = integer_tolerance();
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  double worst = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    if (j == tb.size() || (i < ta.size() && ta[i].exponent < tb[j].exponent - tol)) {
      worst = std::max(worst, 1.0);
      ++i;
    } else if (i == ta.size() || tb[j].exponent < ta[i].exponent - tol) {
      worst = std::max(worst, 1.0);
      ++j;
    } else {
      const double ca = ta[i].coef, cb = tb[j].coef;
      worst = std::max(worst, std::abs(ca - cb) / scale(ca, cb));
      ++i;
      ++j;
    }
  }
  return worst;
}

} // namespace

GenSeries::GenSeries(double basepoint, double truncation_order)
    : basepoint_(basepoint), truncation_order_(truncation_order) {
  if (!std::isfinite(basepoint)) throw DomainError("series basepoint must be finite");
  if (std::isnan(truncation_order)) throw DomainError("truncation order is NaN");
}

GenSeries::GenSeries(double basepoint, std::vector<Term> terms, double truncation_order)
    : GenSeries(basepoint, truncation_order) {
  const double tol = integer_tolerance();
  for (auto& t : terms) {
    if (!std::isfinite(t.exponent) || !std::isfinite(t.coef))
      throw DomainError("series term has a non-finite exponent or coefficient");
    if (is_near_integer(t.exponent)) t.exponent = std::round(t.exponent);
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& l, const Term& r) { return l.exponent < r.exponent; });

  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (!merged.empty() && t.exponent - merged.back().exponent <= tol)
      merged.back().coef += t.coef;
    else
      merged.push_back(t);
  }

  terms_.reserve(merged.size());
  for (const auto& t : merged) {
    if (std::abs(t.coef) < kCoefFloor) continue;
    if (t.exponent > truncation_order_ + tol) continue;
    if (!terms_.empty() &&
        !same_phase(frac_part(t.exponent), frac_part(terms_.front().exponent)))
      throw LatticeError("exponents " + std::to_string(terms_.front().exponent) +
                         " and " + std::to_string(t.exponent) +
                         " lie on different lattices");
    terms_.push_back(t);
  }
}

GenSeries GenSeries::monomial(double basepoint, double exponent, double coef) {
  return GenSeries(basepoint, {{exponent, coef}});
}

double GenSeries::phase() const noexcept {
  if (terms_.empty()) return 0.0;
  const double p = frac_part(terms_.front().exponent);
  return p >= 1.0 ? 0.0 : p;
}

bool GenSeries::is_analytic_jet() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return t.exponent >= 0.0 && t.exponent == std::round(t.exponent);
  });
}

double GenSeries::coef_at(double exponent) const noexcept {
  const double tol = integer_tolerance();
  for (const auto& t : terms_)
    if (std::abs(t.exponent - exponent) <= tol) return t.coef;
  return 0.0;
}

GenSeries GenSeries::with_truncation(double order) const {
  return GenSeries(basepoint_, terms_, std::min(order, truncation_order_));
}

GenSeries operator+(const GenSeries& lhs, const GenSeries& rhs) {
  require_same_basepoint(lhs, rhs);
  std::vector<Term> terms = lhs.terms();
  terms.insert(terms.end(), rhs.terms().begin(), rhs.terms().end());
  return GenSeries(lhs.basepoint(), std::move(terms),
                   std::min(lhs.truncation_order(), rhs.truncation_order()));
}

GenSeries operator-(const GenSeries& s) { return -1.0 * s; }

GenSeries operator-(const GenSeries& lhs, const GenSeries& rhs) { return lhs + (-rhs); }

GenSeries operator*(double c, const GenSeries& s) {
  std::vector<Term> terms = s.terms();
  for (auto& t : terms) t.coef *= c;
  return GenSeries(s.basepoint(), std::move(terms), s.truncation_order());
}

GenSeries truncated_product(const GenSeries& lhs, const GenSeries& rhs, double order) {
  require_same_basepoint(lhs, rhs);
  // A remainder beyond T multiplies the other factor's lowest term.
  auto lowest = [](const GenSeries& s) {
    return s.empty() ? s.truncation_order() : s.terms().front().exponent;
  };
  double limit = std::min(lhs.truncation_order() + lowest(rhs),
                          rhs.truncation_order() + lowest(lhs));
  const double tol = integer_tolerance();
  bool dropped = false;
  std::vector<Term> terms;
  terms.reserve(lhs.size() * rhs.size());
  for (const auto& l : lhs.terms())
    for (const auto& r : rhs.terms()) {
      const double e = l.exponent + r.exponent;
      if (e > order + tol) {
        dropped = true;
        continue;
      }
      terms.push_back({e, l.coef * r.coef});
    }
  if (dropped) limit = std::min(limit, order);
  return GenSeries(lhs.basepoint(), std::move(terms), limit);
}

double series_eval(const GenSeries& f, double x) {
  const double h = x - f.basepoint();
  double sum = 0.0;
  // Highest exponents first: near the basepoint these are the smallest.
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const bool integral = it->exponent == std::round(it->exponent);
    if (!integral && h <= 0.0)
      throw DomainError("series_eval: non-integer exponent " +
                        std::to_string(it->exponent) + " needs x > basepoint");
    if (it->exponent < 0.0 && h == 0.0)
      throw DomainError("series_eval: negative exponent " +
                        std::to_string(it->exponent) + " at the basepoint");
    sum += it->coef * (it->exponent == 0.0 ? 1.0 : std::pow(h, it->exponent));
  }
  return sum;
}

double max_relative_difference(const GenSeries& a, const GenSeries& b) {
  return max_difference(a, b, [](double ca, double cb) {
    return std::max(std::abs(ca), std::abs(cb));
  });
}

double max_mixed_difference(const GenSeries& a, const GenSeries& b) {
  return max_difference(a, b, [](double ca, double cb) {
    return std::max({1.0, std::abs(ca), std::abs(cb)});
  });
}

} // namespace fraclift
