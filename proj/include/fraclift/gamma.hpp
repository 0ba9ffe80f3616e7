#pragma once

// Gamma function kernel with explicit pole semantics.
//
// Poles of Gamma at the nonpositive integers are not numerical accidents
// here: they are what annihilates power terms under the Riemann-Liouville
// power rule and under the projection R. Every routine therefore decides
// "is this argument a pole" with one shared tolerance (see
// integer_tolerance()) and treats poles as exact events.

namespace fraclift {

// Magnitude/sign representation of Gamma(x).
struct SignedLogGamma {
  double log_abs = 0.0; // ln|Gamma(x)|; +inf at a pole
  int sign = 1;         // +1 or -1
  bool is_pole = false;
};

// Shared integer-detection tolerance (default 1e-9). Used for pole
// detection and lattice congruence checks throughout the library.
double integer_tolerance() noexcept;
void set_integer_tolerance(double tol);

// RAII override of the integer tolerance, restored on scope exit.
class ScopedIntegerTolerance {
public:
  explicit ScopedIntegerTolerance(double tol);
  ~ScopedIntegerTolerance();
  ScopedIntegerTolerance(const ScopedIntegerTolerance&) = delete;
  ScopedIntegerTolerance& operator=(const ScopedIntegerTolerance&) = delete;

private:
  double saved_;
};

// |x - round(x)| <= integer_tolerance().
bool is_near_integer(double x) noexcept;

// is_near_integer(x) && round(x) <= 0.
bool is_gamma_pole(double x) noexcept;

SignedLogGamma signed_lgamma(double x) noexcept;

// Throws PoleError at nonpositive integers, OverflowError for x > 171.6.
double gamma(double x);

// 1/Gamma(x). Exactly 0.0 at the poles; never throws.
double recip_gamma(double x) noexcept;

// Gamma(p)/Gamma(q) with the pole conventions
//   q pole only        -> 0
//   p = -m, q = -n     -> (-1)^(n-m) n!/m!   (limit of the ratio)
//   p pole only        -> PoleError
double gamma_ratio(double p, double q);

namespace testing {
// Multiplies every nonzero gamma_ratio result by (1 + eps). Zero disables.
// Exists only so verification suites can be shown to be sensitive.
void set_ratio_perturbation(double eps) noexcept;
double ratio_perturbation() noexcept;
} // namespace testing

} // namespace fraclift
