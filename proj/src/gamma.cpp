#include "fraclift/gamma.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fraclift/errors.hpp"

namespace fraclift {

namespace {

std::atomic<double> g_integer_tol{1e-9};
std::atomic<double> g_ratio_perturbation{0.0};

constexpr double kOverflowArg = 171.6;
// Inside this band both Gamma(p) and 1/Gamma(q) are comfortably normal
// doubles, so the direct product beats exp(lp - lq) on accuracy.
constexpr double kDirectRatioArg = 160.0;

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// n! for n = 0..22 are exactly representable.
constexpr std::array<double, 23> kFactorial = [] {
  std::array<double, 23> f{};
  f[0] = 1.0;
  for (std::size_t i = 1; i < f.size(); ++i)
    f[i] = f[i - 1] * static_cast<double>(i);
  return f;
}();

double lanczos_series(double z) {
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i)
    a += kLanczos[i] / (z + static_cast<double>(i));
  return a;
}

// sin(pi x) with exact argument reduction.
double sinpi(double x) {
  const double n = std::round(x);
  const double r = x - n;
  const double s = std::sin(std::numbers::pi * r);
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

// ln Gamma(x) for x >= 0.5.
double lanczos_log(double x) {
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(lanczos_series(z));
}

// Gamma(x) for 0.5 <= x <= kOverflowArg.
double lanczos_gamma(double x) {
  const double rounded = std::round(x);
  if (x == rounded && rounded >= 1.0 &&
      rounded <= static_cast<double>(kFactorial.size()))
    return kFactorial[static_cast<std::size_t>(rounded) - 1];
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  // t^(z+1/2) overflows before Gamma does; split the power.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) *
         lanczos_series(z);
}

double factorial_ratio(long n, long m) {
  // n!/m!
  if (std::abs(n - m) <= 20) {
    double r = 1.0;
    for (long i = m + 1; i <= n; ++i) r *= static_cast<double>(i);
    for (long i = n + 1; i <= m; ++i) r /= static_cast<double>(i);
    return r;
  }
  return std::exp(lanczos_log(static_cast<double>(n) + 1.0) -
                  lanczos_log(static_cast<double>(m) + 1.0));
}

double perturbed(double r) {
  const double eps = g_ratio_perturbation.load(std::memory_order_relaxed);
  return (eps != 0.0 && r != 0.0) ? r * (1.0 + eps) : r;
}

} // namespace

double integer_tolerance() noexcept {
  return g_integer_tol.load(std::memory_order_relaxed);
}

void set_integer_tolerance(double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol) || tol >= 0.5)
    throw DomainError("integer tolerance must lie in [0, 0.5), got " +
                      std::to_string(tol));
  g_integer_tol.store(tol, std::memory_order_relaxed);
}

ScopedIntegerTolerance::ScopedIntegerTolerance(double tol)
    : saved_(integer_tolerance()) {
  set_integer_tolerance(tol);
}

ScopedIntegerTolerance::~ScopedIntegerTolerance() {
  g_integer_tol.store(saved_, std::memory_order_relaxed);
}

bool is_near_integer(double x) noexcept {
  return std::isfinite(x) && std::abs(x - std::round(x)) <= integer_tolerance();
}

bool is_gamma_pole(double x) noexcept {
  return is_near_integer(x) && std::round(x) <= 0.0;
}

SignedLogGamma signed_lgamma(double x) noexcept {
  if (is_gamma_pole(x))
    return {std::numeric_limits<double>::infinity(), 1, true};
  if (x >= 0.5) return {lanczos_log(x), 1, false};
  // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)), Gamma(1 - x) > 0.
  const double s = sinpi(x);
  return {std::log(std::numbers::pi) - std::log(std::abs(s)) - lanczos_log(1.0 - x),
          s < 0.0 ? -1 : 1, false};
}

double gamma(double x) {
  if (std::isnan(x)) throw DomainError("gamma: NaN argument");
  if (is_gamma_pole(x))
    throw PoleError("gamma: pole at nonpositive integer " + std::to_string(x));
  if (x > kOverflowArg)
    throw OverflowError("gamma: overflow for argument " + std::to_string(x));
  if (x >= 0.5) return lanczos_gamma(x);
  if (1.0 - x > kOverflowArg) {
    const auto lg = signed_lgamma(x);
    return lg.sign * std::exp(lg.log_abs);
  }
  return std::numbers::pi / (sinpi(x) * lanczos_gamma(1.0 - x));
}

double recip_gamma(double x) noexcept {
  if (std::isnan(x)) return x;
  if (is_gamma_pole(x)) return 0.0;
  if (x > kOverflowArg) return std::exp(-lanczos_log(x));
  if (x >= 0.5) return 1.0 / lanczos_gamma(x);
  if (1.0 - x > kOverflowArg) {
    const auto lg = signed_lgamma(x);
    return lg.sign * std::exp(-lg.log_abs);
  }
  // Entire form, no division near the poles.
  return sinpi(x) * lanczos_gamma(1.0 - x) / std::numbers::pi;
}

double gamma_ratio(double p, double q) {
  if (std::isnan(p) || std::isnan(q)) throw DomainError("gamma_ratio: NaN argument");
  const bool p_pole = is_gamma_pole(p);
  const bool q_pole = is_gamma_pole(q);
  if (p_pole && q_pole) {
    const long m = -std::lround(p);
    const long n = -std::lround(q);
    const double mag = factorial_ratio(n, m);
    return perturbed(((n - m) % 2 == 0) ? mag : -mag);
  }
  if (q_pole) return 0.0;
  if (p_pole)
    throw PoleError("gamma_ratio: numerator pole at " + std::to_string(p) +
                    " with finite denominator Gamma(" + std::to_string(q) + ")");
  if (std::abs(p) <= kDirectRatioArg && std::abs(q) <= kDirectRatioArg)
    return perturbed(gamma(p) * recip_gamma(q));
  const auto lp = signed_lgamma(p);
  const auto lq = signed_lgamma(q);
  return perturbed(lp.sign * lq.sign * std::exp(lp.log_abs - lq.log_abs));
}

namespace testing {
void set_ratio_perturbation(double eps) noexcept {
  g_ratio_perturbation.store(eps, std::memory_order_relaxed);
}
double ratio_perturbation() noexcept {
  return g_ratio_perturbation.load(std::memory_order_relaxed);
}
} // namespace testing

} // namespace fraclift
