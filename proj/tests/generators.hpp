#pragma once

// Small hand-rolled generators for the property tests. Every test seeds its
// own engine so failures reproduce in isolation.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fraclift/series.hpp"

namespace gen {

inline std::mt19937_64 engine(std::uint64_t salt) { return std::mt19937_64(0x5eed0000ULL + salt); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline long integer(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Uniform in (lo, hi), at least `gap` away from every integer.
inline double non_integer(std::mt19937_64& rng, double lo, double hi, double gap = 1e-6) {
  for (;;) {
    const double x = uniform(rng, lo, hi);
    if (std::abs(x - std::round(x)) > gap) return x;
  }
}

// Polynomial with integer exponents 0..degree and coefficients in [-c, c].
inline fraclift::GenSeries polynomial(std::mt19937_64& rng, double a, int degree, double c = 5.0) {
  std::vector<fraclift::Term> terms;
  for (int i = 0; i <= degree; ++i) terms.push_back({double(i), uniform(rng, -c, c)});
  return fraclift::GenSeries(a, terms);
}

// Terms phi + n, n in [n_lo, n_hi], each present with probability 1/2.
inline fraclift::GenSeries lattice_series(std::mt19937_64& rng, double a, double phi, long n_lo,
                                          long n_hi, double c = 5.0) {
  std::vector<fraclift::Term> terms;
  for (long n = n_lo; n <= n_hi; ++n)
    if (rng() & 1) terms.push_back({phi + double(n), uniform(rng, -c, c)});
  return fraclift::GenSeries(a, terms);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

} // namespace gen
