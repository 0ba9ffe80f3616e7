#pragma once

// Randomized identity suites for the projection/lift/shift machinery. Each
// suite draws its own deterministic stream from VerifyConfig::seed, so a
// suite reports the same residuals whether it runs alone or under "all".

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fraclift/coeffseq.hpp"
#include "fraclift/series.hpp"

namespace fraclift {

struct VerifyConfig {
  int order = 16;             // jet order of random and transcendental inputs
  int cases = 200;            // random instances per suite
  std::uint64_t seed = 20261018;
  long support_lo = -8;       // random CoeffSeq support
  long support_hi = 16;
  double coef_range = 10.0;   // coefficients uniform in [-coef_range, coef_range]
};

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::string first_failure;

  bool passed() const noexcept { return failures == 0; }
};

// "R1'", "R2", "D1-D5", "D6-D8", "I1-I4", "D6'", "D8'", "diagram".
const std::vector<std::string>& suite_names();

// Runs one named suite, or every suite for "all". DomainError on an unknown
// name. Suite names are matched case-insensitively; "p" may stand for the
// prime (R1p, D6p, D8p).
std::vector<SuiteResult> run_verify(const std::string& suite, const VerifyConfig& cfg = {});

// Integer-order classical derivative (n > 0) or n-fold integral from the
// basepoint (n < 0) of an analytic jet, using integer factorial ratios only.
GenSeries classical_derivative(const GenSeries& f, int n);

// Random inputs used by the suites.
CoeffSeq random_coeffseq(std::mt19937_64& rng, double basepoint, const VerifyConfig& cfg);
GenSeries random_jet(std::mt19937_64& rng, double basepoint, int order, double coef_range);

} // namespace fraclift
