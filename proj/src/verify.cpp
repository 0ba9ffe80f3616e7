#include "fraclift/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "fraclift/errors.hpp"
#include "fraclift/gamma.hpp"
#include "fraclift/lifted.hpp"
#include "fraclift/parser.hpp"
#include "fraclift/rl.hpp"

namespace fraclift {

namespace {

class Checker {
public:
  Checker(std::string name, double tol) { result_.name = std::move(name); result_.tolerance = tol; }

  void residual(double r, const std::string& what) {
    ++result_.checks;
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    result_.max_residual = std::max(result_.max_residual, r);
    if (r > result_.tolerance) fail(what + " (residual " + std::to_string(r) + ")");
  }

  void exact(bool ok, const std::string& what) {
    ++result_.checks;
    if (!ok) {
      result_.max_residual = std::max(result_.max_residual, 1.0);
      fail(what);
    }
  }

  SuiteResult take() { return std::move(result_); }

private:
  SuiteResult result_;

  void fail(const std::string& what) {
    if (result_.failures++ == 0) result_.first_failure = what;
  }
};

// Largest relative difference between two sequences over their joint support.
double seq_residual(const CoeffSeq& a, const CoeffSeq& b) {
  double worst = 0.0;
  auto visit = [&](long i) {
    const double x = a(i), y = b(i);
    const double scale = std::max(std::abs(x), std::abs(y));
    if (scale > 0.0) worst = std::max(worst, std::abs(x - y) / scale);
  };
  for (const auto& [i, v] : a.entries()) visit(i);
  for (const auto& [i, v] : b.entries()) visit(i);
  return worst;
}

std::mt19937_64 stream(const VerifyConfig& cfg, std::uint64_t salt) {
  std::seed_seq seq{cfg.seed, salt};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double random_basepoint(std::mt19937_64& rng) { return std::round(uniform(rng, -2.0, 2.0) * 8.0) / 8.0; }

// Random non-integer real in (lo, hi), at least `margin` away from any integer.
double random_fractional(std::mt19937_64& rng, double lo, double hi, double margin = 0.05) {
  for (;;) {
    const double v = uniform(rng, lo, hi);
    if (std::abs(v - std::round(v)) >= margin) return v;
  }
}

std::vector<GenSeries> named_jets(double a, int order) {
  std::vector<GenSeries> out;
  for (const char* text : {"x", "x^2", "exp(x)", "sin(x)", "cos(x)*x + 3"})
    out.push_back(to_series(*parse(text), a, order));
  return out;
}

const std::vector<double>& diagram_orders() {
  static const std::vector<double> ks = {0.5, 1.0, 1.5, -0.5, std::numbers::pi / 3.0};
  return ks;
}

SuiteResult suite_r1(const VerifyConfig& cfg) {
  Checker c("R1'", 1e-12);
  auto rng = stream(cfg, 1);
  for (int n = 0; n < cfg.cases; ++n) {
    const double a = random_basepoint(rng);
    const GenSeries f = random_jet(rng, a, cfg.order, cfg.coef_range);
    const GenSeries back = project(lift_jet(f));
    c.exact(back.basepoint() == a, "basepoint not preserved");
    c.residual(max_relative_difference(back, f), "R(R^-1 f) != f");
  }
  return c.take();
}

SuiteResult suite_r2(const VerifyConfig& cfg) {
  Checker c("R2", 1e-12);
  auto rng = stream(cfg, 2);
  for (int n = 0; n < cfg.cases; ++n) {
    const double a = random_basepoint(rng);
    const CoeffSeq s = random_coeffseq(rng, a, cfg);
    const CoeffSeq back = lift_jet(project(s));
    std::map<long, double> expected;
    for (const auto& [i, v] : s.entries())
      if (i >= 0) expected.emplace(i, v);
    c.residual(seq_residual(back, CoeffSeq(a, expected)), "R^-1 R sigma != sigma on i >= 0");
    c.exact(back.entries().empty() || back.entries().begin()->first >= 0,
            "R^-1 R sigma nonzero at a negative index");
    // Kernel: R sigma = 0 exactly when sigma vanishes on i >= 0.
    c.exact(project(s).empty() == expected.empty(), "kernel of R mismatch");
  }
  return c.take();
}

SuiteResult suite_d1_d5(const VerifyConfig& cfg) {
  Checker c("D1-D5", 1e-15);
  auto rng = stream(cfg, 3);
  for (int n = 0; n < cfg.cases; ++n) {
    const double a = random_basepoint(rng);
    const double u = uniform(rng, -2.0, 2.0);
    const LiftedSeq rho = shift(embed(random_coeffseq(rng, a, cfg)), u);
    const LiftedSeq rho2 = shift(shift(embed(random_coeffseq(rng, a, cfg)), u), 3.0);
    const double p = uniform(rng, -3.0, 3.0);
    const double q = uniform(rng, -3.0, 3.0);
    const double scalar = uniform(rng, -cfg.coef_range, cfg.coef_range);

    c.exact(shift(shift(rho, p), q) == shift(shift(rho, q), p), "D1: D^p D^q != D^q D^p");
    const LiftedSeq pq = shift(shift(rho, p), q);
    const LiftedSeq sum = shift(rho, p + q);
    c.exact(pq.values() == sum.values(), "D2: values differ");
    c.residual(std::abs(pq.offset().value() - sum.offset().value()) /
                   std::max(1.0, std::abs(sum.offset().value())),
               "D2: offset of D^p D^q vs D^(p+q)");
    c.exact(shift(shift(rho, p), -p) == rho && shift(shift(rho, -p), p) == rho,
            "D3: D^p D^-p != D^0");
    c.exact(shift(rho, 0.0) == rho, "D^0 is not the identity");
    c.exact(shift(lifted_add(rho, rho2), p) == lifted_add(shift(rho, p), shift(rho2, p)),
            "D4: shift not additive");
    c.exact(shift(lifted_scale(scalar, rho), p) == lifted_scale(scalar, shift(rho, p)),
            "D5: shift not homogeneous");

    // Integer shifts on the integer-indexed space.
    const CoeffSeq s = random_coeffseq(rng, a, cfg);
    const long i = static_cast<long>(std::lround(uniform(rng, -4.0, 4.0)));
    const long j = static_cast<long>(std::lround(uniform(rng, -4.0, 4.0)));
    c.exact(shift(shift(s, i), j) == shift(shift(s, j), i), "D1 on Z-indexed sequences");
    c.exact(shift(shift(s, i), j) == shift(s, i + j), "D2 on Z-indexed sequences");
    c.exact(shift(shift(s, i), -i) == s, "D3 on Z-indexed sequences");
  }
  return c.take();
}

SuiteResult suite_d6_d8(const VerifyConfig& cfg) {
  Checker c("D6-D8", 1e-12);
  auto rng = stream(cfg, 4);
  for (int n = 0; n < cfg.cases; ++n) {
    const double a = random_basepoint(rng);
    const GenSeries f = random_jet(rng, a, cfg.order, cfg.coef_range);
    const CoeffSeq sigma = lift_jet(f);
    const int up = static_cast<int>(std::lround(uniform(rng, 0.0, 4.0)));
    const int any = static_cast<int>(std::lround(uniform(rng, -3.0, 4.0)));

    // D6: R D^a R^-1 f = f^(a)
    c.residual(max_relative_difference(project(shift(sigma, up)), classical_derivative(f, up)),
               "D6");

    // D7: R^-1 d^a/dx^a R sigma (i) = sigma(i + a) for i >= max(0, -a), else 0
    const CoeffSeq s = random_coeffseq(rng, a, cfg);
    const CoeffSeq lhs = lift_jet(classical_derivative(project(s), any));
    std::map<long, double> expected;
    for (const auto& [i, v] : s.entries())
      if (i - any >= std::max(0L, static_cast<long>(-any))) expected.emplace(i - any, v);
    c.residual(seq_residual(lhs, CoeffSeq(a, expected)), "D7");

    // D8: d^a/dx^a R D^-a sigma = R sigma
    c.residual(max_relative_difference(classical_derivative(project(shift(s, -up)), up),
                                       project(s)),
               "D8");
  }
  return c.take();
}

SuiteResult suite_i1_i4(const VerifyConfig& cfg) {
  Checker c("I1-I4", 1e-12);
  auto rng = stream(cfg, 5);
  for (int n = 0; n < cfg.cases; ++n) {
    const double a = random_basepoint(rng);
    const CoeffSeq s = random_coeffseq(rng, a, cfg);
    const LiftedSeq rho = embed(s);
    c.exact(restrict_to_integers(rho) == s, "I1: iota(sigma)|Z != sigma");
    const long k = static_cast<long>(std::lround(uniform(rng, -5.0, 5.0)));
    c.exact(restrict_to_integers(shift(rho, static_cast<double>(k))) == shift(s, k),
            "I2: (D^k iota sigma)|Z != D^k sigma");
    const double z = random_fractional(rng, -8.0, 16.0);
    c.exact(rho(z) == 0.0, "iota(sigma) nonzero off the integer lattice");

    const GenSeries f = random_jet(rng, a, cfg.order, cfg.coef_range);
    const CoeffSeq jet = lift_jet(f);
    c.exact(restrict_to_integers(embed(jet)) == jet, "I3: iota(R^-1 f)|Z != R^-1 f");
    c.residual(max_relative_difference(project(restrict_to_integers(embed(jet))), f), "I4");
  }
  return c.take();
}

std::vector<GenSeries> diagram_inputs(std::mt19937_64& rng, const VerifyConfig& cfg) {
  std::vector<GenSeries> inputs = named_jets(0.0, cfg.order);
  const auto more = named_jets(1.5, cfg.order);
  inputs.insert(inputs.end(), more.begin(), more.end());
  const int random_count = std::max(0, cfg.cases / 10);
  for (int n = 0; n < random_count; ++n) {
    const double a = random_basepoint(rng);
    inputs.push_back(random_jet(rng, a, cfg.order, cfg.coef_range));
  }
  return inputs;
}

SuiteResult suite_d6_prime(const VerifyConfig& cfg) {
  Checker c("D6'", 1e-12);
  auto rng = stream(cfg, 6);
  for (const auto& f : diagram_inputs(rng, cfg))
    for (double k : diagram_orders())
      c.residual(max_relative_difference(project(shift(embed(lift_jet(f)), k)), rl_series(f, k)),
                 "D6' at k = " + std::to_string(k));
  return c.take();
}

SuiteResult suite_d8_prime(const VerifyConfig& cfg) {
  Checker c("D8'", 1e-10);
  auto rng = stream(cfg, 7);
  for (const auto& f : diagram_inputs(rng, cfg))
    for (double k : diagram_orders())
      c.residual(max_relative_difference(
                     rl_series(project(shift(embed(lift_jet(f)), -k)), k), f),
                 "D8' at k = " + std::to_string(k));
  return c.take();
}

// Kernel elements of the first application: a single power b (x-a)^alpha with
// alpha + 1 - j in Z<=0. The direct route loses the term after D^j; the lifted
// route still produces D^(j+k).
SuiteResult suite_diagram(const VerifyConfig& cfg) {
  Checker c("diagram", 1e-12);
  auto rng = stream(cfg, 8);
  auto one = [&](const GenSeries& f, double j, double k) {
    const std::string tag = "alpha=" + std::to_string(f.terms().front().exponent) +
                            " j=" + std::to_string(j) + " k=" + std::to_string(k);
    c.exact(rl_series(f, j).empty(), "D^j f is not zero, " + tag);
    c.exact(rl_series(rl_series(f, j), k).empty(), "D^k D^j f is not zero, " + tag);
    const GenSeries lifted = project(shift(shift(lift_series(f), j), k));
    const GenSeries direct = rl_series(f, j + k);
    c.exact(!direct.empty(), "D^(j+k) f unexpectedly zero, " + tag);
    c.residual(max_relative_difference(lifted, direct), "lifted vs direct, " + tag);
    c.exact(shift(shift(lift_series(f), j), k) == shift(shift(lift_series(f), k), j),
            "lifted shifts do not commute, " + tag);
  };
  one(GenSeries::monomial(0.0, -0.5), 0.5, 0.5);
  for (int n = 0; n < cfg.cases; ++n) {
    const double a = random_basepoint(rng);
    const double j = random_fractional(rng, 0.0, 3.0);
    const long m = static_cast<long>(std::lround(uniform(rng, 0.0, 2.0)));
    const double alpha = j - 1.0 - static_cast<double>(m);
    const double k = random_fractional(rng, 0.0, 2.0);
    one(GenSeries::monomial(a, alpha, uniform(rng, 0.5, cfg.coef_range)), j, k);
  }
  return c.take();
}

std::string canonical(const std::string& name) {
  std::string out;
  for (char ch : name) {
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    out += lower == '\'' ? 'p' : lower;
  }
  return out;
}

} // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"R1'",   "R2",  "D1-D5", "D6-D8",
                                                 "I1-I4", "D6'", "D8'",   "diagram"};
  return names;
}

std::vector<SuiteResult> run_verify(const std::string& suite, const VerifyConfig& cfg) {
  using Fn = SuiteResult (*)(const VerifyConfig&);
  static const std::vector<std::pair<std::string, Fn>> table = {
      {"R1'", suite_r1},       {"R2", suite_r2},         {"D1-D5", suite_d1_d5},
      {"D6-D8", suite_d6_d8},  {"I1-I4", suite_i1_i4},   {"D6'", suite_d6_prime},
      {"D8'", suite_d8_prime}, {"diagram", suite_diagram}};
  if (cfg.order < 1) throw DomainError("verify needs order >= 1");
  if (cfg.cases < 1) throw DomainError("verify needs at least one case");

  std::vector<SuiteResult> results;
  const std::string wanted = canonical(suite);
  for (const auto& [name, fn] : table)
    if (wanted == "all" || wanted == canonical(name)) results.push_back(fn(cfg));
  if (results.empty()) throw DomainError("unknown verification suite '" + suite + "'");
  return results;
}

GenSeries classical_derivative(const GenSeries& f, int n) {
  if (!f.is_analytic_jet())
    throw DomainError("classical_derivative needs an analytic jet");
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    const long m = std::lround(t.exponent);
    if (n >= 0) {
      if (m < n) continue;
      double falling = 1.0;
      for (long i = m - n + 1; i <= m; ++i) falling *= static_cast<double>(i);
      out.push_back({static_cast<double>(m - n), t.coef * falling});
    } else {
      double rising = 1.0;
      for (long i = m + 1; i <= m - n; ++i) rising *= static_cast<double>(i);
      out.push_back({static_cast<double>(m - n), t.coef / rising});
    }
  }
  return GenSeries(f.basepoint(), std::move(out), f.truncation_order() - n);
}

CoeffSeq random_coeffseq(std::mt19937_64& rng, double basepoint, const VerifyConfig& cfg) {
  std::map<long, double> entries;
  std::bernoulli_distribution present(0.5);
  for (long i = cfg.support_lo; i <= cfg.support_hi; ++i)
    if (present(rng)) entries.emplace(i, uniform(rng, -cfg.coef_range, cfg.coef_range));
  return CoeffSeq(basepoint, std::move(entries));
}

GenSeries random_jet(std::mt19937_64& rng, double basepoint, int order, double coef_range) {
  std::vector<Term> terms;
  std::bernoulli_distribution present(0.7);
  for (int i = 0; i <= order; ++i)
    if (present(rng)) terms.push_back({static_cast<double>(i), uniform(rng, -coef_range, coef_range)});
  return GenSeries(basepoint, std::move(terms));
}

} // namespace fraclift
