#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fraclift/errors.hpp"
#include "fraclift/oracle.hpp"
#include "fraclift/rl.hpp"
#include "generators.hpp"

using namespace fraclift;

namespace {

// Power rule through the C library Gamma, so neither side of the oracle
// comparison depends on the library's own kernel.
double closed_form(double alpha, double k, double x) {
  const double q = alpha + 1.0 - k;
  if (q <= 0.0 && q == std::round(q)) return 0.0;
  return std::tgamma(alpha + 1.0) / std::tgamma(q) * std::pow(x, alpha - k);
}

GenSeries exp_jet(int order) {
  std::vector<Term> terms;
  double f = 1.0;
  for (int i = 0; i <= order; ++i) {
    if (i > 0) f *= i;
    terms.push_back({double(i), 1.0 / f});
  }
  return GenSeries(0.0, terms, order);
}

} // namespace

TEST_CASE("oracle examples") {
  const auto half = rl_oracle([](double t) { return t; }, 0.0, 0.5, 1.0);
  CHECK(std::abs(half.value - 1.1283791671) <= 1e-6);
  for (double x : {0.3, 1.0, 2.5}) {
    const auto integral = rl_oracle([](double) { return 1.0; }, 0.0, -1.0, x);
    CHECK(std::abs(integral.value - x) <= 1e-9);
  }
  const auto d = rl_oracle([](double t) { return t * t; }, 0.0, 1.0, 0.7);
  CHECK(std::abs(d.value - 1.4) <= 1e-6);
}

TEST_CASE("oracle rejects bad input") {
  auto id = [](double t) { return t; };
  CHECK_THROWS_AS(rl_oracle(id, 0.0, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(rl_oracle(id, 1.0, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(rl_oracle(id, 0.0, 3.5, 1.0), DomainError);
  QuadratureConfig bad;
  bad.max_subdivisions = 8;
  CHECK_THROWS_AS(rl_oracle(id, 0.0, 0.5, 1.0, bad), DomainError);
  bad = {};
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("oracle agrees with the power rule on monomials") {
  for (double alpha : {0.0, 0.5, 1.0, 2.0, 3.5})
    for (double k : {-1.0, -0.5, 0.5, 1.0, 1.5})
      for (double x : {0.5, 1.0, 2.0}) {
        const double want = closed_form(alpha, k, x);
        const auto got = rl_oracle([alpha](double t) { return std::pow(t, alpha); }, 0.0, k, x);
        const double termwise = series_eval(rl_series(GenSeries::monomial(0.0, alpha), k), x);
        INFO("alpha=" << alpha << " k=" << k << " x=" << x);
        CHECK(std::abs(got.value - termwise) <= 1e-5 * std::max(1.0, std::abs(termwise)));
        CHECK(std::abs(termwise - want) <= 1e-12 * std::max(1.0, std::abs(want)));
      }
}

TEST_CASE("oracle with a shifted basepoint") {
  // f(t) = (t - 1)^2, a = 1: half-derivative 2/Gamma(2.5) (x-1)^1.5
  const auto got = rl_oracle([](double t) { return (t - 1) * (t - 1); }, 1.0, 0.5, 2.0);
  CHECK(std::abs(got.value - 2.0 / std::tgamma(2.5)) <= 1e-6);
}

TEST_CASE("oracle self-consistency under refinement") {
  QuadratureConfig fine;
  fine.fd_step /= 2;
  fine.max_subdivisions *= 2;
  for (double k : {-0.5, 0.5, 1.5})
    for (double x : {0.5, 2.0}) {
      auto f = [](double t) { return std::exp(t) * std::sqrt(t); };
      const auto a = rl_oracle(f, 0.0, k, x);
      const auto b = rl_oracle(f, 0.0, k, x, fine);
      CHECK(std::abs(a.value - b.value) <= a.error + b.error);
    }
}

TEST_CASE("compare examples") {
  const EvalTable t = compare(GenSeries::monomial(0.0, 1.0), 0.5, {0.25, 1.0, 2.25});
  const double want[] = {0.5641895835, 1.1283791671, 1.6925687506};
  REQUIRE(t.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(t[i].termwise - want[i]) <= 1e-10);
    CHECK(t[i].abs_diff <= 1e-6);
    CHECK(t[i].tail == 0.0);
  }
  const EvalTable sq = compare(GenSeries::monomial(0.0, 2.0), 1.0, {1.0});
  CHECK(sq[0].termwise == 2.0);
  CHECK(std::abs(sq[0].oracle - 2.0) <= 1e-6);

  const EvalTable e = compare(exp_jet(24), 0.5, {0.5});
  CHECK(e[0].abs_diff <= 1e-5);
  CHECK(e[0].tail < 1e-20);

  CHECK_THROWS_AS(compare(GenSeries::monomial(0.0, 1.0), 0.5, {0.0}), DomainError);
}

TEST_CASE("compare is deterministic regardless of schedule") {
  const std::vector<double> xs = {0.1, 0.4, 0.9, 1.3, 2.0, 2.7};
  const EvalTable a = compare(exp_jet(20), -0.5, xs);
  const EvalTable b = compare(exp_jet(20), -0.5, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(a[i].x == xs[i]);
    CHECK(a[i].oracle == b[i].oracle);
  }
}
