#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fraclift/coeffseq.hpp"
#include "fraclift/errors.hpp"
#include "fraclift/lifted.hpp"
#include "fraclift/rl.hpp"
#include "fraclift/verify.hpp"
#include "generators.hpp"

using namespace fraclift;

namespace {

const double kOrders[] = {0.5, 1.0, 1.5, -0.5, std::numbers::pi / 3};

LiftedSeq random_lifted(std::mt19937_64& rng) {
  VerifyConfig cfg;
  return shift(embed(random_coeffseq(rng, 0.0, cfg)), gen::uniform(rng, -3, 3));
}

} // namespace

TEST_CASE("Offset arithmetic is exact") {
  const Offset a(0.1), b(0.2), c(0.3);
  // 0.1 + 0.2 != 0.3 in doubles, and the rational sum keeps that difference.
  CHECK_FALSE(a + b == c);
  CHECK(a + b == b + a);
  CHECK((a + b) - b == a);
  CHECK(Offset(0.5) + Offset(0.5) == Offset::integer(1));
  CHECK(Offset(2.0).as_integer() == 2L);
  CHECK_FALSE(Offset(0.25).as_integer().has_value());
  CHECK(Offset(-1.5).value() == -1.5);
}

TEST_CASE("iota examples") {
  const LiftedSeq e = embed(CoeffSeq(0.0, {{1, 1.0}}));
  CHECK(e.offset() == Offset());
  CHECK(e.values().at(1) == 1.0);
  CHECK(embed(CoeffSeq(0.0)).is_zero());
  const CoeffSeq jet = lift_jet(GenSeries::monomial(0.0, 2.0));
  CHECK(restrict_to_integers(embed(jet)) == jet);
}

TEST_CASE("shift examples") {
  auto rng = gen::engine(30);
  const LiftedSeq rho = random_lifted(rng);
  CHECK(shift(shift(rho, 0.5), 0.5) == shift(rho, 1.0));
  CHECK(shift(rho, 0.0) == rho);
  CHECK(shift(shift(rho, 0.3), -0.3) == rho);
}

TEST_CASE("pointwise reading of a lifted sequence") {
  const LiftedSeq r = shift(embed(CoeffSeq(0.0, {{2, 5.0}})), 0.25);
  CHECK(r(2.0 - 0.25) == 5.0);
  CHECK(r(2.0) == 0.0);
  CHECK(r(1.75 + 1.0) == 0.0);
}

TEST_CASE("project examples") {
  const GenSeries x = GenSeries::monomial(0.0, 1.0);
  CHECK(project(embed(lift_jet(x))) == x);
  const GenSeries half = project(shift(embed(lift_jet(x)), 0.5));
  REQUIRE(half.size() == 1);
  CHECK(half.terms()[0].exponent == 0.5);
  CHECK(gen::rel_err(half.terms()[0].coef, 1.1283791670955126) <= 1e-14);
  CHECK(project(LiftedSeq(0.0, Offset(), {{-1, 5.0}})).empty());
}

TEST_CASE("lift_gen examples") {
  const GenSeries x = GenSeries::monomial(0.0, 1.0);
  CHECK(lift_series(x) == embed(lift_jet(x)));
  const LiftedSeq r = lift_series(GenSeries::monomial(0.0, -0.5));
  CHECK(r.offset() == Offset(0.5));
  REQUIRE(r.values().size() == 1);
  CHECK(gen::rel_err(r.values().at(0), 1.7724538509055160) <= 1e-14);
  CHECK_THROWS_AS(lift_series(GenSeries::monomial(0.0, -2.0)), DomainError);
}

TEST_CASE("project inverts lift_gen") {
  auto rng = gen::engine(31);
  for (int c = 0; c < 200; ++c) {
    const double phi = c % 4 == 0 ? 0.0 : gen::non_integer(rng, 0.0, 1.0, 1e-3);
    GenSeries f = gen::lattice_series(rng, gen::uniform(rng, -1, 1), phi, phi == 0.0 ? 0 : -4, 8);
    CHECK(max_relative_difference(project(lift_series(f)), f) <= 1e-12);
  }
}

TEST_CASE("shifts commute bit-identically") {
  auto rng = gen::engine(32);
  for (int c = 0; c < 500; ++c) {
    const LiftedSeq rho = random_lifted(rng);
    const double a = gen::uniform(rng, -5, 5), b = gen::uniform(rng, -5, 5);
    CHECK(shift(shift(rho, a), b) == shift(shift(rho, b), a));
  }
}

TEST_CASE("shift inverse, additivity and homogeneity") {
  auto rng = gen::engine(33);
  for (int c = 0; c < 200; ++c) {
    const LiftedSeq rho = random_lifted(rng);
    const LiftedSeq sig = shift(embed(random_coeffseq(rng, 0.0, VerifyConfig{})), rho.offset().value());
    const double a = gen::uniform(rng, -5, 5), s = gen::uniform(rng, -5, 5);
    CHECK(shift(shift(rho, a), -a) == rho);
    CHECK(same_function(shift(lifted_add(rho, sig), a), lifted_add(shift(rho, a), shift(sig, a))));
    CHECK(same_function(shift(lifted_scale(s, rho), a), lifted_scale(s, shift(rho, a))));
  }
}

TEST_CASE("embedding restricts and projects back") {
  auto rng = gen::engine(34);
  for (int c = 0; c < 200; ++c) {
    const CoeffSeq s = random_coeffseq(rng, 0.0, VerifyConfig{});
    CHECK(restrict_to_integers(embed(s)) == s);
    CHECK(max_mixed_difference(project(embed(s)), project(s)) == 0.0);
    const GenSeries f = random_jet(rng, 0.0, 16, 10.0);
    CHECK(restrict_to_integers(embed(lift_jet(f))) == lift_jet(f));
    CHECK(max_relative_difference(project(embed(lift_jet(f))), f) <= 1e-12);
  }
}

TEST_CASE("off-lattice restriction is zero") {
  const LiftedSeq r = shift(embed(CoeffSeq(0.0, {{0, 1.0}, {4, 2.0}})), 0.5);
  CHECK(restrict_to_integers(r).is_zero());
  CHECK(restrict_to_integers(shift(r, 0.5)) == CoeffSeq(0.0, {{-1, 1.0}, {3, 2.0}}));
}

TEST_CASE("diagram commutes on analytic jets") {
  auto rng = gen::engine(35);
  for (int c = 0; c < 50; ++c) {
    const GenSeries f = random_jet(rng, gen::uniform(rng, -1, 1), 16, 10.0);
    for (double k : kOrders) {
      const GenSeries lifted = project(shift(embed(lift_jet(f)), k));
      CHECK(max_relative_difference(lifted, rl_series(f, k)) <= 1e-12);
      CHECK(max_relative_difference(rl_series(project(shift(embed(lift_jet(f)), -k)), k), f) <= 1e-10);
    }
  }
}

TEST_CASE("kernel repair through the lifted space") {
  const GenSeries f = GenSeries::monomial(0.0, -0.5);
  CHECK(rl_series(f, 0.5).empty());
  CHECK(rl_series(rl_series(f, 0.5), 0.5).empty());
  const GenSeries lifted = project(shift(shift(lift_series(f), 0.5), 0.5));
  REQUIRE(lifted.size() == 1);
  CHECK(lifted.terms()[0].exponent == -1.5);
  CHECK(gen::rel_err(lifted.terms()[0].coef, -0.5) <= 1e-12);
  CHECK(max_relative_difference(lifted, rl_series(f, 1.0)) <= 1e-12);
}

TEST_CASE("lifted operations are linear") {
  auto rng = gen::engine(36);
  for (int c = 0; c < 100; ++c) {
    const CoeffSeq s = random_coeffseq(rng, 0.0, VerifyConfig{});
    const CoeffSeq t = random_coeffseq(rng, 0.0, VerifyConfig{});
    const double k = gen::uniform(rng, -2, 2), m = gen::uniform(rng, -10, 10);
    CHECK(embed(seq_add(s, t)) == lifted_add(embed(s), embed(t)));
    const LiftedSeq sum = lifted_add(shift(embed(s), k), shift(embed(t), k));
    CHECK(max_mixed_difference(project(sum), project(shift(embed(s), k)) + project(shift(embed(t), k))) <= 1e-12);
    CHECK(max_mixed_difference(project(lifted_scale(m, shift(embed(s), k))), m * project(shift(embed(s), k))) <= 1e-12);
  }
}

TEST_CASE("adding lifted sequences on different lattices fails") {
  const LiftedSeq a = embed(CoeffSeq(0.0, {{0, 1.0}}));
  CHECK_THROWS_AS(lifted_add(a, shift(a, 0.5)), LatticeError);
  CHECK_THROWS_AS(lifted_add(a, embed(CoeffSeq(1.0, {{0, 1.0}}))), BasepointMismatch);
  // Offsets differing by an integer are the same lattice.
  CHECK_NOTHROW(lifted_add(a, shift(a, 2.0)));
}
