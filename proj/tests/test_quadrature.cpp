#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fraclift/errors.hpp"
#include "fraclift/quadrature.hpp"

using namespace fraclift;

TEST_CASE("smooth integrands") {
  const auto r = integrate_adaptive([](double t) { return std::exp(t); }, 0.0, 1.0, 1e-12, 1e-12, 100);
  CHECK(std::abs(r.value - (std::exp(1.0) - 1.0)) <= 1e-13);
  CHECK(r.error <= 1e-12);
  const auto s = integrate_adaptive([](double t) { return std::sin(t); }, 0.0, std::numbers::pi, 1e-12, 1e-12, 100);
  CHECK(std::abs(s.value - 2.0) <= 1e-13);
}

TEST_CASE("integrable endpoint singularity") {
  // int_0^1 t^(-1/2) dt = 2, never sampled at t = 0
  const auto r = integrate_adaptive([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, 1e-9, 1e-9, 2000);
  CHECK(std::abs(r.value - 2.0) <= 1e-8);
  CHECK(r.subdivisions > 1);
}

TEST_CASE("reversed and empty intervals") {
  const auto r = integrate_adaptive([](double t) { return t; }, 1.0, 0.0, 1e-12, 1e-12, 10);
  CHECK(std::abs(r.value + 0.5) <= 1e-15);
  CHECK(integrate_adaptive([](double t) { return t; }, 2.0, 2.0, 1e-12, 1e-12, 10).value == 0.0);
}

TEST_CASE("failures") {
  CHECK_THROWS_AS(integrate_adaptive([](double) { return NAN; }, 0.0, 1.0, 1e-9, 1e-9, 10), QuadratureError);
  CHECK_THROWS_AS(integrate_adaptive([](double t) { return std::sin(1.0 / t) / t; }, 0.0, 1.0, 1e-14, 1e-14, 16),
                  QuadratureError);
}
