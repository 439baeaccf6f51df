#include <catch2/catch_amalgamated.hpp>
#include <limits>

#include <cmath>
#include <numbers>
#include <random>

#include "hermbound/quadrature.hpp"
#include "oracles.hpp"

using namespace hermbound;
using oracles::phi;

TEST_CASE("polynomial and symmetric integrals", "[quadrature]") {
  auto r1 = integrate([](double t) { return t; }, 0.0, 1.0);
  CHECK(r1.value == Catch::Approx(0.5).margin(1e-14));
  CHECK(r1.converged);

  auto r2 = integrate([](double t) { return std::sin(t); }, -1.0, 1.0);
  CHECK(std::abs(r2.value) < 1e-14);

  // erf(3/sqrt(2))
  const double expected = std::erf(3.0 / std::sqrt(2.0));
  auto r3 = integrate(phi, -3.0, 3.0);
  CHECK(r3.value == Catch::Approx(expected).epsilon(1e-12));
  CHECK(r3.value == Catch::Approx(0.9973002039).epsilon(1e-9));
}

TEST_CASE("tail integrals of the normal density", "[quadrature]") {
  auto r = integrate_tail(phi, 3.0);
  CHECK(r.value == Catch::Approx(std::erfc(3.0 / std::sqrt(2.0))).epsilon(1e-11));
  CHECK(r.value == Catch::Approx(0.0026997961).epsilon(1e-7));

  auto whole = integrate_tail(phi, 0.0);
  CHECK(whole.value == Catch::Approx(1.0).epsilon(1e-12));

  // phi^2 = e^{-t^2}/(2 pi); tail has the closed form erfc(3)/(2 sqrt(pi)).
  auto sq = integrate_tail([](double t) { return phi(t) * phi(t); }, 3.0);
  const double closed = std::erfc(3.0) / (2.0 * std::sqrt(std::numbers::pi));
  CHECK(sq.value == Catch::Approx(closed).epsilon(1e-10));
  const double brute = oracles::simpson_tail([](double t) { return phi(t) * phi(t); }, 3.0);
  CHECK(sq.value == Catch::Approx(brute).margin(1e-12));
}

TEST_CASE("linearity on random polynomials", "[quadrature][property]") {
  auto rng = oracles::rng(20240811u);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> cf(9), cg(9);
    for (auto& c : cf) c = coeff(rng);
    for (auto& c : cg) c = coeff(rng);
    auto evalp = [](const std::vector<double>& c, double t) {
      double v = 0.0;
      for (std::size_t j = c.size(); j-- > 0;) v = v * t + c[j];
      return v;
    };
    auto f = [&](double t) { return evalp(cf, t); };
    auto g = [&](double t) { return evalp(cg, t); };
    const double alpha = coeff(rng), beta = coeff(rng);
    auto combo = [&](double t) { return alpha * f(t) + beta * g(t); };
    const double lhs = integrate(combo, -1.5, 2.0).value;
    const double rhs = alpha * integrate(f, -1.5, 2.0).value + beta * integrate(g, -1.5, 2.0).value;
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    CHECK(std::abs(lhs - rhs) <= 10.0 * 1e-10 * scale);
  }
}

TEST_CASE("single panel is exact to degree 2*order - 1", "[quadrature][property]") {
  for (int order : {4, 8, 16, 32}) {
    const int deg = 2 * order - 1;
    auto mono = [deg](double t) { return std::pow(t, deg) + std::pow(t, deg - 1); };
    // exact integral of t^d over [0,1] is 1/(d+1)
    const double exact = 1.0 / (deg + 1.0) + 1.0 / deg;
    CHECK(panel_integrate(mono, 0.0, 1.0, order) == Catch::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("tail consistency for a Gaussian", "[quadrature][property]") {
  auto f = [](double t) { return std::exp(-0.3 * t * t) * (1.0 + 0.2 * t * t); };
  for (double T : {0.5, 1.0, 2.5}) {
    const double split = integrate_tail(f, T).value + integrate(f, -T, T).value;
    const double whole = integrate_tail(f, 0.0).value;
    CHECK(split == Catch::Approx(whole).epsilon(1e-10));
  }
}

TEST_CASE("non-finite integrand is rejected", "[quadrature]") {
  auto inf_left = [](double t) { return t < 0.5 ? std::numeric_limits<double>::infinity() : 1.0; };
  CHECK_THROWS_AS(integrate(inf_left, 0.0, 1.0), NonFiniteError);
  CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, 0.0, 1.0), NonFiniteError);
}

TEST_CASE("budget exhaustion is flagged, not thrown", "[quadrature]") {
  QuadratureSpec spec;
  spec.panel_order = 2;
  spec.rel_tol = 1e-15;
  spec.abs_tol = 1e-300;
  spec.max_subdivisions = 8;
  auto r = integrate([](double t) { return std::sqrt(std::abs(t)); }, -1.0, 1.0, spec);
  CHECK_FALSE(r.converged);
  CHECK(r.subdivisions_used <= spec.max_subdivisions);
  CHECK(r.value == Catch::Approx(4.0 / 3.0).margin(1e-2));
}

TEST_CASE("oscillation hint drives forced depth", "[quadrature]") {
  CHECK(min_subdivision_depth(0.0, -1.0, 1.0) == 0);
  // 135 periods * 8 panels ~ 1081 -> 2^11
  const int d = min_subdivision_depth(std::sqrt(1003.0), -13.2, 13.2);
  CHECK((1 << d) >= 1064);

  // A pure oscillation integrates to ~0; without the hint the whole-interval
  // estimate is misleading, with it the result is trustworthy.
  const double w = 40.0;
  auto f = [w](double t) { return std::cos(w * t); };
  const int depth = min_subdivision_depth(w, 0.0, 10.0);
  auto r = integrate(f, 0.0, 10.0, {}, depth);
  CHECK(r.value == Catch::Approx(std::sin(w * 10.0) / w).margin(1e-11));
  CHECK(r.converged);
}

TEST_CASE("determinism", "[quadrature]") {
  auto f = [](double t) { return std::exp(-t * t) * std::cos(7.0 * t); };
  auto a = integrate(f, -4.0, 4.0);
  auto b = integrate(f, -4.0, 4.0);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.subdivisions_used == b.subdivisions_used);
}
