#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "hermbound/hermite.hpp"
#include "hermbound/quadrature.hpp"
#include "oracles.hpp"

using namespace hermbound;
namespace hh = hermbound::hermite;

namespace {
const double kPiQuarter = std::pow(std::numbers::pi, -0.25);
}

TEST_CASE("values at the origin", "[hermite]") {
  auto h = hh::eval_all(2, 0.0);
  CHECK(h[0] == Catch::Approx(kPiQuarter).epsilon(1e-14));
  CHECK(h[0] == Catch::Approx(0.7511255445).epsilon(1e-9));
  CHECK(h[1] == 0.0);
  CHECK(h[2] == Catch::Approx(-kPiQuarter / std::numbers::sqrt2).epsilon(1e-14));
  CHECK(h[2] == Catch::Approx(-0.5311259661).epsilon(1e-9));
}

TEST_CASE("recurrence matches the derivative-ladder form for k <= 10", "[hermite][property]") {
  for (double t : {-3.7, -1.0, -0.21, 0.0, 0.4, 1.3, 2.9}) {
    auto h = hh::eval_all(10, t);
    for (int k = 0; k <= 10; ++k)
      CHECK(h[k] == Catch::Approx(oracles::hermite_rodrigues(k, t)).margin(1e-10));
  }
}

TEST_CASE("graceful underflow far outside the support", "[hermite]") {
  auto h = hh::eval_all(20, 60.0);
  for (double v : h) {
    CHECK(std::isfinite(v));
    CHECK(std::abs(v) < 1e-300);
  }
}

TEST_CASE("center values", "[hermite]") {
  auto z0 = hh::values_at_zero(0);
  CHECK(z0.h_even == Catch::Approx(kPiQuarter).epsilon(1e-14));
  CHECK(z0.dh_odd == Catch::Approx(std::numbers::sqrt2 * kPiQuarter).epsilon(1e-14));

  auto z1 = hh::values_at_zero(1);
  CHECK(z1.h_even == Catch::Approx(-kPiQuarter / std::numbers::sqrt2).epsilon(1e-14));
  // second component against a central difference of h_3
  const double step = 1e-6;
  const double dh3 =
      (hh::eval_all(3, step)[3] - hh::eval_all(3, -step)[3]) / (2.0 * step);
  CHECK(z1.dh_odd == Catch::Approx(dh3).epsilon(1e-8));

  // sign pattern and agreement with eval_all
  for (int n = 0; n <= 20; ++n) {
    auto z = hh::values_at_zero(n);
    const double expected_sign = (n % 2 == 0) ? 1.0 : -1.0;
    CHECK(z.h_even * expected_sign > 0.0);
    CHECK(z.h_even == Catch::Approx(hh::eval_all(2 * n, 0.0)[2 * n]).epsilon(1e-12));
  }

  // no overflow at factorial-hostile sizes
  auto big = hh::values_at_zero(5000);
  CHECK(std::isfinite(big.h_even));
  CHECK(std::isfinite(big.dh_odd));
}

TEST_CASE("kernel against the direct sum", "[hermite]") {
  // diagonal
  auto diag = hh::cd_kernel(2, 0.3, 0.3);
  auto h = hh::eval_all(4, 0.3);
  double sum = 0.0;
  for (int k = 0; k <= 4; ++k) sum += h[k] * h[k];
  CHECK(hh::cd_normalization(2) * diag.value == Catch::Approx(sum).epsilon(1e-13));

  // off-diagonal at (0.3, -0.7)
  auto kv = hh::cd_kernel(2, 0.3, -0.7);
  auto ha = hh::eval_all(4, -0.7);
  double cross = 0.0;
  for (int k = 0; k <= 4; ++k) cross += h[k] * ha[k];
  CHECK(std::abs(hh::cd_normalization(2) * kv.value - cross) < 1e-12);

  // n = 0: the quotient collapses to sqrt(2) h_0(x) h_0(alpha), so the
  // normalized kernel is the single-term sum.
  for (double x : {-1.1, 0.2, 2.0})
    for (double a : {-0.4, 0.9}) {
      auto k0 = hh::cd_kernel(0, x, a);
      auto hx = hh::eval_all(1, x);
      auto hn = hh::eval_all(1, a);
      CHECK(hh::cd_normalization(0) * k0.value ==
            Catch::Approx(hx[0] * hn[0]).margin(1e-13));
    }
}

TEST_CASE("kernel identity at random points", "[hermite][property]") {
  auto rng = oracles::rng(77001u);
  std::uniform_real_distribution<double> pt(-5.0, 5.0);
  for (int n = 0; n <= 10; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const double x = pt(rng), a = pt(rng);
      auto kv = hh::cd_kernel(n, x, a);
      auto hx = hh::eval_all(2 * n, x);
      auto hn = hh::eval_all(2 * n, a);
      double sum = 0.0;
      for (int k = 0; k <= 2 * n; ++k) sum += hx[k] * hn[k];
      CHECK(std::abs(hh::cd_normalization(n) * kv.value - sum) <= 1e-10);
    }
  }
}

TEST_CASE("orthonormality under quadrature", "[hermite][property]") {
  // Gram matrix for j, k <= 40 accumulated in one pass over a fixed fine grid,
  // plus the tail contribution.
  const int K = 40;
  const double R = std::sqrt(2.0 * K + 3.0) + 6.0;
  const int depth = min_subdivision_depth(std::sqrt(2.0 * K + 3.0), -R, R);
  const auto& rule = gauss_legendre_rule(32);
  const long panels = 1L << depth;
  std::vector<double> gram((K + 1) * (K + 1), 0.0);
  std::vector<double> h(K + 1);
  for (long p = 0; p < panels; ++p) {
    const double a = -R + 2.0 * R * p / panels;
    const double b = -R + 2.0 * R * (p + 1) / panels;
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    for (int i = 0; i < 32; ++i) {
      const double t = mid + hw * rule.node[i];
      const double w = hw * rule.weight[i];
      hh::eval_all(K, t, h);
      for (int j = 0; j <= K; ++j)
        for (int k = j; k <= K; ++k) gram[j * (K + 1) + k] += w * h[j] * h[k];
    }
  }
  for (int j = 0; j <= K; ++j) {
    for (int k = j; k <= K; ++k) {
      auto tail = integrate_tail(
          [&](double t) {
            auto v = hh::eval_all(K, t);
            return v[j] * v[k];
          },
          R);
      const double inner = gram[j * (K + 1) + k] + tail.value;
      const double expected = (j == k) ? 1.0 : 0.0;
      CHECK(std::abs(inner - expected) <= 1e-9);
    }
  }
}
