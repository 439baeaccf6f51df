#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "hermbound/sansone.hpp"
#include "oracles.hpp"

using namespace hermbound;
using namespace hermbound::sansone;

namespace {

double odd_remainder_bound(int n, double y) {
  return y * y / (std::sqrt(std::numbers::pi) * std::pow(n, 0.25)) *
             (std::pow(y, 4) / 18.0 + 1.0) +
         4.0 / 187.0 * std::pow(y, 8.5) / std::sqrt(4.0 * n + 1.0);
}

double even_remainder_bound(int n, double y) {
  return y * y / (std::sqrt(std::numbers::pi) * std::pow(n, 0.25)) *
             (std::pow(y, 4) / 18.0 + 1.0) +
         4.0 / 187.0 * std::pow(y, 8.5) / std::sqrt(4.0 * n + 3.0);
}

}  // namespace

TEST_CASE("frequency splitting around the band edge", "[sansone][property]") {
  for (int n : {1, 2, 5, 37, 1000, 250000, 1000000}) {
    const auto p = make_params(n, 1.0);
    const double lam = std::sqrt(4.0 * n + 1.0), mu = std::sqrt(4.0 * n + 3.0);
    CHECK(std::abs((mu - lam) - 1.0 / p.N) <= 1e-12);
    CHECK(std::abs(0.5 * (mu + lam) - p.N) <= 1e-12);
  }
}

TEST_CASE("remainders vanish at the origin", "[sansone]") {
  auto r = remainders(make_params(7, 2.0), 0.0);
  CHECK(r.t_even == Catch::Approx(0.0).margin(1e-12));
  CHECK(r.t_odd == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("remainders obey their majorants", "[sansone][property]") {
  // spot values first
  {
    auto r = remainders(make_params(5, 2.0), 1.0);
    CHECK(std::abs(r.t_odd) < odd_remainder_bound(5, 1.0));
    auto r2 = remainders(make_params(5, 2.0), 2.0);
    CHECK(std::abs(r2.t_even) < even_remainder_bound(5, 2.0));
  }
  for (int n : {2, 5, 10, 50}) {
    const auto p = make_params(n, 3.0);
    for (int i = 0; i < 200; ++i) {
      const double y = 3.0 * i / 199.0;
      auto r = remainders(p, y);
      CHECK(std::abs(r.t_even) < even_remainder_bound(n, y) + 1e-10);
      CHECK(std::abs(r.t_odd) < odd_remainder_bound(n, y) + 1e-10);
    }
  }
}

TEST_CASE("correction terms", "[sansone]") {
  const auto p = make_params(6, 2.0);

  // first correction vanishes on the diagonal
  for (double x : {-1.5, 0.0, 0.3, 1.9})
    CHECK(m_term(p, 1, x, x).value == Catch::Approx(0.0).margin(1e-15));

  // fourth correction is antisymmetric
  auto rng = oracles::rng(424242u);
  std::uniform_real_distribution<double> pt(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double x = pt(rng), a = pt(rng);
    CHECK(m_term(p, 4, x, a).value == Catch::Approx(-m_term(p, 4, a, x).value).margin(1e-15));
  }

  CHECK_THROWS_AS(m_term(p, 0, 0.0, 0.0), BadIndexError);
  CHECK_THROWS_AS(m_term(p, 6, 0.0, 0.0), BadIndexError);
}

TEST_CASE("kernel decomposition ratio", "[sansone][property]") {
  auto rng = oracles::rng(31415u);
  std::uniform_real_distribution<double> pt(-3.0, 3.0);
  for (int n : {5, 10, 25}) {
    const auto p = make_params(n, 3.0);
    const double K = 2.0 * n;
    const double half_width = 1.0 / (2.0 * K) + 5e-3;
    int kept = 0, ok = 0;
    for (int i = 0; i < 400; ++i) {
      const double x = pt(rng), a = pt(rng);
      auto s = decomposition_sample(p, x, a);
      if (std::abs(s.denominator) <= 0.1) continue;
      ++kept;
      if (std::abs(s.ratio - 1.0) <= half_width) ++ok;
    }
    INFO("n = " << n << ", kept " << kept);
    CHECK(kept > 100);
    CHECK(ok >= static_cast<int>(0.95 * kept));
  }
}

TEST_CASE("flipped fifth-term bracket breaks the decomposition", "[sansone]") {
  // negative control for the residual diagnostic: the opposite sign
  // convention must fail the ratio test decisively
  auto rng = oracles::rng(31415u);
  std::uniform_real_distribution<double> pt(-3.0, 3.0);
  const auto p = make_params(5, 3.0);
  int kept = 0, ok = 0;
  for (int i = 0; i < 400; ++i) {
    const double x = pt(rng), a = pt(rng);
    auto s = decomposition_sample(p, x, a, true);
    if (std::abs(s.denominator) <= 0.1) continue;
    ++kept;
    if (std::abs(s.ratio - 1.0) <= 1.0 / 20.0 + 5e-3) ++ok;
  }
  CHECK(kept > 100);
  CHECK(ok < static_cast<int>(0.95 * kept));
}

TEST_CASE("direct correction norms", "[sansone]") {
  const auto p = make_params(5, 2.0);
  auto zero = black_box([](double) { return 0.0; }, 3.0);
  auto z = direct_sansone(zero, p);
  for (double v : z) CHECK(v == 0.0);

  auto gauss = to_test_function(standard_normal());
  auto one = direct_sansone(gauss, p);
  GaussianMixture doubled({{2.0, 1.0, 0.0}});
  auto two = direct_sansone(to_test_function(doubled), p);
  for (int k = 0; k < 5; ++k) {
    CHECK(one[k] >= 0.0);
    CHECK(two[k] == Catch::Approx(2.0 * one[k]).epsilon(1e-12));
  }

  CHECK_THROWS_AS(direct_sansone(gauss, make_params(51, 2.0)), std::invalid_argument);
}
