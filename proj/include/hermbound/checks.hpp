#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hermbound/bandlimit.hpp"
#include "hermbound/bound.hpp"
#include "hermbound/functions.hpp"
#include "hermbound/hermite.hpp"
#include "hermbound/quadrature.hpp"
#include "hermbound/sansone.hpp"
#include "hermbound/series.hpp"

namespace hermbound::checks {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline TestFunction hermite_black_box(int k) {
  return black_box([k](double t) { return hermite::eval_all(k, t)[k]; },
                   std::sqrt(2.0 * k + 3.0) + 8.0, std::sqrt(2.0 * k + 3.0));
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

}  // namespace detail

/// <h_j, h_k> = delta_jk within 1e-9 for j, k <= 40.
inline CheckResult check_orthonormality() {
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
      hermite::eval_all(K, t, h);
      for (int j = 0; j <= K; ++j)
        for (int k = j; k <= K; ++k) gram[j * (K + 1) + k] += w * h[j] * h[k];
    }
  }
  double worst = 0.0;
  for (int j = 0; j <= K; ++j)
    for (int k = j; k <= K; ++k) {
      auto tail = integrate_tail(
          [&](double t) {
            auto v = hermite::eval_all(K, t);
            return v[j] * v[k];
          },
          R);
      const double inner = gram[j * (K + 1) + k] + tail.value;
      worst = std::max(worst, std::abs(inner - (j == k ? 1.0 : 0.0)));
    }
  return {"orthonormality", worst <= 1e-9,
          "max |<h_j,h_k> - delta| = " + detail::fmt(worst) + " (j,k <= 40, tol 1e-9)"};
}

/// h_k^ = (-i)^k h_k within 1e-8 for k <= 8.
inline CheckResult check_fourier_eigenfunctions() {
  const std::complex<double> mi(0.0, -1.0);
  double worst = 0.0;
  for (int k = 0; k <= 8; ++k) {
    auto f = detail::hermite_black_box(k);
    const std::complex<double> eig = std::pow(mi, k);
    for (double w : {-5.0, -2.5, -0.75, 0.0, 1.25, 3.0, 5.0}) {
      const auto got = fourier_transform(f, w);
      worst = std::max(worst, std::abs(got - eig * hermite::eval_all(k, w)[k]));
    }
  }
  return {"fourier-eigenfunction", worst <= 1e-8,
          "max |h_k^ - (-i)^k h_k| = " + detail::fmt(worst) + " (k <= 8, tol 1e-8)"};
}

/// Normalized kernel equals the direct sum within 1e-10, n <= 10, and the
/// sweep finishes inside five seconds.
inline CheckResult check_cd_kernel() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(77001u);
  std::uniform_real_distribution<double> pt(-5.0, 5.0);
  double worst = 0.0;
  for (int n = 0; n <= 10; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const double x = pt(rng), a = pt(rng);
      const auto kv = hermite::cd_kernel(n, x, a);
      auto hx = hermite::eval_all(2 * n, x);
      auto ha = hermite::eval_all(2 * n, a);
      double sum = 0.0;
      for (int k = 0; k <= 2 * n; ++k) sum += hx[k] * ha[k];
      worst = std::max(worst, std::abs(hermite::cd_normalization(n) * kv.value - sum));
    }
  }
  const double elapsed = detail::seconds_since(t0);
  return {"cd-kernel", worst <= 1e-10 && elapsed < 5.0,
          "max deviation = " + detail::fmt(worst) + " (tol 1e-10), " + detail::fmt(elapsed) +
              " s"};
}

/// || f - F_N f_T || <= tail_t + tail_omega across the combo list.
inline CheckResult check_lemma2(bool full) {
  auto tri = to_test_function(trimodal());
  auto gauss = to_test_function(standard_normal());
  auto two = to_test_function(GaussianMixture({{1.0, 2.0, -0.5}, {0.5, 4.0, 1.0}}));
  struct Combo {
    TestFunction f;
    double T, N;
  };
  std::vector<Combo> combos = {
      {gauss, 0.5, 1.0}, {gauss, 1.0, 2.0}, {gauss, 2.0, 0.5},  {gauss, 8.0, 8.0},
      {tri, 2.0, 10.0},  {tri, 1.0, 3.0},  {two, 2.0, 8.0},     {two, 2.0, 5.0},
  };
  if (full) {
    combos.push_back({tri, 3.0, band_edge(500)});
    combos.push_back({detail::hermite_black_box(0), 8.0, 8.0});
    combos.push_back({detail::hermite_black_box(2), 6.0, 6.0});
  }
  double worst = -1.0;
  for (const auto& c : combos) {
    auto r = lemma2_residual(c.f, {c.N, c.T});
    worst = std::max(worst, r.lhs - r.rhs);
  }
  std::ostringstream os;
  os << combos.size() << " combos, max(lhs - rhs) = " << detail::fmt(worst)
     << " (must be <= 1e-8)";
  return {"lemma2", worst <= 1e-8, os.str()};
}

/// |T(2n, y)|, |T(2n+1, y)| below their majorants on y in [0, 3].
inline CheckResult check_remainder_bounds() {
  double worst_excess = -1.0;
  for (int n : {2, 5, 10, 50}) {
    const auto p = sansone::make_params(n, 3.0);
    for (int i = 0; i < 200; ++i) {
      const double y = 3.0 * i / 199.0;
      auto r = sansone::remainders(p, y);
      const double base = y * y / (std::sqrt(std::numbers::pi) * std::pow(n, 0.25)) *
                          (std::pow(y, 4) / 18.0 + 1.0);
      const double even_bound =
          base + 4.0 / 187.0 * std::pow(y, 8.5) / std::sqrt(4.0 * n + 3.0);
      const double odd_bound =
          base + 4.0 / 187.0 * std::pow(y, 8.5) / std::sqrt(4.0 * n + 1.0);
      worst_excess = std::max({worst_excess, std::abs(r.t_even) - even_bound - 1e-10,
                               std::abs(r.t_odd) - odd_bound - 1e-10});
    }
  }
  return {"remainder-bounds", worst_excess <= 0.0,
          "max excess over the majorant = " + detail::fmt(worst_excess)};
}

/// The kernel/decomposition ratio sits in 1 +- (1/(2K) + 5e-3) on at least
/// 95% of samples with |denominator| > 0.1. On systematic failure, the
/// opposite sign convention for the fifth term is evaluated and reported.
inline CheckResult check_decomposition_residual() {
  std::mt19937 rng(31415u);
  std::uniform_real_distribution<double> pt(-3.0, 3.0);
  std::ostringstream os;
  bool pass = true;
  for (int n : {5, 10, 25}) {
    const auto p = sansone::make_params(n, 3.0);
    const double half_width = 1.0 / (4.0 * n) + 5e-3;
    int kept = 0, ok = 0, ok_flipped = 0;
    for (int i = 0; i < 400; ++i) {
      const double x = pt(rng), a = pt(rng);
      auto s = sansone::decomposition_sample(p, x, a);
      if (std::abs(s.denominator) <= 0.1) continue;
      ++kept;
      if (std::abs(s.ratio - 1.0) <= half_width) ++ok;
      auto sf = sansone::decomposition_sample(p, x, a, true);
      if (std::abs(sf.ratio - 1.0) <= half_width) ++ok_flipped;
    }
    const double rate = kept ? static_cast<double>(ok) / kept : 0.0;
    os << "n=" << n << ": " << ok << "/" << kept;
    if (rate < 0.95) {
      pass = false;
      // sign-flip diagnostic: report, never adopt
      os << " FAILED (flipped-bracket variant passes " << ok_flipped << "/" << kept << ")";
    }
    os << "  ";
  }
  return {"decomposition-residual", pass, os.str()};
}

/// Sum of the measured correction norms below the tabulated estimate.
inline CheckResult check_dominance(bool full, bool force_large_n = false) {
  auto gauss = to_test_function(standard_normal());
  auto tri = to_test_function(trimodal());
  std::vector<int> ns = full ? std::vector<int>{2, 5, 10, 25} : std::vector<int>{2, 5};
  double worst_margin = 1e300;
  bool pass = true;
  std::ostringstream os;
  for (int n : ns)
    for (double T : {2.0, 3.0})
      for (const auto* f : {&gauss, &tri}) {
        const auto p = sansone::make_params(n, T);
        auto direct = sansone::direct_sansone(*f, p, {}, force_large_n);
        auto ledger = bound::moment_ledger(*f, n, T, p.N);
        auto table = bound::coefficient_table(n, p.N, T);
        const double upper = bound::sansone_upper(ledger, table);
        double sum = 0.0;
        for (double v : direct) sum += v;
        worst_margin = std::min(worst_margin, upper - sum);
        if (sum > upper) pass = false;
      }
  os << ns.size() * 4 << " cases, min(estimate - direct sum) = " << detail::fmt(worst_margin);
  return {"dominance", pass, os.str()};
}

/// Measured RMS below the assembled bound over the whole matrix.
inline CheckResult check_theorem1_matrix(bool full) {
  auto gauss = to_test_function(standard_normal());
  auto tri = to_test_function(trimodal());
  auto two = to_test_function(GaussianMixture({{1.0, 2.0, -0.5}, {0.5, 4.0, 1.0}}));
  std::vector<int> ks = full ? std::vector<int>{4, 20, 100, 500} : std::vector<int>{4, 20, 100};
  bool pass = true;
  double worst = -1e300;
  int cells = 0;
  for (const auto* f : {&gauss, &tri, &two})
    for (int K : ks) {
      auto s = coefficients(*f, K);
      for (double T : {2.0, 3.0}) {
        auto b = bound::theorem1_bound(*f, K, T);
        auto e = measure_error(*f, s, T, 801);
        ++cells;
        worst = std::max(worst, e.rms - b.total);
        if (e.rms > b.total + 1e-8) pass = false;
      }
    }
  std::ostringstream os;
  os << cells << " cells, max(rms - bound) = " << detail::fmt(worst) << " (must be <= 1e-8)";
  return {"theorem1-matrix", pass, os.str()};
}

/// Exact linearity of the ledger and the assembled bound under f -> lambda f.
inline CheckResult check_homogeneity() {
  auto base = trimodal();
  double worst = 0.0;
  for (double lambda : {2.0, 0.5}) {
    std::vector<MixtureComponent> scaled;
    for (auto c : base.components()) {
      c.weight *= lambda;
      scaled.push_back(c);
    }
    auto r1 = bound::theorem1_bound_detailed(to_test_function(base), 8, 2.0);
    auto r2 = bound::theorem1_bound_detailed(to_test_function(GaussianMixture(scaled)), 8, 2.0);
    for (int i = 0; i < bound::kFunctionalCount; ++i) {
      const auto id = static_cast<bound::Functional>(i);
      const double a = bound::ledger_value(r1.ledger, id);
      const double b = bound::ledger_value(r2.ledger, id);
      if (a != 0.0) worst = std::max(worst, std::abs(b / (lambda * a) - 1.0));
    }
    worst = std::max(worst, std::abs(r2.sansone_sum / (lambda * r1.sansone_sum) - 1.0));
    worst = std::max(worst, std::abs(r2.breakdown.total / (lambda * r1.breakdown.total) - 1.0));
  }
  return {"homogeneity", worst <= 1e-12,
          "max relative defect = " + detail::fmt(worst) + " (tol 1e-12)"};
}

inline std::vector<CheckResult> run_all(bool full, const std::string& only = "",
                                        bool force_large_n = false) {
  std::vector<CheckResult> out;
  auto want = [&](const char* name) { return only.empty() || only == name; };
  if (want("orthonormality")) out.push_back(check_orthonormality());
  if (want("fourier-eigenfunction")) out.push_back(check_fourier_eigenfunctions());
  if (want("cd-kernel")) out.push_back(check_cd_kernel());
  if (want("lemma2")) out.push_back(check_lemma2(full));
  if (want("remainder-bounds")) out.push_back(check_remainder_bounds());
  if (want("decomposition-residual")) out.push_back(check_decomposition_residual());
  if (want("dominance")) out.push_back(check_dominance(full, force_large_n));
  if (want("theorem1-matrix")) out.push_back(check_theorem1_matrix(full));
  if (want("homogeneity")) out.push_back(check_homogeneity());
  return out;
}

// ---------------------------------------------------------------------------
// Trimodal reference reproduction (K = 500, T = 3).

struct ReproduceRow {
  std::string quantity;
  double reference = 0.0;
  double computed = 0.0;
  double rel_diff = 0.0;
  bool pass = false;
};

struct ReproduceReport {
  std::vector<ReproduceRow> rows;
  double N = 0.0;
  double term_fN_window_variant = 0.0;
  bool all_pass = false;
};

/// Compare the assembled bound and measured sup error against the built-in
/// reference values for the trimodal density at K = 500, T = 3. The five
/// bound rows pass within the given relative tolerance; the sup row carries a
/// fixed 1.5x slack for grid and quadrature differences.
inline ReproduceReport run_reproduce(double tolerance = 0.10, int grid_points = 4001,
                                     const QuadratureSpec& spec = {}) {
  auto tri = to_test_function(trimodal());
  const int K = 500;
  const double T = 3.0;
  auto r = bound::theorem1_bound_detailed(tri, K, T, spec);
  auto s = coefficients(tri, K, spec);
  auto e = measure_error(tri, s, T, grid_points, spec);

  ReproduceReport report;
  report.N = r.breakdown.N;
  report.term_fN_window_variant =
      (1.0 / K) * bound::window_l2(tri, T, spec) / std::sqrt(2.0 * T);
  auto add = [&](const std::string& name, double ref, double got, double tol) {
    ReproduceRow row{name, ref, got, (got - ref) / ref, false};
    row.pass = std::abs(row.rel_diff) <= tol;
    report.rows.push_back(row);
  };
  add("term_tail_t", 0.00051, r.breakdown.term_tail_t, tolerance);
  add("term_tail_omega", 0.00088, r.breakdown.term_tail_omega, tolerance);
  add("term_fN", 0.00062, r.breakdown.term_fN, tolerance);
  add("term_sansone", 0.02161, r.breakdown.term_sansone, tolerance);
  add("total", 0.02361, r.breakdown.total, tolerance);
  {
    ReproduceRow row{"sup_error", 0.0025, e.sup, (e.sup - 0.0025) / 0.0025, false};
    row.pass = e.sup <= 0.0025 * 1.5;
    report.rows.push_back(row);
  }
  report.all_pass = true;
  for (const auto& row : report.rows) report.all_pass = report.all_pass && row.pass;
  return report;
}

}  // namespace hermbound::checks
