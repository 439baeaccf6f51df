#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "hermbound/bandlimit.hpp"
#include "hermbound/errors.hpp"
#include "hermbound/functions.hpp"
#include "hermbound/quadrature.hpp"

namespace hermbound::bound {

/// Weight controlling the remainder functionals:
///   omega(a) = a^2 (a^4/18 + 1) / sqrt(pi) + (2/187) |a|^{17/2} / n^{1/4}.
inline double omega_weight(double alpha, int n) {
  const double a2 = alpha * alpha;
  return a2 * (a2 * a2 / 18.0 + 1.0) / std::sqrt(std::numbers::pi) +
         2.0 / 187.0 * std::pow(std::abs(alpha), 8.5) / std::pow(static_cast<double>(n), 0.25);
}

/// Every functional of f that the coefficient table multiplies. All integrals
/// run over [-T, T] except the two tails.
struct MomentLedger {
  int n = 0;
  double T = 0.0;
  double N = 0.0;
  std::array<double, 8> abs_moment{};        // int |f(a) a^j| da, j = 0..7
  std::array<double, 4> deriv_abs_moment{};  // int |f'(a) a^j| da, j = 0..3
  double l2_alpha1 = 0.0, l2_alpha2 = 0.0, l2_alpha3 = 0.0;  // [int |f a^j|^2]^{1/2}
  double l2_fN = 0.0;         // [int f_N^2]^{1/2}
  double l2_fN_alpha4 = 0.0;  // [int |f_N a^4|^2]^{1/2}
  double l2_f_omega = 0.0;    // [int |f omega|^2]^{1/2}
  double l2_fN_omega = 0.0;   // [int |f_N omega|^2]^{1/2}
  double boundary = 0.0;      // |f(-T)| + |f(T)|
  double tail_t = 0.0;        // [int_{|a|>T} f^2]^{1/2}
  double tail_omega = 0.0;    // [int_{|w|>N} |f^|^2]^{1/2}
};

enum class Functional : int {
  abs_moment_0 = 0,
  abs_moment_1,
  abs_moment_2,
  abs_moment_3,
  abs_moment_4,
  abs_moment_5,
  abs_moment_6,
  abs_moment_7,
  deriv_abs_moment_0,
  deriv_abs_moment_1,
  deriv_abs_moment_2,
  deriv_abs_moment_3,
  l2_alpha1,
  l2_alpha2,
  l2_alpha3,
  l2_fN,
  l2_fN_alpha4,
  l2_f_omega,
  l2_fN_omega,
  boundary,
  tail_t,
  tail_omega,
};

inline constexpr int kFunctionalCount = 22;

inline std::string_view functional_name(Functional id) {
  static constexpr std::array<std::string_view, kFunctionalCount> names = {
      "abs_moment_0",      "abs_moment_1", "abs_moment_2", "abs_moment_3",
      "abs_moment_4",      "abs_moment_5", "abs_moment_6", "abs_moment_7",
      "deriv_abs_moment_0", "deriv_abs_moment_1", "deriv_abs_moment_2", "deriv_abs_moment_3",
      "l2_alpha1",         "l2_alpha2",    "l2_alpha3",    "l2_fN",
      "l2_fN_alpha4",      "l2_f_omega",   "l2_fN_omega",  "boundary",
      "tail_t",            "tail_omega"};
  return names[static_cast<std::size_t>(id)];
}

inline double ledger_value(const MomentLedger& m, Functional id) {
  switch (id) {
    case Functional::abs_moment_0: return m.abs_moment[0];
    case Functional::abs_moment_1: return m.abs_moment[1];
    case Functional::abs_moment_2: return m.abs_moment[2];
    case Functional::abs_moment_3: return m.abs_moment[3];
    case Functional::abs_moment_4: return m.abs_moment[4];
    case Functional::abs_moment_5: return m.abs_moment[5];
    case Functional::abs_moment_6: return m.abs_moment[6];
    case Functional::abs_moment_7: return m.abs_moment[7];
    case Functional::deriv_abs_moment_0: return m.deriv_abs_moment[0];
    case Functional::deriv_abs_moment_1: return m.deriv_abs_moment[1];
    case Functional::deriv_abs_moment_2: return m.deriv_abs_moment[2];
    case Functional::deriv_abs_moment_3: return m.deriv_abs_moment[3];
    case Functional::l2_alpha1: return m.l2_alpha1;
    case Functional::l2_alpha2: return m.l2_alpha2;
    case Functional::l2_alpha3: return m.l2_alpha3;
    case Functional::l2_fN: return m.l2_fN;
    case Functional::l2_fN_alpha4: return m.l2_fN_alpha4;
    case Functional::l2_f_omega: return m.l2_f_omega;
    case Functional::l2_fN_omega: return m.l2_fN_omega;
    case Functional::boundary: return m.boundary;
    case Functional::tail_t: return m.tail_t;
    case Functional::tail_omega: return m.tail_omega;
  }
  throw BadIndexError("ledger_value: unknown functional");
}

/// One tabulated term of a coefficient:
///   (num/den) pi^{pi_half/2} 2^{two_half/2} / sqrt(sqrt_arg)
///   * T^{t_half/2} N^{-n_pow} (4n+1)^{-p1_half/2} (4n+3)^{-p3_half/2} n^{-pn}
///   * (3/2)^{1/4} if q32, * omega(T; n) if omega_t.
/// Terms whose printed constants look inconsistent with the derivation they
/// summarize carry a note; they are evaluated verbatim regardless.
struct Summand {
  double num = 1.0, den = 1.0;
  int sqrt_arg = 1;
  int t_half = 0;
  int n_pow = 0;
  int p1_half = 0;
  int p3_half = 0;
  int pn = 0;
  int pi_half = 0;
  int two_half = 0;
  bool q32 = false;
  bool omega_t = false;
  const char* note = nullptr;

  double value(int n, double N, double T) const {
    double v = num / den;
    if (pi_half) v *= std::pow(std::numbers::pi, 0.5 * pi_half);
    if (two_half) v *= std::pow(2.0, 0.5 * two_half);
    if (sqrt_arg != 1) v /= std::sqrt(static_cast<double>(sqrt_arg));
    if (t_half) v *= std::pow(T, 0.5 * t_half);
    if (n_pow) v /= std::pow(N, n_pow);
    if (p1_half) v /= std::pow(4.0 * n + 1.0, 0.5 * p1_half);
    if (p3_half) v /= std::pow(4.0 * n + 3.0, 0.5 * p3_half);
    if (pn) v /= std::pow(static_cast<double>(n), pn);
    if (q32) v *= std::pow(1.5, 0.25);
    if (omega_t) v *= omega_weight(T, n);
    return v;
  }
};

struct TableEntry {
  Functional id;
  Summand s;
};

/// The fixed coefficient table, one entry per tabulated summand.
inline std::span<const TableEntry> coefficient_summands() {
  using F = Functional;
  static const std::vector<TableEntry> table = {
      // int |f|
      {F::abs_moment_0, {1, 48, 5, 4, 3}},
      {F::abs_moment_0, {1, 384, 9, 6, 4, 0, 0, 0, 0, 0, false, false,
                         "radical sqrt(9) kept verbatim"}},
      {F::abs_moment_0, {1, 8, 1, 0, 3}},
      {F::abs_moment_0, {1, 6, 3, 2, 0, 1, 1}},
      {F::abs_moment_0, {1, 6, 3, 2, 0, 0, 2}},
      {F::abs_moment_0, {1, 288, 11, 10, 3, 0, 1}},
      {F::abs_moment_0, {1, 3870720, 21, 20, 6, 0, 1}},
      {F::abs_moment_0, {1, 36, 13, 12, 2, 0, 1}},
      {F::abs_moment_0, {1, 720, 17, 16, 4, 0, 1}},
      // int |f a|
      {F::abs_moment_1, {1, 48, 3, 2, 3}},
      {F::abs_moment_1, {3, 128, 5, 4, 4}},
      {F::abs_moment_1, {1, 3, 1, 0, 0, 0, 2}},
      {F::abs_moment_1, {1, 3, 1, 0, 0, 1, 1}},
      {F::abs_moment_1, {1, 144, 9, 8, 3, 0, 1, 0, 0, 0, false, false,
                         "radical sqrt(9) kept verbatim"}},
      {F::abs_moment_1, {7, 3870720, 19, 18, 6, 0, 1}},
      // int |f a^2|
      {F::abs_moment_2, {1, 48, 1, 0, 3}},
      {F::abs_moment_2, {1, 128, 3, 2, 4}},
      {F::abs_moment_2, {1, 2, 1, 0, 2, 1}},
      {F::abs_moment_2, {1, 288, 7, 6, 3, 1}},
      {F::abs_moment_2, {21, 3870720, 17, 16, 6, 0, 1}},
      // int |f a^3|
      {F::abs_moment_3, {1, 384, 1, 0, 4}},
      {F::abs_moment_3, {1, 48, 7, 6, 2, 1}},
      {F::abs_moment_3, {1, 2, 1, 0, 2, 0, 1}},
      {F::abs_moment_3, {1, 288, 5, 4, 3, 1}},
      {F::abs_moment_3, {35, 3870720, 15, 14, 6, 0, 1}},
      {F::abs_moment_3, {1, 36, 7, 6, 2, 0, 1}},
      // int |f a^4|
      {F::abs_moment_4, {1, 144, 5, 2, 3, 1}},
      {F::abs_moment_4, {1, 16, 5, 4, 2, 1}},
      {F::abs_moment_4, {35, 3870720, 13, 12, 6, 0, 1}},
      // int |f a^5|
      {F::abs_moment_5, {1, 288, 1, 0, 3, 1}},
      {F::abs_moment_5, {1, 16, 3, 2, 2, 1}},
      {F::abs_moment_5, {21, 3870720, 11, 10, 6, 0, 1}},
      {F::abs_moment_5, {1, 720, 7, 6, 4, 0, 1}},
      // int |f a^6|
      {F::abs_moment_6, {1, 48, 1, 0, 2, 1}},
      {F::abs_moment_6, {7, 3870720, 9, 8, 6, 0, 1, 0, 0, 0, false, false,
                         "radical sqrt(9) kept verbatim"}},
      // int |f a^7|
      {F::abs_moment_7, {1, 3870720, 7, 6, 6, 0, 1}},
      // int |f'|
      {F::deriv_abs_moment_0, {1, 2, 1, 0, 2}},
      {F::deriv_abs_moment_0, {1, 4, 1, 0, 3}},
      {F::deriv_abs_moment_0, {1, 6, 5, 4, 0, 1, 1}},
      {F::deriv_abs_moment_0, {1, 6, 5, 4, 0, 0, 2}},
      // int |f' a|
      {F::deriv_abs_moment_1, {1, 6, 3, 2, 0, 1, 1}},
      {F::deriv_abs_moment_1, {1, 6, 3, 2, 0, 0, 2}},
      {F::deriv_abs_moment_1, {1, 6, 7, 6, 2, 0, 1}},
      // int |f' a^2|
      {F::deriv_abs_moment_2, {1, 6, 1, 0, 0, 1, 1}},
      {F::deriv_abs_moment_2, {1, 6, 1, 0, 0, 0, 2}},
      // int |f' a^3|
      {F::deriv_abs_moment_3, {1, 6, 1, 0, 2, 1}},
      // [int |f a|^2]^{1/2}
      {F::l2_alpha1, {1, 6, 2, 5, 1, 0, 1, 0, 2, 0, false, false,
                      "radical (4n+3) kept verbatim; companion estimate carries (4n+1)"}},
      {F::l2_alpha1, {1, 4, 1, 1, 2, 0, 0, 0, 2}},
      // [int |f a^2|^2]^{1/2}
      {F::l2_alpha2, {1, 8, 1, -1, 2, 0, 0, 0, 2, 1}},
      // [int |f a^3|^2]^{1/2}
      {F::l2_alpha3, {1, 6, 2, 1, 1, 1, 0, 0, 2}},
      {F::l2_alpha3, {1, 9, 1, 5, 0, 1, 1, 0, 2, 1}},
      {F::l2_alpha3, {2, 3, 2, -1, 0, 1, 0, 1, 1, 0, true, true}},
      {F::l2_alpha3, {1, 24, 2, -1, 0, 0, 1, 1, 3, 0, true, true}},
      // [int f_N^2]^{1/2}
      {F::l2_fN, {1, 8, 1, 3, 2, 0, 0, 0, 2, 1}},
      // [int |f_N a^4|^2]^{1/2}
      {F::l2_fN_alpha4, {1, 12, 1, -1, 1, 0, 1, 0, 2, 1}},
      // [int |f omega|^2]^{1/2}
      {F::l2_f_omega, {1, 3, 1, 5, 0, 1, 0, 1, 1, 1, true}},
      {F::l2_f_omega, {1, 24, 2, 5, 0, 0, 1, 1, 3, 0, true}},
      {F::l2_f_omega, {1, 1, 1, -1, 0, 0, 0, 2, 2, 1, false, true,
                       "power n^2 kept verbatim; the a_n b_n product scales as n^{3/2}"}},
      // [int |f_N omega|^2]^{1/2}
      {F::l2_fN_omega, {4, 1, 1, -1, 0, 0, 0, 1, 1, 1, true}},
      {F::l2_fN_omega, {1, 12, 2, 5, 0, 0, 0, 1, 3, 0, true, false,
                        "factor T^{5/2} kept verbatim; companion estimates scale as T^{-1/2}"}},
      // |f(-T)| + |f(T)|
      {F::boundary, {1, 2, 1, 0, 2}},
      {F::boundary, {1, 8, 1, 2, 3}},
      {F::boundary, {1, 8, 3, 2, 3}},
      {F::boundary, {1, 6, 1, 4, 0, 1, 1}},
      {F::boundary, {1, 6, 3, 4, 0, 1, 1}},
      {F::boundary, {1, 6, 5, 4, 0, 1, 1}},
      {F::boundary, {1, 6, 1, 6, 2, 1}},
      {F::boundary, {1, 6, 1, 4, 0, 0, 2}},
      {F::boundary, {1, 6, 3, 4, 0, 0, 2}},
      {F::boundary, {1, 6, 5, 4, 0, 0, 2}},
      {F::boundary, {1, 6, 7, 6, 2, 0, 1}},
      // [int_{|a|>T} f^2]^{1/2}
      {F::tail_t, {2, 1, 1, -1, 0, 0, 0, 1, 1, 1, true, true}},
      {F::tail_t, {1, 12, 1, 7, 1, 0, 1, 0, 2, 1, false, false,
                   "radical (4n+3) kept verbatim; companion estimate carries (4n+1)"}},
      {F::tail_t, {1, 24, 2, -1, 0, 0, 0, 1, 3, 0, true, true}},
      // [int_{|w|>N} |f^|^2]^{1/2}
      {F::tail_omega, {2, 1, 1, -1, 0, 0, 0, 1, 1, 1, true, true}},
      {F::tail_omega, {1, 12, 1, 7, 1, 0, 1, 0, 2, 1, false, false,
                       "radical (4n+3) kept verbatim; companion estimate carries (4n+1)"}},
      {F::tail_omega, {1, 24, 2, -1, 0, 0, 0, 1, 3, 0, true, true}},
  };
  return table;
}

struct CoefficientTable {
  int n = 0;
  double N = 0.0;
  double T = 0.0;
  std::array<double, kFunctionalCount> coeff{};
};

/// Evaluate every tabulated coefficient at (n, N, T).
inline CoefficientTable coefficient_table(int n, double N, double T) {
  if (n < 1) throw std::invalid_argument("coefficient_table: n must be >= 1");
  if (!(N > 0.0) || !(T > 0.0))
    throw std::invalid_argument("coefficient_table: N and T must be > 0");
  CoefficientTable out{n, N, T, {}};
  for (const auto& e : coefficient_summands())
    out.coeff[static_cast<std::size_t>(e.id)] += e.s.value(n, N, T);
  return out;
}

namespace detail {

// Shared fixed-grid machinery for the ledger integrals of f_N: sample the
// band-limited companion once per node, reuse it for all three functionals.
struct FnIntegrals {
  double l2 = 0.0, l2_a4 = 0.0, l2_omega = 0.0;
};

inline FnIntegrals fn_integrals_at(const BandLimitedFunction& fn, int n, double T, int depth,
                                   int order) {
  const auto& rule = gauss_legendre_rule(order);
  const long panels = 1L << depth;
  FnIntegrals acc;
  for (long p = 0; p < panels; ++p) {
    const double a = -T + 2.0 * T * p / panels;
    const double b = -T + 2.0 * T * (p + 1) / panels;
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    for (int i = 0; i < order; ++i) {
      const double t = mid + hw * rule.node[i];
      const double w = hw * rule.weight[i];
      const double v = fn(t);
      const double a4 = t * t * t * t;
      const double om = omega_weight(t, n);
      acc.l2 += w * v * v;
      acc.l2_a4 += w * v * a4 * v * a4;
      acc.l2_omega += w * v * om * v * om;
    }
  }
  return acc;
}

}  // namespace detail

/// Populate every ledger functional. Analytic tails are used when the
/// function carries them; all window integrals go through quadrature.
inline MomentLedger moment_ledger(const TestFunction& f, int n, double T, double N,
                                  const QuadratureSpec& spec = {}) {
  if (n < 1) throw std::invalid_argument("moment_ledger: n must be >= 1");
  if (!(T > 0.0) || !(N > 0.0))
    throw std::invalid_argument("moment_ledger: T and N must be > 0");
  if (!f.derivative)
    throw MissingDerivativeError("moment_ledger: derivative moments need f.derivative");
  MomentLedger m;
  m.n = n;
  m.T = T;
  m.N = N;

  const int hint = min_subdivision_depth(f.oscillation_hint, -T, T);
  auto window_abs = [&](auto&& g) {
    // split at zero so |a|^j stays smooth on each half
    return integrate(g, -T, 0.0, spec, std::max(0, hint - 1)).value +
           integrate(g, 0.0, T, spec, std::max(0, hint - 1)).value;
  };
  for (int j = 0; j <= 7; ++j) {
    m.abs_moment[j] = window_abs(
        [&](double a) { return std::abs(f.value(a)) * std::pow(std::abs(a), j); });
  }
  for (int j = 0; j <= 3; ++j) {
    m.deriv_abs_moment[j] = window_abs(
        [&](double a) { return std::abs(f.derivative(a)) * std::pow(std::abs(a), j); });
  }
  auto window_l2 = [&](auto&& g) {
    const double v = integrate(g, -T, T, spec, hint).value;
    return std::sqrt(std::max(0.0, v));
  };
  m.l2_alpha1 = window_l2([&](double a) {
    const double v = f.value(a) * a;
    return v * v;
  });
  m.l2_alpha2 = window_l2([&](double a) {
    const double v = f.value(a) * a * a;
    return v * v;
  });
  m.l2_alpha3 = window_l2([&](double a) {
    const double v = f.value(a) * a * a * a;
    return v * v;
  });
  m.l2_f_omega = window_l2([&](double a) {
    const double v = f.value(a) * omega_weight(a, n);
    return v * v;
  });

  BandLimitedFunction fn(f, N, spec, T);
  const int fn_depth = min_subdivision_depth(2.0 * N, -T, T);
  auto coarse = detail::fn_integrals_at(fn, n, T, fn_depth, spec.panel_order);
  auto fine = detail::fn_integrals_at(fn, n, T, fn_depth + 1, spec.panel_order);
  const double fn_scale =
      std::max({std::abs(fine.l2), std::abs(fine.l2_a4), std::abs(fine.l2_omega)});
  const double fn_diff =
      std::max({std::abs(fine.l2 - coarse.l2), std::abs(fine.l2_a4 - coarse.l2_a4),
                std::abs(fine.l2_omega - coarse.l2_omega)});
  if (fn_diff > std::max(spec.abs_tol, spec.rel_tol * fn_scale) * 100.0)
    fine = detail::fn_integrals_at(fn, n, T, fn_depth + 2, spec.panel_order);
  m.l2_fN = std::sqrt(std::max(0.0, fine.l2));
  m.l2_fN_alpha4 = std::sqrt(std::max(0.0, fine.l2_a4));
  m.l2_fN_omega = std::sqrt(std::max(0.0, fine.l2_omega));

  m.boundary = std::abs(f.value(-T)) + std::abs(f.value(T));
  m.tail_t = l2_tail_value(f, T, spec);
  m.tail_omega = fourier_l2_tail_value(f, N, spec);
  return m;
}

/// Upper estimate of the correction sum S_a(K, T): coefficients times ledger
/// entries, summed.
inline double sansone_upper(const MomentLedger& ledger, const CoefficientTable& table) {
  if (ledger.n != table.n || ledger.T != table.T ||
      std::abs(ledger.N - table.N) > 1e-12 * std::max(1.0, std::abs(table.N)))
    throw MismatchedParamsError("sansone_upper: ledger and table disagree on (n, N, T)");
  double total = 0.0;
  for (int i = 0; i < kFunctionalCount; ++i)
    total += table.coeff[i] * ledger_value(ledger, static_cast<Functional>(i));
  return total;
}

/// The assembled error bound.
struct BoundBreakdown {
  int K = 0;
  int n = 0;
  double N = 0.0;
  double T = 0.0;
  double term_tail_t = 0.0;
  double term_tail_omega = 0.0;
  double term_fN = 0.0;
  double term_sansone = 0.0;
  double total = 0.0;
};

struct BoundResult {
  BoundBreakdown breakdown;
  MomentLedger ledger;
  CoefficientTable table;
  double sansone_sum = 0.0;  // the raw upper estimate of S_a(K, T)
};

/// Full assembly:
///   (1 + 1/K)(tail_t + tail_omega)/sqrt(2T) + (1/K) l2_fN / sqrt(2T)
///   + (1/pi)(1 + 1/(2K)) S_a(K, T).
inline BoundResult theorem1_bound_detailed(const TestFunction& f, int K, double T,
                                           const QuadratureSpec& spec = {},
                                           double band_edge_override = 0.0) {
  if (K < 2 || K % 2 != 0)
    throw OddTruncationError("theorem1_bound: K must be even and >= 2");
  const int n = K / 2;
  const double N = band_edge_override > 0.0 ? band_edge_override : band_edge(K);
  BoundResult r;
  r.ledger = moment_ledger(f, n, T, N, spec);
  r.table = coefficient_table(n, N, T);
  r.sansone_sum = sansone_upper(r.ledger, r.table);
  const double inv = 1.0 / std::sqrt(2.0 * T);
  auto& b = r.breakdown;
  b.K = K;
  b.n = n;
  b.N = N;
  b.T = T;
  b.term_tail_t = (1.0 + 1.0 / K) * r.ledger.tail_t * inv;
  b.term_tail_omega = (1.0 + 1.0 / K) * r.ledger.tail_omega * inv;
  b.term_fN = (1.0 / K) * r.ledger.l2_fN * inv;
  b.term_sansone = (1.0 + 0.5 / K) / std::numbers::pi * r.sansone_sum;
  b.total = b.term_tail_t + b.term_tail_omega + b.term_fN + b.term_sansone;
  return r;
}

inline BoundBreakdown theorem1_bound(const TestFunction& f, int K, double T,
                                     const QuadratureSpec& spec = {}) {
  return theorem1_bound_detailed(f, K, T, spec).breakdown;
}

/// [int_{-T}^{T} f^2]^{1/2}, for reporting the window-norm variant of the
/// third term alongside the f_N form.
inline double window_l2(const TestFunction& f, double T, const QuadratureSpec& spec = {}) {
  if (f.l2_tail) {
    const double whole = f.l2_tail(0.0);
    return std::sqrt(std::max(0.0, whole - f.l2_tail(T)));
  }
  const int hint = min_subdivision_depth(2.0 * f.oscillation_hint, -T, T);
  auto sq = [&](double t) {
    const double v = f.value(t);
    return v * v;
  };
  return std::sqrt(std::max(0.0, integrate(sq, -T, T, spec, hint).value));
}

}  // namespace hermbound::bound
