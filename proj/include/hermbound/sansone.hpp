#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "hermbound/bandlimit.hpp"
#include "hermbound/errors.hpp"
#include "hermbound/functions.hpp"
#include "hermbound/hermite.hpp"
#include "hermbound/quadrature.hpp"

namespace hermbound::sansone {

// Near the origin, h_{2n} and h_{2n+1} ride the oscillations cos(lambda y)
// and sin(mu y)/mu with lambda = sqrt(4n+1), mu = sqrt(4n+3):
//
//   h_{2n}(y)   = h_{2n}(0)  [cos(lambda y) + (y^3/6) sin(lambda y)/lambda] + T_e(y)/lambda^2
//   h_{2n+1}(y) = h'_{2n+1}(0) [sin(mu y)/mu - (y^3/6) cos(mu y)/mu^2]      + T_o(y)/mu^2
//
// The frequencies split around the band edge: mu - lambda = 1/N with
// N = (lambda + mu)/2, which is what turns the kernel product into
// sin(N(x - alpha)) plus the five correction terms below.

struct SansoneParams {
  int n;     // half the truncation order, K = 2n
  double T;  // window half-width
  double N;  // band edge, (sqrt(4n+1) + sqrt(4n+3))/2
};

inline SansoneParams make_params(int n, double T) {
  if (n < 1) throw std::invalid_argument("sansone: n must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("sansone: T must be > 0");
  return {n, T, band_edge(2 * n)};
}

struct RemainderPair {
  double t_even;  // T(2n, y)
  double t_odd;   // T(2n+1, y)
  double y;
};

/// Solve the two displays above for the remainders, with exact h values from
/// the recurrence and exact center values.
inline RemainderPair remainders(const SansoneParams& p, double y) {
  const int n = p.n;
  const double lam2 = 4.0 * n + 1.0, mu2 = 4.0 * n + 3.0;
  const double lam = std::sqrt(lam2), mu = std::sqrt(mu2);
  thread_local std::vector<double> h;
  h.resize(static_cast<std::size_t>(2 * n) + 2);
  hermite::eval_all(2 * n + 1, y, h);
  const auto z = hermite::values_at_zero(n);
  const double y36 = y * y * y / 6.0;
  const double even_main = z.h_even * (std::cos(lam * y) + y36 * std::sin(lam * y) / lam);
  const double odd_main = z.dh_odd * (std::sin(mu * y) / mu - y36 * std::cos(mu * y) / mu2);
  return {lam2 * (h[2 * n] - even_main), mu2 * (h[2 * n + 1] - odd_main), y};
}

struct MTermValue {
  int k;
  double x;
  double alpha;
  double value;
};

namespace detail {

// Everything an M evaluation needs at a single point.
struct PointData {
  double v, v36;           // y and y^3/6
  double sl, cl, sm, cm;   // sin/cos at lambda y and mu y
  double sn, cn;           // sin/cos at N y
  double te, to;           // T(2n, y), T(2n+1, y)
};

inline PointData point_data(const SansoneParams& p, double y) {
  const double lam = std::sqrt(4.0 * p.n + 1.0), mu = std::sqrt(4.0 * p.n + 3.0);
  auto r = remainders(p, y);
  return {y,
          y * y * y / 6.0,
          std::sin(lam * y),
          std::cos(lam * y),
          std::sin(mu * y),
          std::cos(mu * y),
          std::sin(p.N * y),
          std::cos(p.N * y),
          r.t_even,
          r.t_odd};
}

struct Coefficients {
  double lam, mu, N;
  double a_n, b_n;  // 1/(h'_{2n+1}(0) mu) and 1/(h_{2n}(0) (4n+1)), signed
};

inline Coefficients coefficients(const SansoneParams& p) {
  const double lam = std::sqrt(4.0 * p.n + 1.0), mu = std::sqrt(4.0 * p.n + 3.0);
  const auto z = hermite::values_at_zero(p.n);
  return {lam, mu, p.N, 1.0 / (z.dh_odd * mu), 1.0 / (z.h_even * (4.0 * p.n + 1.0))};
}

// The five corrections. The b_n bracket follows the product expansion of the
// two displays defining the remainders; see the sign note in m_all.
inline std::array<double, 5> combine(const Coefficients& c, const PointData& X,
                                     const PointData& A, bool flip_bn_bracket = false) {
  const double N = c.N;
  const double x = X.v, alpha = A.v;
  std::array<double, 5> m;
  const double sum = x + alpha, diff = x - alpha;
  const double cos_n_sum = X.cn * A.cn - X.sn * A.sn;
  const double sin_n_diff = X.sn * A.cn - X.cn * A.sn;
  const double s_half = std::sin(0.25 * sum / N);
  m[0] = cos_n_sum * std::sin(0.5 * diff / N) - 2.0 * s_half * s_half * sin_n_diff;
  m[1] = (A.v36 * A.sl * X.sm - X.v36 * X.sl * A.sm) / c.lam;
  m[2] = (A.v36 * A.cm * X.cl - X.v36 * X.cm * A.cl) / c.mu;
  m[3] = X.v36 * A.v36 * (A.cm * X.sl - X.cm * A.sl) / (c.lam * c.mu);
  const double a_bracket = X.to * A.cl - A.to * X.cl +
                           (X.to * A.v36 * A.sl - A.to * X.v36 * X.sl) / c.lam;
  double b_bracket = A.te * X.sm - X.te * A.sm +
                     (X.te * A.v36 * A.cm - A.te * X.v36 * X.cm) / c.mu;
  if (flip_bn_bracket) b_bracket = -b_bracket;
  m[4] = c.a_n * a_bracket + c.b_n * b_bracket + c.a_n * c.b_n * (X.to * A.te - A.to * X.te);
  return m;
}

}  // namespace detail

/// All five corrections at once. flip_bn_bracket selects the opposite sign
/// convention for the even-remainder bracket of the fifth term; it exists for
/// the decomposition-residual diagnostic and is never the default.
inline std::array<double, 5> m_all(const SansoneParams& p, double x, double alpha,
                                   bool flip_bn_bracket = false) {
  const auto c = detail::coefficients(p);
  return detail::combine(c, detail::point_data(p, x), detail::point_data(p, alpha),
                         flip_bn_bracket);
}

inline MTermValue m_term(const SansoneParams& p, int k, double x, double alpha) {
  if (k < 1 || k > 5) throw BadIndexError("m_term: k must be in 1..5");
  return {k, x, alpha, m_all(p, x, alpha)[static_cast<std::size_t>(k) - 1]};
}

struct DecompositionSample {
  double ratio;        // pi * sqrt((2n+1)/2) * (kernel numerator) / denominator
  double denominator;  // sin(N(x - alpha)) + sum of the corrections
};

/// One sample of the kernel-vs-decomposition ratio. With the corrections
/// consistent, the ratio is a constant in (1 - 1/(2K), 1 + 1/(2K)).
inline DecompositionSample decomposition_sample(const SansoneParams& p, double x, double alpha,
                                                bool flip_bn_bracket = false) {
  const auto m = m_all(p, x, alpha, flip_bn_bracket);
  double denom = std::sin(p.N * (x - alpha));
  for (double v : m) denom += v;
  thread_local std::vector<double> hx, ha;
  hx.resize(static_cast<std::size_t>(2 * p.n) + 2);
  ha.resize(static_cast<std::size_t>(2 * p.n) + 2);
  hermite::eval_all(2 * p.n + 1, x, hx);
  hermite::eval_all(2 * p.n + 1, alpha, ha);
  const double numer = hx[2 * p.n + 1] * ha[2 * p.n] - ha[2 * p.n + 1] * hx[2 * p.n];
  const double ratio =
      std::numbers::pi * hermite::cd_normalization(p.n) * numer / denom;
  return {ratio, denom};
}

/// RMS of each correction operator applied to f:
///   S_k = [(1/2T) int |int M_k(x, a)/(x - a) f(a) da|^2 dx]^{1/2}.
/// Nested fixed-grid quadrature with one shared node set; the diagonal of
/// M_k/(x - a) is patched by a symmetric difference with step 1e-5. Cost is
/// quadratic in the node count, so n > 50 is refused unless forced.
inline std::array<double, 5> direct_sansone(const TestFunction& f, const SansoneParams& p,
                                            const QuadratureSpec& spec = {},
                                            bool force_large_n = false) {
  if (p.n > 50 && !force_large_n)
    throw std::invalid_argument(
        "direct_sansone: refusing n > 50 (nested quadrature cost grows like n^2); "
        "pass force_large_n to override");
  spec.validate();
  const auto c = detail::coefficients(p);

  auto pass = [&](int depth) {
    const long panels = 1L << depth;
    const auto& rule = gauss_legendre_rule(spec.panel_order);
    const std::size_t count = panels * spec.panel_order;
    std::vector<detail::PointData> pts(count);
    std::vector<double> w(count), fv(count);
    std::size_t idx = 0;
    for (long pnl = 0; pnl < panels; ++pnl) {
      const double a = -p.T + 2.0 * p.T * pnl / panels;
      const double b = -p.T + 2.0 * p.T * (pnl + 1) / panels;
      const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
      for (int i = 0; i < spec.panel_order; ++i, ++idx) {
        const double t = mid + hw * rule.node[i];
        pts[idx] = detail::point_data(p, t);
        w[idx] = hw * rule.weight[i];
        fv[idx] = f.value(t);
        if (!std::isfinite(fv[idx])) throw NonFiniteError("direct_sansone: f not finite");
      }
    }
    std::array<double, 5> mean_square{};
    std::array<double, 5> inner{};
    for (std::size_t i = 0; i < count; ++i) {
      inner.fill(0.0);
      std::array<double, 5> diag{};
      bool have_diag = false;
      for (std::size_t j = 0; j < count; ++j) {
        const double gap = pts[i].v - pts[j].v;
        if (std::abs(gap) < 1e-8) {
          if (!have_diag) {
            const double step = 1e-5;
            const auto lo = detail::combine(c, pts[i], detail::point_data(p, pts[i].v - step));
            const auto hi = detail::combine(c, pts[i], detail::point_data(p, pts[i].v + step));
            for (int k = 0; k < 5; ++k) diag[k] = (lo[k] - hi[k]) / (2.0 * step);
            have_diag = true;
          }
          for (int k = 0; k < 5; ++k) inner[k] += w[j] * fv[j] * diag[k];
        } else {
          const auto m = detail::combine(c, pts[i], pts[j]);
          const double wf = w[j] * fv[j] / gap;
          for (int k = 0; k < 5; ++k) inner[k] += wf * m[k];
        }
      }
      for (int k = 0; k < 5; ++k) mean_square[k] += w[i] * inner[k] * inner[k];
    }
    std::array<double, 5> out{};
    for (int k = 0; k < 5; ++k) out[k] = std::sqrt(std::max(0.0, mean_square[k] / (2.0 * p.T)));
    return out;
  };

  int depth = min_subdivision_depth(2.0 * p.N, -p.T, p.T, 6);
  std::array<double, 5> coarse = pass(depth);
  for (int round = 0;; ++round) {
    std::array<double, 5> fine = pass(depth + 1);
    double diff = 0.0, scale = 0.0;
    for (int k = 0; k < 5; ++k) {
      diff = std::max(diff, std::abs(fine[k] - coarse[k]));
      scale = std::max(scale, std::abs(fine[k]));
    }
    if (diff <= std::max(1e3 * spec.abs_tol, 1e3 * spec.rel_tol * scale) || round >= 2)
      return fine;
    coarse = fine;
    ++depth;
  }
}

}  // namespace hermbound::sansone
