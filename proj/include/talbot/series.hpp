#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "talbot/dd.hpp"
#include "talbot/fft.hpp"
#include "talbot/fraction.hpp"
#include "talbot/gridfield.hpp"
#include "talbot/piecewise.hpp"

namespace talbot {

namespace detail {

/// frac(t k^n + x k).  Multiplying a frac-reduced double-double by the
/// integer k leaves the value unchanged mod 1, so magnitudes never exceed |k|
/// and the fractional part keeps full precision at any n.
inline double phase_tkn_xk(DD t, std::int64_t k, int n, double x) {
  const double kd = static_cast<double>(k);
  DD acc = dd_frac(t);
  for (int i = 0; i < n; ++i) acc = dd_frac(acc * DD(kd));
  acc += dd_frac(DD::two_prod(x, kd));
  return dd_frac(acc).hi;
}

inline cd cis(double frac_phase) {
  double c, s;
  cis2pi(frac_phase, c, s);
  return {c, s};
}

inline std::int64_t powmod(std::int64_t base, int exp, std::int64_t q) {
  base %= q;
  if (base < 0) base += q;
  std::int64_t r = 1 % q;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, q);
    base = mulmod(base, base, q);
    exp >>= 1;
  }
  return r;
}

struct KahanCd {
  cd sum = 0.0, comp = 0.0;
  void add(cd term) {
    cd y = term - comp;
    cd t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace detail

/// S_K = sum_{0 < |k| <= K} e(t k^n + x k)/k, accumulating the +k and -k
/// terms together in ascending |k|.
inline cd partial_sum_S(double t, double x, std::int64_t K, int n) {
  if (K < 1) throw std::invalid_argument("partial_sum_S: K must be >= 1");
  detail::KahanCd acc;
  const DD td(t);
  for (std::int64_t k = 1; k <= K; ++k) {
    cd plus = detail::cis(detail::phase_tkn_xk(td, k, n, x));
    cd minus = detail::cis(detail::phase_tkn_xk(td, -k, n, x));
    acc.add((plus - minus) / static_cast<double>(k));
  }
  return acc.sum;
}

/// c_0 + sum_{0 < |k| <= K} c_k e(t k^n + x k) with symmetric pairing; the
/// c_k are the exact arc-by-arc Fourier coefficients of f.
inline cd solution_partial_sum(const PiecewisePeriodic& f, double t, double x,
                               std::int64_t K, int n) {
  if (K < 0) throw std::invalid_argument("solution_partial_sum: K must be >= 0");
  detail::KahanCd acc;
  const DD td(t);
  for (std::int64_t k = 1; k <= K; ++k) {
    cd term = f.fourier_coeff(k) * detail::cis(detail::phase_tkn_xk(td, k, n, x)) +
              f.fourier_coeff(-k) * detail::cis(detail::phase_tkn_xk(td, -k, n, x));
    acc.add(term);
  }
  return f.fourier_coeff(0) + acc.sum;
}

/// Partial sum on the uniform grid x_i = x0 + i/grid_size for rational t,
/// with e(t k^n) reduced exactly in integer arithmetic.  Folding k mod
/// grid_size turns the x-sweep into a single length-grid_size DFT, so the
/// whole grid costs O(K + grid_size log grid_size) instead of O(K grid_size).
inline GridField solution_partial_sum_grid(const PiecewisePeriodic& f, const Fraction& t,
                                           std::int64_t K, int n, int grid_size,
                                           double x0 = -0.5) {
  if (K < 1 || grid_size < 1)
    throw std::invalid_argument("solution_partial_sum_grid: K and grid_size must be >= 1");
  const std::int64_t q = t.den, u = t.num % t.den;
  std::vector<cd> folded(static_cast<std::size_t>(grid_size), cd(0.0));
  for (std::int64_t k = -K; k <= K; ++k) {
    if (k == 0) continue;
    std::int64_t ph = mulmod(u, detail::powmod(k, n, q), q);
    cd a = f.fourier_coeff(k) * unit_root(ph, q) *
           detail::cis(dd_frac(DD::two_prod(x0, static_cast<double>(k))).hi);
    std::int64_t r = ((k % grid_size) + grid_size) % grid_size;
    folded[static_cast<std::size_t>(r)] += a;
  }
  std::vector<cd> sums = dft(std::move(folded), +1);
  GridField g;
  g.t = t.value();
  g.xs.resize(grid_size);
  g.values.resize(grid_size);
  const cd c0 = f.fourier_coeff(0);
  for (int i = 0; i < grid_size; ++i) {
    g.xs[i] = x0 + static_cast<double>(i) / grid_size;
    g.values[i] = c0 + sums[static_cast<std::size_t>(i)];
  }
  return g;
}

/// sup over a 128-point x-sample of |S_{K'} - S_K| for consecutive entries of
/// Ks, the Cauchy-sequence diagnostic behind the K^{-delta} tail decay.
inline std::vector<double> cauchy_profile(double t, const std::vector<std::int64_t>& Ks,
                                          int n, int x_samples = 128) {
  if (Ks.size() < 2) throw std::invalid_argument("cauchy_profile: need at least two K values");
  for (std::size_t i = 1; i < Ks.size(); ++i)
    if (Ks[i] < Ks[i - 1]) throw std::invalid_argument("cauchy_profile: Ks must be non-decreasing");

  std::vector<double> xs(x_samples);
  for (int j = 0; j < x_samples; ++j)
    xs[j] = (static_cast<double>(j) + 0.5) / static_cast<double>(x_samples);

  std::vector<cd> running(xs.size(), cd(0.0));
  std::vector<std::vector<cd>> snapshots;
  snapshots.reserve(Ks.size());
  const DD td(t);
  std::int64_t k = 1;
  for (std::int64_t Kstop : Ks) {
    for (; k <= Kstop; ++k) {
      DD tk = dd_frac(td);
      for (int i = 0; i < n; ++i) tk = dd_frac(tk * DD(static_cast<double>(k)));
      double base_plus = tk.hi;
      double base_minus = (n % 2 == 0) ? tk.hi : dd_frac(-tk).hi;
      const double inv_k = 1.0 / static_cast<double>(k);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        double xk = dd_frac(DD::two_prod(xs[j], static_cast<double>(k))).hi;
        running[j] += (detail::cis(base_plus + xk) - detail::cis(base_minus - xk)) * inv_k;
      }
    }
    snapshots.push_back(running);
  }

  std::vector<double> out(Ks.size() - 1);
  for (std::size_t i = 0; i + 1 < Ks.size(); ++i) {
    double sup = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j)
      sup = std::max(sup, std::abs(snapshots[i + 1][j] - snapshots[i][j]));
    out[i] = sup;
  }
  return out;
}

/// C^2 cutoff with phi = 1 on [-1/2,1/2], 0 outside [-2,2], even, and
/// phi(x) + phi(1/x) = 1 exactly: the transition is the quintic smoothstep in
/// log coordinates, u = 1/2 - log|x|/log 4, and sigma(u) + sigma(1-u) = 1.
struct SmoothCutoff {
  static double smoothstep(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
  }

  double operator()(double x) const {
    double ax = std::abs(x);
    if (ax <= 0.5) return 1.0;
    if (ax >= 2.0) return 0.0;
    return smoothstep(0.5 - std::log(ax) / std::log(4.0));
  }
};

/// U*(t,x): the smooth low-frequency part of the solution, a finite sum over
/// |k| <= 2 t^{-alpha} weighted by phi(k t^alpha).
inline cd smoothed_solution_U_star(const PiecewisePeriodic& f, double t, double x, int n,
                                   double alpha, const SmoothCutoff& cutoff = {}) {
  if (!(t > 0.0)) throw std::invalid_argument("smoothed_solution_U_star: t must be positive");
  const double scale = std::pow(t, alpha);
  const auto kmax = static_cast<std::int64_t>(std::floor(2.0 / scale));
  detail::KahanCd acc;
  const DD td(t);
  for (std::int64_t k = 1; k <= kmax; ++k) {
    double w = cutoff(static_cast<double>(k) * scale);
    if (w == 0.0) continue;
    cd term = f.fourier_coeff(k) * detail::cis(detail::phase_tkn_xk(td, k, n, x)) +
              f.fourier_coeff(-k) * detail::cis(detail::phase_tkn_xk(td, -k, n, x));
    acc.add(w * term);
  }
  return f.fourier_coeff(0) + acc.sum;
}

}  // namespace talbot
