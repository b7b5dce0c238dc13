#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "talbot/dd.hpp"
#include "talbot/fft.hpp"

namespace talbot {

/// Polynomial with integer coefficients; coeffs[j] multiplies w^j.
/// The default dispersion relation is the monomial w^n.
struct IntPoly {
  std::vector<std::int64_t> coeffs;

  static IntPoly monomial(int n) {
    if (n < 1) throw std::invalid_argument("IntPoly: degree must be >= 1");
    IntPoly p;
    p.coeffs.assign(static_cast<std::size_t>(n) + 1, 0);
    p.coeffs.back() = 1;
    return p;
  }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  /// P(w) mod q, exact for any 64-bit inputs.
  std::int64_t eval_mod(std::int64_t w, std::int64_t q) const {
    w %= q;
    if (w < 0) w += q;
    std::int64_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      __int128 t = static_cast<__int128>(acc) * w + coeffs[i];
      acc = static_cast<std::int64_t>(((t % q) + q) % q);
    }
    return acc;
  }
};

/// Real-coefficient polynomial, coeffs[j] multiplies k^j.
struct RealPoly {
  std::vector<double> coeffs;

  /// f(k) reduced mod 1 in double-double to keep the phase meaningful even
  /// when the leading term reaches ~1e15.
  double phase_mod1(std::int64_t k) const {
    DD acc(0.0);
    const double kd = static_cast<double>(k);
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      acc = acc * DD(kd) + DD(coeffs[i]);
      acc = dd_frac(acc);  // keep magnitudes small; integer shifts don't change e(.)
    }
    return dd_frac(acc).hi;
  }
};

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % q);
}

/// Complete exponential sum G(u,v;q) = sum_{w mod q} e_q(u P(w) - v w),
/// with the residue computed in exact integer arithmetic.
inline cd complete_sum(const IntPoly& P, std::int64_t u, std::int64_t v,
                       std::int64_t q) {
  if (q <= 0) throw std::invalid_argument("complete_sum: q must be >= 1");
  cd sum = 0.0, comp = 0.0;
  for (std::int64_t w = 0; w < q; ++w) {
    std::int64_t r = mulmod(u % q, P.eval_mod(w, q), q) - mulmod(v % q, w, q);
    cd term = unit_root(r, q);
    cd y = term - comp;
    cd t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

/// All of G(u, 0..q-1; q) at once: the length-q DFT of w -> e_q(u P(w)).
/// O(q log q) for any q, prime or not, via the Bluestein path in dft().
inline std::vector<cd> g_row(const IntPoly& P, std::int64_t u, std::int64_t q) {
  if (q <= 0) throw std::invalid_argument("g_row: q must be >= 1");
  std::vector<cd> a(static_cast<std::size_t>(q));
  for (std::int64_t w = 0; w < q; ++w)
    a[static_cast<std::size_t>(w)] = unit_root(mulmod(u % q, P.eval_mod(w, q), q), q);
  return dft(std::move(a), -1);
}

/// Weyl sum  sum_{k = k_lo}^{k_hi} e(f(k))  with compensated accumulation.
inline cd weyl_sum(const RealPoly& f, std::int64_t k_lo, std::int64_t k_hi) {
  if (k_lo > k_hi) throw std::invalid_argument("weyl_sum: empty range");
  cd sum = 0.0, comp = 0.0;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    double c, s;
    cis2pi(f.phase_mod1(k), c, s);
    cd y = cd(c, s) - comp;
    cd t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

/// |G(u,v;q)| / ((u,v,q)^{1/2} q^{1/2}); stays O(1) in q when the square-root
/// cancellation of the complete sum holds.
inline double gauss_bound_ratio(const IntPoly& P, std::int64_t u, std::int64_t v,
                                std::int64_t q) {
  std::int64_t g = std::gcd(std::gcd(std::abs(u), std::abs(v)), q);
  return std::abs(complete_sum(P, u, v, q)) /
         (std::sqrt(static_cast<double>(g)) * std::sqrt(static_cast<double>(q)));
}

/// N-th root of  mu^{N-1} + mu^{N-n+eps} (mu^{n-1} q^{-1} + 1)(mu + q) log q,
/// N = 2^{n-1}; comparable directly to |sum e(f(k))| over mu consecutive k.
inline double weyl_bound(double mu, std::int64_t q, int n, double eps) {
  if (mu < 2.0 || q < 2) throw std::invalid_argument("weyl_bound: need mu >= 2, q >= 2");
  const double N = std::exp2(n - 1);
  const double qd = static_cast<double>(q);
  double body = std::pow(mu, N - 1.0) +
                std::pow(mu, N - n + eps) *
                    (std::pow(mu, n - 1.0) / qd + 1.0) * (mu + qd) * std::log(qd);
  return std::pow(body, 1.0 / N);
}

/// { M^{-1} + q^{-1} + q M^{-n} }^{2^{1-n}} M^{1+eps} q^{eps}.
inline double hua_bound(double M, std::int64_t q, int n, double eps) {
  if (M < 2.0 || q < 1) throw std::invalid_argument("hua_bound: need M >= 2, q >= 1");
  const double qd = static_cast<double>(q);
  double braces = 1.0 / M + 1.0 / qd + qd * std::pow(M, -static_cast<double>(n));
  return std::pow(braces, std::exp2(1 - n)) * std::pow(M, 1.0 + eps) * std::pow(qd, eps);
}

}  // namespace talbot
