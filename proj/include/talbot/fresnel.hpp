#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "talbot/dd.hpp"

namespace talbot {

namespace detail {

inline constexpr DD kDDPi{3.141592653589793116e+00, 1.224646799147353207e-16};

// power series, accurate (in double-double) up to the |x| = 4 switch point
inline std::pair<double, double> fresnel_series(double x) {
  const DD x2 = DD::two_prod(x, x);
  const DD x4 = x2 * x2;
  const DD half_pi = kDDPi * DD(0.5);
  const DD hp2 = half_pi * half_pi;

  // C(x) = sum (-1)^k (pi/2)^{2k} x^{4k+1} / ((2k)! (4k+1))
  DD term = DD(x);
  DD c_acc = term / DD(1.0);
  for (int k = 0; k < 60; ++k) {
    term = term * hp2 * x4 / DD(static_cast<double>((2 * k + 1) * (2 * k + 2)));
    DD contrib = term / DD(static_cast<double>(4 * k + 5));
    c_acc = (k % 2 == 0) ? c_acc - contrib : c_acc + contrib;
    if (std::abs(contrib.hi) < 1e-34 * std::abs(c_acc.hi)) break;
  }

  // S(x) = sum (-1)^k (pi/2)^{2k+1} x^{4k+3} / ((2k+1)! (4k+3))
  term = half_pi * DD(x) * x2;
  DD s_acc = term / DD(3.0);
  for (int k = 0; k < 60; ++k) {
    term = term * hp2 * x4 / DD(static_cast<double>((2 * k + 2) * (2 * k + 3)));
    DD contrib = term / DD(static_cast<double>(4 * k + 7));
    s_acc = (k % 2 == 0) ? s_acc - contrib : s_acc + contrib;
    if (std::abs(contrib.hi) < 1e-34 * std::abs(s_acc.hi)) break;
  }
  return {c_acc.hi, s_acc.hi};
}

// auxiliary-function asymptotics for |x| >= 4 (A&S 7.3 style)
inline std::pair<double, double> fresnel_asymptotic(double x) {
  const double z = 3.141592653589793 * x * x;
  const double z2 = z * z;

  double term = 1.0, f_sum = 0.0, prev = 1e300;
  for (int m2 = 0; m2 < 40; ++m2) {
    if (std::abs(term) > prev) break;  // asymptotic series turned
    prev = std::abs(term);
    f_sum += (m2 % 2 == 0) ? term : -term;
    term *= (4.0 * m2 + 1.0) * (4.0 * m2 + 3.0) / z2;
    if (prev < 1e-18) break;
  }
  double f = f_sum / (3.141592653589793 * x);

  term = 1.0;
  double g_sum = 0.0;
  prev = 1e300;
  for (int m2 = 0; m2 < 40; ++m2) {
    if (std::abs(term) > prev) break;
    prev = std::abs(term);
    g_sum += (m2 % 2 == 0) ? term : -term;
    term *= (4.0 * m2 + 3.0) * (4.0 * m2 + 5.0) / z2;
    if (prev < 1e-18) break;
  }
  double g = g_sum / (3.141592653589793 * x * z);

  // phase pi x^2 / 2 = 2 pi (x^2/4), reduced mod 1 in double-double
  double c, s;
  cis2pi(dd_frac(DD::two_prod(x, x) * DD(0.25)).hi, c, s);
  return {0.5 + f * s - g * c, 0.5 - f * c - g * s};
}

}  // namespace detail

/// Fresnel integrals C(x) = int_0^x cos(pi u^2/2) du and S(x) likewise with
/// sin; power series below |x| = 4, auxiliary asymptotics above.  Absolute
/// accuracy ~1e-11 or better across the switch.
inline std::pair<double, double> fresnel_cs(double x) {
  double ax = std::abs(x);
  auto [c, s] = (ax < 4.0) ? detail::fresnel_series(ax) : detail::fresnel_asymptotic(ax);
  if (x < 0.0) return {-c, -s};
  return {c, s};
}

/// Closed form of the n = 2 ringing profile: with e(xi) = exp(2 pi i xi) the
/// profile integral satisfies
///   (1/2pi) int e(y^2) sin(2 pi s y) dy/y = ((1+i)/2) (C(s) - i S(s)),
/// the complex-error-function form written through Fresnel integrals.
inline std::complex<double> profile_even2_closed(double s, int side) {
  auto [c, v] = fresnel_cs(s);
  std::complex<double> erf_term =
      std::complex<double>(0.5, 0.5) * std::complex<double>(c, -v);
  return 0.5 - static_cast<double>(side) * erf_term;
}

}  // namespace talbot
