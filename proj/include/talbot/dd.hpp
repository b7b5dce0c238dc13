#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace talbot {

using cd = std::complex<double>;

/// Double-double value: an unevaluated sum hi + lo carrying ~106 significand
/// bits.  Used wherever phases like t*k^n must be reduced mod 1 without
/// losing the fractional part, and for continued fractions of irrationals.
struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double h) : hi(h), lo(0.0) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi; }

  static DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
  }

  // requires |a| >= |b|
  static DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
  }

  static DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
  }

  friend DD operator+(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
  }

  friend DD operator-(DD a, DD b) { return a + DD(-b.hi, -b.lo); }
  friend DD operator-(DD a) { return {-a.hi, -a.lo}; }

  friend DD operator*(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
  }

  friend DD operator/(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = a - DD(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - DD(q2) * b;
    double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    q.lo += q3;
    return quick_two_sum(q.hi, q.lo);
  }

  DD& operator+=(DD b) { return *this = *this + b; }
  DD& operator-=(DD b) { return *this = *this - b; }
  DD& operator*=(DD b) { return *this = *this * b; }
  DD& operator/=(DD b) { return *this = *this / b; }

  friend bool operator<(DD a, DD b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
  }
  friend bool operator>(DD a, DD b) { return b < a; }
  friend bool operator<=(DD a, DD b) { return !(b < a); }
  friend bool operator>=(DD a, DD b) { return !(a < b); }
  friend bool operator==(DD a, DD b) { return a.hi == b.hi && a.lo == b.lo; }
};

inline DD dd_abs(DD a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

inline DD dd_floor(DD a) {
  double f = std::floor(a.hi);
  if (f != a.hi) return {f, 0.0};
  // hi already integral: the fractional part lives in lo
  return DD::quick_two_sum(f, std::floor(a.lo));
}

/// Fractional part in [0, 1).
inline DD dd_frac(DD a) {
  DD r = a - dd_floor(a);
  if (r.hi < 0.0) r += DD(1.0);
  if (r.hi >= 1.0) r -= DD(1.0);
  return r;
}

inline DD dd_sqrt(DD a) {
  if (a.hi <= 0.0) return {std::sqrt(a.hi), 0.0};
  DD x(std::sqrt(a.hi));
  // one Newton step doubles the accurate digits
  x = (x + a / x) * DD(0.5);
  x = (x + a / x) * DD(0.5);
  return x;
}

/// k^n with k an exactly representable double and small n.
inline DD dd_powi(double k, int n) {
  DD r(1.0);
  DD base(k);
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) r *= base;
    if (e > 1) base *= base;
  }
  return r;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// e(x) = exp(2*pi*i*x) for x already reduced near [0,1).
inline void cis2pi(double x, double& c, double& s) {
  x -= std::nearbyint(x);  // [-1/2, 1/2]
  c = std::cos(kTwoPi * x);
  s = std::sin(kTwoPi * x);
}

}  // namespace talbot
