#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "talbot/fraction.hpp"
#include "talbot/piecewise.hpp"
#include "talbot/quadrature.hpp"
#include "talbot/rational_solver.hpp"
#include "talbot/series.hpp"

namespace talbot {

/// Raised when a profile integral cannot be driven below the requested
/// tolerance; carries the achieved error estimate.
struct RingingError : std::runtime_error {
  double achieved;
  RingingError(const std::string& msg, double achieved_err)
      : std::runtime_error(msg + " (achieved error " + std::to_string(achieved_err) + ")"),
        achieved(achieved_err) {}
};

namespace detail_ring {

constexpr double kPi = 3.141592653589793;

inline cd poly_phase(cd y, double a, int n, double c) {
  cd p = y;
  for (int i = 1; i < n; ++i) p *= y;
  return a * p + c * y;
}

/// exp(2 pi i F) for complex F; decays like exp(-2 pi Im F).
inline cd e_of_phase(cd F) {
  double mag = -2.0 * kPi * F.imag();
  if (mag < -745.0) return 0.0;
  return std::polar(std::exp(mag), 2.0 * kPi * F.real());
}

/// Start of the rotated tail contour: far enough out that the phase
/// derivative n a Y^{n-1} dominates 2|s|, and that the ray decay rate is
/// at least ~20 cycles per unit.
inline double ray_start(int n, double a, double s) {
  double base = std::pow(20.0 / (n * a), 1.0 / (n - 1.0));
  double stat = 1.15 * std::pow(2.0 * std::abs(s) / (n * a), 1.0 / (n - 1.0));
  return std::max({base, stat, 1.0});
}

/// Panel edges sized to at most ~half an oscillation of the local phase.
template <class RateFn>
std::vector<double> oscillation_edges(double from, double to, RateFn&& rate) {
  std::vector<double> edges{from};
  double y = from;
  while (y < to) {
    double step = std::min(0.5, 0.5 / (rate(y) + 1.0));
    y = std::min(to, y + step);
    edges.push_back(y);
  }
  if (edges.size() < 2) edges.push_back(to);
  return edges;
}

/// T(c) = int_{Y0}^inf e(a y^n + c y) dy/y, rotated onto the ray
/// y = Y0 + rho e^{i pi/(2n)}.  Every binomial term of Im((Y0 + rho e^{i
/// theta})^n) is nonnegative for theta = pi/(2n), so the integrand magnitude
/// is bounded by exp(-g(rho)) with g = decay*rho + 2 pi a rho^n.  Panel edges
/// are placed at equal decrements of g; the adaptive pass resolves whatever
/// oscillation still matters where the envelope is O(1), and the truncated
/// remainder past g = 45 is added to the error estimate.
inline QuadResult ray_integral(int n, double a, double c, double Y0, double tol) {
  const double theta = kPi / (2.0 * n);
  const cd dir = std::polar(1.0, theta);
  const double fprime = n * a * std::pow(Y0, n - 1.0);
  const double decay = 2.0 * kPi * (fprime - std::abs(c)) * std::sin(theta);
  auto g = [&](double rho) { return decay * rho + 2.0 * kPi * a * std::pow(rho, n); };
  std::vector<double> edges{0.0};
  for (double target = 1.5; target <= 45.0; target += 1.5) {
    double lo = edges.back(), hi = std::max(1.0, 2.0 * edges.back());
    while (g(hi) < target) hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (g(mid) < target ? lo : hi) = mid;
    }
    edges.push_back(0.5 * (lo + hi));
  }
  auto integrand = [&](double rho) {
    cd y = Y0 + rho * dir;
    return e_of_phase(poly_phase(y, a, n, c)) / y * dir;
  };
  QuadResult r = integrate_adaptive(integrand, edges, tol);
  r.err += std::exp(-45.0) / (Y0 * decay);
  return r;
}

/// J(a, n, s) = int_R sin(2 pi (a y^n + s y)) dy/y  (odd n; integrand even).
inline QuadResult odd_integral(double a, int n, double s, double tol) {
  const double Y0 = ray_start(n, a, s);
  auto head_rate = [&](double y) { return n * a * std::pow(y, n - 1.0) + std::abs(s); };
  auto head = [&](double y) {
    if (y == 0.0) return 4.0 * kPi * s;
    return 2.0 * std::sin(2.0 * kPi * (a * std::pow(y, n) + s * y)) / y;
  };
  QuadResult h = integrate_adaptive(head, oscillation_edges(0.0, Y0, head_rate), 0.25 * tol);
  QuadResult t = ray_integral(n, a, s, Y0, 0.25 * tol);
  QuadResult out;
  out.value = h.value.real() + 2.0 * t.value.imag();
  out.err = h.err + 2.0 * t.err;
  return out;
}

/// I(n, s) = int_R e(y^n) sin(2 pi s y) dy/y  (even n; integrand even).
inline QuadResult even_integral(int n, double s, double tol) {
  const double Y0 = ray_start(n, 1.0, s);
  auto head_rate = [&](double y) { return n * std::pow(y, n - 1.0) + std::abs(s); };
  auto head = [&](double y) {
    if (y == 0.0) return cd(4.0 * kPi * s);
    double c, v;
    cis2pi(std::pow(y, n) - std::floor(std::pow(y, n)), c, v);
    return 2.0 * cd(c, v) * std::sin(2.0 * kPi * s * y) / y;
  };
  QuadResult h = integrate_adaptive(head, oscillation_edges(0.0, Y0, head_rate), 0.25 * tol);
  QuadResult tp = ray_integral(n, 1.0, s, Y0, 0.25 * tol);
  QuadResult tm = ray_integral(n, 1.0, -s, Y0, 0.25 * tol);
  QuadResult out;
  out.value = h.value + cd(0.0, -1.0) * (tp.value - tm.value);
  out.err = h.err + tp.err + tm.err;
  return out;
}

}  // namespace detail_ring

/// Limiting profile near x = side*gamma for even n:
///   U(t, side*gamma + s t^{1/n}) -> 1/2 - side (1/2pi) int e(y^n) sin(2 pi s y) dy/y.
inline cd profile_even(int n, double s, int side, double tol = 1e-8) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("profile_even: n must be even, >= 2");
  if (side != 1 && side != -1) throw std::invalid_argument("profile_even: side must be +-1");
  QuadResult I = detail_ring::even_integral(n, s, 0.1 * tol);
  if (I.err > tol) throw RingingError("profile_even: quadrature did not converge", I.err);
  return 0.5 - static_cast<double>(side) / (2.0 * detail_ring::kPi) * I.value;
}

/// Limiting profile for odd n, in the form section-7's derivation produces
/// (real, no extra e(y^n) factor):
///   1/2 - side (1/2pi) int sin(2 pi (y^n + s y)) dy/y.
inline double profile_odd(int n, double s, int side, double tol = 1e-8) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("profile_odd: n must be odd, >= 3");
  if (side != 1 && side != -1) throw std::invalid_argument("profile_odd: side must be +-1");
  QuadResult J = detail_ring::odd_integral(1.0, n, s, 0.1 * tol);
  if (J.err > tol) throw RingingError("profile_odd: quadrature did not converge", J.err);
  return 0.5 - static_cast<double>(side) / (2.0 * detail_ring::kPi) * J.value.real();
}

/// The odd-n display as printed in the theorem statement, which keeps an
/// extra e(y^n) factor.  Pairing +-y reduces it to
///   (1/2) int_R sin(2 pi (2 y^n + s y)) dy/y + (pi/2) sign(s).
/// Exposed for comparison; the renormalised solution matches profile_odd,
/// not this form.
inline double profile_odd_theorem_form(int n, double s, int side, double tol = 1e-8) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("profile_odd_theorem_form: n must be odd");
  QuadResult J2 = detail_ring::odd_integral(2.0, n, s, 0.1 * tol);
  if (J2.err > tol) throw RingingError("profile_odd_theorem_form: quadrature did not converge", J2.err);
  double sgn = (s > 0.0) ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
  double K = 0.5 * J2.value.real() + 0.5 * detail_ring::kPi * sgn;
  return 0.5 - static_cast<double>(side) / (2.0 * detail_ring::kPi) * K;
}

/// Parity-dispatching handle on the Theorem-1.5 profiles.
struct RingingProfile {
  int n = 2;
  int side = +1;

  RingingProfile(int n_, int side_) : n(n_), side(side_) {
    if (n < 2) throw std::invalid_argument("RingingProfile: n must be >= 2");
    if (side != 1 && side != -1) throw std::invalid_argument("RingingProfile: side must be +-1");
  }

  bool even() const { return n % 2 == 0; }

  cd eval(double s) const {
    if (even()) return profile_even(n, s, side);
    return cd(profile_odd(n, s, side), 0.0);
  }
};

/// Uniform s-grid table of profile values (Figures 7-9 layout).
inline std::vector<std::pair<double, cd>> profile_table(const RingingProfile& profile,
                                                        double s_lo, double s_hi, int count) {
  if (count < 2) throw std::invalid_argument("profile_table: count must be >= 2");
  std::vector<std::pair<double, cd>> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    double s = s_lo + (s_hi - s_lo) * static_cast<double>(i) / (count - 1);
    out.emplace_back(s, profile.eval(s));
  }
  return out;
}

/// True solution in the renormalised frame: U(t, side*gamma + s t^{1/n}),
/// with gamma read off the indicator's first breakpoint.  Exact solver path.
inline cd renormalized_solution(const PiecewisePeriodic& f, const Fraction& t, double s,
                                int n, int side) {
  double gamma = f.breakpoints().front();
  if (t.num == 0) return f.evaluate(side * gamma);
  double x = side * gamma + s * std::pow(t.value(), 1.0 / n);
  RationalSolution sol = solve_rational(f, t, IntPoly::monomial(n));
  return sol.field.evaluate(x);
}

/// Renormalised frame at irrational (real) t: partial sums with
/// K = ceil(10 t^{-alpha}).
inline cd renormalized_solution(const PiecewisePeriodic& f, double t, double s, int n,
                                int side, double alpha) {
  if (!(t > 0.0)) throw std::invalid_argument("renormalized_solution: t must be positive");
  double gamma = f.breakpoints().front();
  double x = side * gamma + s * std::pow(t, 1.0 / n);
  auto K = static_cast<std::int64_t>(std::ceil(10.0 * std::pow(t, -alpha)));
  return solution_partial_sum(f, t, x, K, n);
}

/// Power-series diagnostic for the profile integrals (hypergeometric in s):
/// regularised moments
///   mu_m = Gamma((m+1)/n) (2pi)^{-(m+1)/n} e^{i pi (m+1)/(2n)} / n
/// from rotating the contour onto arg y = pi/(2n).  Returns nullopt outside
/// the reliable radius (cancellation past double-double headroom).
inline std::optional<cd> profile_series(int n, double s, int side, int max_terms = 120) {
  auto mu = [n](int m) -> cd {
    double beta = static_cast<double>(m + 1) / n;
    double mag = std::tgamma(beta) * std::pow(2.0 * detail_ring::kPi, -beta) / n;
    return std::polar(mag, 0.5 * detail_ring::kPi * beta);
  };
  // complex accumulation in double-double to ride out the alternating blowup
  DD re_acc(0.0), im_acc(0.0);
  double max_term = 0.0;
  bool converged = false;
  if (n % 2 == 0) {
    // I(s) = sum_j (-1)^j (2 pi s)^{2j+1}/(2j+1)! * 2 mu_{2j}
    DD p(2.0 * detail_ring::kPi * s);
    const DD z2 = DD(2.0 * detail_ring::kPi * s) * DD(2.0 * detail_ring::kPi * s);
    for (int j = 0; j < max_terms; ++j) {
      if (2 * j + 1 >= 170 * n) break;  // tgamma overflow guard
      cd m2 = 2.0 * mu(2 * j);
      double sgn = (j % 2 == 0) ? 1.0 : -1.0;
      re_acc += p * DD(sgn * m2.real());
      im_acc += p * DD(sgn * m2.imag());
      double tmag = std::abs(p.hi) * std::abs(m2);
      max_term = std::max(max_term, tmag);
      if (tmag < 1e-22 && j > 3) { converged = true; break; }
      p = p * z2 / DD(static_cast<double>(2 * j + 2)) / DD(static_cast<double>(2 * j + 3));
    }
    if (!converged) return std::nullopt;
    double est = max_term * 2e-15;  // double-precision Gamma limits the cancellation headroom
    if (est > 1e-8) return std::nullopt;
    cd I(re_acc.hi, im_acc.hi);
    return 0.5 - static_cast<double>(side) / (2.0 * detail_ring::kPi) * I;
  }
  // odd n: J(s) = pi/n + 2 Im sum_{m>=1} (2 pi i s)^m / m! * mu_{m-1}
  DD tr(1.0), ti(0.0);  // (2 pi i s)^m / m!
  for (int m = 1; m < max_terms; ++m) {
    // multiply by (2 pi i s)/m
    DD f(2.0 * detail_ring::kPi * s / m);
    DD nr = -ti * f, ni = tr * f;
    tr = nr;
    ti = ni;
    if (m >= 170 * n) break;
    cd mm = mu(m - 1);
    re_acc += tr * DD(mm.real()) - ti * DD(mm.imag());
    im_acc += tr * DD(mm.imag()) + ti * DD(mm.real());
    double tmag = std::hypot(tr.hi, ti.hi) * std::abs(mm);
    max_term = std::max(max_term, tmag);
    if (tmag < 1e-22 && m > 4) { converged = true; break; }
  }
  if (!converged) return std::nullopt;
  double est = max_term * 2e-15;
  if (est > 1e-8) return std::nullopt;
  double J = detail_ring::kPi / n + 2.0 * im_acc.hi;
  return cd(0.5 - static_cast<double>(side) / (2.0 * detail_ring::kPi) * J, 0.0);
}

}  // namespace talbot
