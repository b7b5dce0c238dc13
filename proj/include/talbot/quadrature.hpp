#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace talbot {

/// Gauss-Legendre rule on [-1,1], nodes by Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n) : nodes(n), weights(n) {
    for (int i = 0; i < n; ++i) {
      double x = std::cos(3.141592653589793 * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }

  static const GaussLegendre& rule15() {
    static const GaussLegendre r(15);
    return r;
  }
  static const GaussLegendre& rule30() {
    static const GaussLegendre r(30);
    return r;
  }
};

template <class F>
std::complex<double> gl_apply(const F& f, double a, double b, const GaussLegendre& rule,
                              double& l1) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::complex<double> acc = 0.0;
  l1 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    std::complex<double> v = f(mid + half * rule.nodes[i]);
    acc += rule.weights[i] * v;
    l1 += rule.weights[i] * std::abs(v);
  }
  l1 *= half;
  return acc * half;
}

struct QuadResult {
  std::complex<double> value{0.0, 0.0};
  double err = 0.0;
};

namespace detail {

template <class F>
void integrate_panel(const F& f, double a, double b, double tol, int depth, QuadResult& out) {
  double l1c = 0.0, l1f = 0.0;
  std::complex<double> coarse = gl_apply(f, a, b, GaussLegendre::rule15(), l1c);
  std::complex<double> fine = gl_apply(f, a, b, GaussLegendre::rule30(), l1f);
  double err = std::abs(fine - coarse);
  // rounding floor: below ~eps times the panel's L1 mass there is nothing
  // left to resolve, no matter how small the requested share
  double floor = 5e-16 * l1f;
  if (err <= tol || err <= floor || depth >= 12) {
    out.value += fine;
    out.err += err;
    return;
  }
  double mid = 0.5 * (a + b);
  integrate_panel(f, a, mid, 0.5 * tol, depth + 1, out);
  integrate_panel(f, mid, b, 0.5 * tol, depth + 1, out);
}

}  // namespace detail

/// Adaptive panel integration of a complex-valued integrand on [a,b] to
/// absolute tolerance tol.  `edges` pre-splits the interval (oscillation-aware
/// callers pass panels of at most a few phase cycles each).
template <class F>
QuadResult integrate_adaptive(const F& f, const std::vector<double>& edges, double tol) {
  if (edges.size() < 2) throw std::invalid_argument("integrate_adaptive: need >= 2 edges");
  QuadResult out;
  const double per_panel = tol / static_cast<double>(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    detail::integrate_panel(f, edges[i], edges[i + 1], per_panel, 0, out);
  return out;
}

}  // namespace talbot
