#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "talbot/dd.hpp"
#include "talbot/fraction.hpp"

namespace talbot {

/// Equation order and jump half-width for the indicator initial data.
struct ProblemConfig {
  int n = 2;
  double gamma = 0.31830988618379067;  // 1/pi
};

namespace detail {

inline double frac1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;
  if (r < 0.0) r += 1.0;
  return r;
}

/// frac(b - u/q) with the rational shift applied in double-double, so all
/// translates of a breakpoint land on identically rounded positions.
inline double shift_mod1(double b, std::int64_t u, std::int64_t q) {
  DD r = DD(b) - DD(static_cast<double>(u)) / DD(static_cast<double>(q));
  return dd_frac(r).hi;
}

}  // namespace detail

/// Period-1 piecewise-constant function with the class-D midpoint convention
/// at jumps.  values[i] is the value on the open arc starting at
/// breakpoints[i] and ending at the next breakpoint (cyclically).
class PiecewisePeriodic {
 public:
  static constexpr double kMergeTol = 1e-12;

  PiecewisePeriodic() : breakpoints_{0.0}, values_{cd(0.0)} {}

  PiecewisePeriodic(std::vector<double> breakpoints, std::vector<cd> values)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty() || breakpoints_.size() != values_.size())
      throw std::invalid_argument("PiecewisePeriodic: need one value per breakpoint");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
      if (breakpoints_[i] < 0.0 || breakpoints_[i] >= 1.0)
        throw std::invalid_argument("PiecewisePeriodic: breakpoints must lie in [0,1)");
      if (i > 0 && breakpoints_[i] <= breakpoints_[i - 1])
        throw std::invalid_argument("PiecewisePeriodic: breakpoints must strictly increase");
    }
  }

  static PiecewisePeriodic constant(cd value) {
    return PiecewisePeriodic({0.0}, {value});
  }

  /// chi_{[-gamma, gamma]} mod 1: equal to 1 on (-gamma, gamma), 0 outside,
  /// 1/2 at +-gamma.
  static PiecewisePeriodic indicator(double gamma) {
    if (!(gamma > 0.0 && gamma < 0.5))
      throw std::invalid_argument("indicator: gamma must lie in (0, 1/2)");
    return PiecewisePeriodic({gamma, 1.0 - gamma}, {cd(0.0), cd(1.0)});
  }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<cd>& values() const { return values_; }
  std::size_t arc_count() const { return values_.size(); }

  cd evaluate(double x) const {
    double r = detail::frac1(x);
    // index of the arc containing r; arc i starts at breakpoints_[i]
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r);
    std::size_t idx = (it == breakpoints_.begin())
                          ? breakpoints_.size() - 1
                          : static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    if (r == breakpoints_[idx]) {
      std::size_t prev = (idx + breakpoints_.size() - 1) % breakpoints_.size();
      return 0.5 * (values_[prev] + values_[idx]);
    }
    return values_[idx];
  }

  /// Length of arc i (wrapping for the last one).
  double arc_length(std::size_t i) const {
    if (i + 1 < breakpoints_.size()) return breakpoints_[i + 1] - breakpoints_[i];
    return 1.0 - breakpoints_.back() + breakpoints_.front();
  }

  /// c_k = integral_0^1 f(x) e(-k x) dx, exact arc-by-arc (no quadrature).
  cd fourier_coeff(std::int64_t k) const {
    const std::size_t m = breakpoints_.size();
    if (k == 0) {
      cd mean = 0.0;
      for (std::size_t i = 0; i < m; ++i) mean += values_[i] * arc_length(i);
      return mean;
    }
    // sum_i v_i (e(-k b_{i+1}) - e(-k b_i)) / (-2 pi i k)
    auto e_at = [k](double b) {
      double c, s;
      DD ph = dd_frac(DD::two_prod(static_cast<double>(-k), b));
      cis2pi(ph.hi, c, s);
      return cd(c, s);
    };
    cd acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double b0 = breakpoints_[i];
      double b1 = breakpoints_[(i + 1) % m];  // e(-k(b+1)) == e(-k b)
      acc += values_[i] * (e_at(b1) - e_at(b0));
    }
    return acc / cd(0.0, -kTwoPi * static_cast<double>(k));
  }

  double l2_norm_sq() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i)
      acc += std::norm(values_[i]) * arc_length(i);
    return acc;
  }

  /// g(x) = f(x + shift); the shift is reduced mod 1 first, so whole-period
  /// shifts reproduce the function bit-exactly.
  PiecewisePeriodic translate(double shift) const {
    double s = detail::frac1(shift);
    if (s == 0.0) return *this;
    return translate_impl([s](double b) { return detail::frac1(b - s); });
  }

  /// Rational shift v/q applied in double-double; exact enough that repeated
  /// translates in the rational solver never drift off the merge tolerance.
  PiecewisePeriodic translate(const Fraction& shift) const {
    std::int64_t u = shift.num, q = shift.den;
    return translate_impl([u, q](double b) { return detail::shift_mod1(b, u, q); });
  }

  /// Drops breakpoints whose adjacent arc values are bitwise equal; collapses
  /// to a constant when no jump survives.
  PiecewisePeriodic simplify() const {
    const std::size_t m = breakpoints_.size();
    std::vector<double> bp;
    std::vector<cd> vals;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t prev = (i + m - 1) % m;
      if (values_[prev] != values_[i]) {
        bp.push_back(breakpoints_[i]);
        vals.push_back(values_[i]);
      }
    }
    if (bp.empty()) return constant(values_[0]);
    return PiecewisePeriodic(std::move(bp), std::move(vals));
  }

  friend bool operator==(const PiecewisePeriodic& a, const PiecewisePeriodic& b) {
    return a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
  }

 private:
  template <class ShiftFn>
  PiecewisePeriodic translate_impl(ShiftFn&& shifted) const {
    const std::size_t m = breakpoints_.size();
    std::vector<std::pair<double, cd>> arcs(m);
    for (std::size_t i = 0; i < m; ++i)
      arcs[i] = {shifted(breakpoints_[i]), values_[i]};
    std::sort(arcs.begin(), arcs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<double> bp(m);
    std::vector<cd> vals(m);
    for (std::size_t i = 0; i < m; ++i) {
      bp[i] = arcs[i].first;
      vals[i] = arcs[i].second;
    }
    return PiecewisePeriodic(std::move(bp), std::move(vals));
  }

  std::vector<double> breakpoints_;
  std::vector<cd> values_;
};

/// Pointwise linear combination sum_i coeffs[i] * fs[i].  The breakpoint set
/// is the union of the inputs' breakpoints, coincident points merged at
/// tolerance 1e-12.
inline PiecewisePeriodic combine(const std::vector<cd>& coeffs,
                                 const std::vector<PiecewisePeriodic>& fs) {
  if (coeffs.empty() || coeffs.size() != fs.size())
    throw std::invalid_argument("combine: need matching nonempty coefficient/function lists");
  std::vector<double> all;
  for (const auto& f : fs)
    all.insert(all.end(), f.breakpoints().begin(), f.breakpoints().end());
  std::sort(all.begin(), all.end());
  std::vector<double> bp;
  for (double b : all)
    if (bp.empty() || b - bp.back() > PiecewisePeriodic::kMergeTol) bp.push_back(b);
  // wrap-around cluster: first and last may coincide mod 1
  if (bp.size() > 1 && (bp.front() + 1.0) - bp.back() <= PiecewisePeriodic::kMergeTol)
    bp.pop_back();

  const std::size_t m = bp.size();
  std::vector<cd> vals(m, cd(0.0));
  for (std::size_t i = 0; i < m; ++i) {
    double hi = (i + 1 < m) ? bp[i + 1] : bp[0] + 1.0;
    double mid = 0.5 * (bp[i] + hi);
    cd acc = 0.0;
    for (std::size_t j = 0; j < fs.size(); ++j) acc += coeffs[j] * fs[j].evaluate(mid);
    vals[i] = acc;
  }
  return PiecewisePeriodic(std::move(bp), std::move(vals));
}

}  // namespace talbot
