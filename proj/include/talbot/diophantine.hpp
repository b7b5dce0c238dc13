#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "talbot/dd.hpp"
#include "talbot/fraction.hpp"

namespace talbot {

/// Parameters gating which irrational times the asymptotics apply to.
/// alpha == 0 selects the midpoint of the admissible window
/// (1/(n-delta), 1/(n-1)).
struct DiophantineParams {
  int n = 2;
  double delta = 0.4;
  double alpha = 0.0;
  int m = 2;

  double alpha_or_default() const {
    if (alpha > 0.0) return alpha;
    return 0.5 * (1.0 / (n - delta) + 1.0 / (n - 1.0));
  }

  /// Set membership is defined for any alpha in (0, 1/delta) (the Lemma-1.2
  /// window); the narrower Theorem-1.5 window applies when the asymptotics
  /// are invoked, checked by validate(false).
  void validate(bool measure_only = true) const {
    if (n < 2) throw std::invalid_argument("DiophantineParams: n must be >= 2");
    if (!(delta > 0.0 && delta < 1.0) || (n == 2 && delta >= 0.5))
      throw std::invalid_argument("DiophantineParams: delta out of range");
    if (m < 2) throw std::invalid_argument("DiophantineParams: m must be >= 2");
    if (alpha > 0.0) {
      double hi = measure_only ? 1.0 / delta : 1.0 / (n - 1.0);
      double lo = measure_only ? 0.0 : 1.0 / (n - delta);
      if (!(alpha > lo && alpha < hi))
        throw std::invalid_argument("DiophantineParams: alpha outside admissible window");
    }
  }
};

namespace detail {

constexpr std::int64_t kDenCap = 1000000000000000;  // 1e15, inside dd resolution

/// Continued-fraction expansion of t in (0,1) with the convergent recurrence
/// u_j = a_j u_{j-1} + u_{j-2}.  Remainders below the dd noise floor mark a
/// rational input (terminated expansion).
struct CFExpansion {
  std::vector<std::int64_t> a;   // partial quotients, a[0] == 0
  std::vector<std::int64_t> us;  // convergent numerators, aligned with a
  std::vector<std::int64_t> qs;  // convergent denominators
  bool terminated = false;
  DD t;

  static CFExpansion compute(DD t, int max_terms) {
    if (!std::isfinite(t.hi)) throw std::invalid_argument("continued_fraction: non-finite t");
    if (!(DD(0.0) < t && t < DD(1.0)))
      throw std::invalid_argument("continued_fraction: t must lie in (0,1)");
    CFExpansion cf;
    cf.t = t;
    cf.a.push_back(0);
    cf.us.push_back(0);
    cf.qs.push_back(1);
    std::int64_t u_prev = 1, q_prev = 0;  // virtual (-1)-st convergent 1/0
    DD x = t;
    for (int i = 1; i < max_terms; ++i) {
      if (x.hi < 1e-26) { cf.terminated = true; break; }
      DD inv = DD(1.0) / x;
      if (inv.hi > 8e15) { cf.terminated = true; break; }  // remainder below noise
      double af = dd_floor(inv).hi;
      DD rem = inv - DD(af);
      double noise = 1e-26 * std::max(1.0, std::abs(inv.hi));
      if (rem.hi >= 1.0 - noise) { af += 1.0; rem = inv - DD(af); }
      if (rem.hi < noise) rem = DD(0.0);
      auto ai = static_cast<std::int64_t>(af);
      if (ai < 1) break;  // numerical floor; cannot continue reliably
      std::int64_t u_cur = cf.us.back(), q_cur = cf.qs.back();
      if (q_cur > 0 && ai > (kDenCap - q_prev) / q_cur) break;  // denominator cap
      cf.a.push_back(ai);
      cf.us.push_back(ai * u_cur + u_prev);
      cf.qs.push_back(ai * q_cur + q_prev);
      u_prev = u_cur;
      q_prev = q_cur;
      if (rem.hi == 0.0) { cf.terminated = true; break; }
      x = rem;
    }
    return cf;
  }

  /// |t - p/d| < 1/d^2, evaluated in double-double.
  bool is_approximant(std::int64_t p, std::int64_t d) const {
    DD err = dd_abs(t - DD(static_cast<double>(p)) / DD(static_cast<double>(d)));
    DD bound = DD(1.0) / (DD(static_cast<double>(d)) * DD(static_cast<double>(d)));
    return err < bound;
  }
};

}  // namespace detail

/// Partial quotients [0; a1, a2, ...] of t in (0,1).  Rational inputs (to
/// double-double precision) terminate; irrational expansions are reliable up
/// to denominators ~1e15.
inline std::vector<std::int64_t> continued_fraction(DD t, int max_terms = 64) {
  return detail::CFExpansion::compute(t, max_terms).a;
}

/// Convergents u_j/q_j from the continued fraction, starting with 0/1.
/// Returns the full finite list when fewer than `count` exist.
inline std::vector<Fraction> convergents(DD t, int count) {
  auto cf = detail::CFExpansion::compute(t, std::max(count + 1, 64));
  std::vector<Fraction> out;
  int limit = std::min<std::size_t>(count, cf.qs.size());
  out.reserve(limit);
  for (int j = 0; j < limit; ++j) out.emplace_back(cf.us[j], cf.qs[j]);
  return out;
}

namespace detail {

/// Searches for an approximant u/q of t with M^delta < q <= M^{n-delta}.
/// Convergents in the window always qualify (Eq. 1.9 implies Eq. 1.8).  Among
/// the intermediate fractions (u_{j-1} + k u_j)/(q_{j-1} + k q_j) the k's
/// failing |t - p/d| < 1/d^2 form one contiguous block, so it is enough to
/// test the k's at the ends of the admissible window.
inline std::optional<Fraction> find_approximant_cf(const CFExpansion& cf, double M,
                                                   const DiophantineParams& p) {
  const double lo = std::pow(M, p.delta);
  const double hi = std::pow(M, p.n - p.delta);

  std::optional<Fraction> best;
  DD best_err;
  auto consider = [&](std::int64_t num, std::int64_t den) {
    if (!(static_cast<double>(den) > lo && static_cast<double>(den) <= hi)) return;
    if (!cf.is_approximant(num, den)) return;
    DD err = dd_abs(cf.t - DD(static_cast<double>(num)) / DD(static_cast<double>(den)));
    if (!best || err < best_err) {
      best = Fraction(num, den);
      best_err = err;
    }
  };

  for (std::size_t j = 0; j < cf.qs.size(); ++j) consider(cf.us[j], cf.qs[j]);

  // intermediate fractions between convergents j-1 and j+1
  for (std::size_t j = 0; j + 1 < cf.qs.size(); ++j) {
    std::int64_t uj = cf.us[j], qj = cf.qs[j];
    std::int64_t up = (j == 0) ? 1 : cf.us[j - 1];
    std::int64_t qp = (j == 0) ? 0 : cf.qs[j - 1];
    std::int64_t a_next = cf.a[j + 1];
    // clamp in double first: the window bound M^{n-delta} can dwarf int64
    double k_lo_d = std::floor((lo - static_cast<double>(qp)) / static_cast<double>(qj)) + 1.0;
    double k_hi_d = std::floor((hi - static_cast<double>(qp)) / static_cast<double>(qj));
    k_lo_d = std::max(k_lo_d, 1.0);
    k_hi_d = std::min(k_hi_d, static_cast<double>(a_next - 1));
    if (k_lo_d > k_hi_d) continue;
    auto k_lo = static_cast<std::int64_t>(k_lo_d);
    auto k_hi = static_cast<std::int64_t>(k_hi_d);
    consider(up + k_lo * uj, qp + k_lo * qj);
    if (k_hi != k_lo) consider(up + k_hi * uj, qp + k_hi * qj);
  }
  return best;
}

}  // namespace detail

/// Approximant u/q of t with |t - u/q| < 1/q^2 and M^delta < q <= M^{n-delta},
/// or absent when no fraction lands in the window.  Ties resolve to the
/// smallest approximation error.
inline std::optional<Fraction> find_approximant(DD t, double M, const DiophantineParams& p) {
  p.validate(true);
  if (M < 2.0) throw std::invalid_argument("find_approximant: M must be >= 2");
  auto cf = detail::CFExpansion::compute(t, 64);
  return detail::find_approximant_cf(cf, M, p);
}

namespace detail {

/// Membership check over integer M in [M_start, M_max]; the finite horizon
/// M_max stands in for the unbounded "for all M" condition.
inline bool window_all(const CFExpansion& cf, const DiophantineParams& p, double M_start,
                       double M_max) {
  auto M0 = static_cast<std::int64_t>(std::ceil(M_start));
  auto M1 = static_cast<std::int64_t>(std::floor(M_max));
  for (std::int64_t M = M0; M <= M1; ++M) {
    if (!find_approximant_cf(cf, static_cast<double>(M), p)) return false;
  }
  return true;
}

}  // namespace detail

/// t in A_m at horizon M_max: an approximant exists in the (1.11) window for
/// every integer M in [m, M_max].
inline bool in_set_A_m(DD t, const DiophantineParams& p, double M_max) {
  p.validate(true);
  if (M_max < p.m) throw std::invalid_argument("in_set_A_m: M_max must be >= m");
  auto cf = detail::CFExpansion::compute(t, 64);
  return detail::window_all(cf, p, p.m, M_max);
}

/// t in B_{m,alpha} at horizon M_max: approximants exist for every integer M
/// in [m t^{-alpha}, M_max].  An empty range (tiny t at a finite horizon) is
/// vacuously true; this is the finite-horizon artifact, not a claim about t.
inline bool in_set_B(DD t, const DiophantineParams& p, double M_max) {
  p.validate(true);
  double alpha = p.alpha_or_default();
  double M_start = p.m * std::pow(t.hi, -alpha);
  auto cf = detail::CFExpansion::compute(t, 64);
  return detail::window_all(cf, p, M_start, M_max);
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform double-double in [0,1) from the per-sample stream (seed, index).
inline DD uniform_dd(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  DD x = DD(static_cast<double>(a >> 11)) * DD(0x1p-53);
  return x + DD(static_cast<double>(b >> 11)) * DD(0x1p-106);
}

}  // namespace detail

/// Monte Carlo estimate of the measure of B_{m,alpha} (or A_m with
/// use_alpha = false) intersected with [0, t0].  Bit-reproducible for a given
/// (seed, samples): per-sample RNG streams derive from (seed, sample index).
inline double measure_estimate(const DiophantineParams& p, double t0, int samples,
                               double M_max, std::uint64_t seed, bool use_alpha = true) {
  p.validate(true);
  if (samples < 1) throw std::invalid_argument("measure_estimate: samples must be >= 1");
  if (!(t0 > 0.0 && t0 <= 1.0)) throw std::invalid_argument("measure_estimate: t0 must lie in (0,1]");
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    DD t = DD(t0) * detail::uniform_dd(seed, static_cast<std::uint64_t>(i));
    if (!(t.hi > 0.0)) continue;  // measure-zero corner of the sampler
    bool member = use_alpha ? in_set_B(t, p, M_max) : in_set_A_m(t, p, M_max);
    if (member) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace talbot
