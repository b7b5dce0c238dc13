#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "talbot/expsum.hpp"
#include "talbot/fraction.hpp"
#include "talbot/gridfield.hpp"
#include "talbot/piecewise.hpp"

namespace talbot {

/// Exact piecewise-constant solution at a rational time.
struct RationalSolution {
  Fraction time;
  PiecewisePeriodic field;
  IntPoly dispersion;
};

/// U(u/q, x) = (1/q) sum_{v mod q} G(u,v;q) f(x + v/q), assembled as one
/// sweep over the <= (#jumps of f) * q sorted translated breakpoints: the
/// value changes across the translate-v copy of jump j by G(u,v;q)/q times
/// the original jump, so a single O(q) baseline sum plus increments builds
/// every arc.  Overall O(q log q), matching the FFT row.
inline RationalSolution solve_rational(const PiecewisePeriodic& f, const Fraction& t,
                                       const IntPoly& P) {
  const std::int64_t u = t.num, q = t.den;
  std::vector<cd> row = g_row(P, u, q);
  std::vector<cd> coeff(row.size());
  const double inv_q = 1.0 / static_cast<double>(q);
  for (std::size_t v = 0; v < row.size(); ++v) coeff[v] = row[v] * inv_q;

  // a delta coefficient row (all mass on one v, e.g. q = 1 or the n = 2,
  // t = 1/2 case) is exactly a phased translate; taking that path keeps the
  // arc values bit-identical to translate()
  {
    std::size_t nonzero = 0, which = 0;
    for (std::size_t v = 0; v < coeff.size(); ++v) {
      if (coeff[v] != cd(0.0)) {
        ++nonzero;
        which = v;
      }
    }
    if (nonzero == 1) {
      PiecewisePeriodic shifted = f.translate(Fraction(static_cast<std::int64_t>(which), q));
      if (coeff[which] == cd(1.0)) return {t, shifted, P};
      std::vector<cd> scaled = shifted.values();
      for (cd& v : scaled) v *= coeff[which];
      return {t, PiecewisePeriodic(shifted.breakpoints(), std::move(scaled)), P};
    }
  }

  // source jumps of f
  const auto& bp = f.breakpoints();
  const auto& vals = f.values();
  const std::size_t m = bp.size();
  struct Event {
    double pos;
    cd jump;
  };
  std::vector<Event> events;
  events.reserve(m * static_cast<std::size_t>(q));
  for (std::size_t j = 0; j < m; ++j) {
    cd delta = vals[j] - vals[(j + m - 1) % m];
    if (delta == cd(0.0)) continue;
    for (std::int64_t v = 0; v < q; ++v) {
      if (coeff[static_cast<std::size_t>(v)] == cd(0.0)) continue;
      events.push_back({detail::shift_mod1(bp[j], v, q),
                        coeff[static_cast<std::size_t>(v)] * delta});
    }
  }

  if (events.empty()) {
    // constant initial data: evolution multiplies by e_q(u P(0))
    cd phase = unit_root(mulmod(((u % q) + q) % q, P.eval_mod(0, q), q), q);
    return {t, PiecewisePeriodic::constant(vals[0] * phase), P};
  }

  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.pos < b.pos; });

  // cluster coincident positions at the merge tolerance
  std::vector<double> positions;
  std::vector<cd> jumps;
  for (const Event& e : events) {
    if (positions.empty() || e.pos - positions.back() > PiecewisePeriodic::kMergeTol) {
      positions.push_back(e.pos);
      jumps.push_back(e.jump);
    } else {
      jumps.back() += e.jump;
    }
  }
  if (positions.size() > 1 &&
      (positions.front() + 1.0) - positions.back() <= PiecewisePeriodic::kMergeTol) {
    jumps.front() += jumps.back();
    positions.pop_back();
    jumps.pop_back();
  }

  // baseline: direct evaluation on the first arc, then walk the jumps
  const std::size_t narcs = positions.size();
  double x0 = (narcs > 1) ? 0.5 * (positions[0] + positions[1]) : positions[0] + 0.5;
  cd base = 0.0, comp = 0.0;
  for (std::int64_t v = 0; v < q; ++v) {
    cd c = coeff[static_cast<std::size_t>(v)];
    if (c == cd(0.0)) continue;
    cd y = c * f.evaluate(x0 + static_cast<double>(v) * inv_q) - comp;
    cd s = base + y;
    comp = (s - base) - y;
    base = s;
  }

  std::vector<cd> arc_vals(narcs);
  arc_vals[0] = base;
  for (std::size_t i = 1; i < narcs; ++i) arc_vals[i] = arc_vals[i - 1] + jumps[i];
  return {t, PiecewisePeriodic(std::move(positions), std::move(arc_vals)).simplify(), P};
}

/// Samples of the exact field on x_i = -1/2 + i/grid_size.
inline GridField grid_eval(const RationalSolution& sol, int grid_size) {
  if (grid_size < 1) throw std::invalid_argument("grid_eval: grid_size must be >= 1");
  GridField g;
  g.t = sol.time.value();
  g.xs.resize(grid_size);
  g.values.resize(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    g.xs[i] = -0.5 + static_cast<double>(i) / grid_size;
    g.values[i] = sol.field.evaluate(g.xs[i]);
  }
  return g;
}

/// Breakpoints where the field actually jumps (left/right limits differing by
/// more than tol).
inline std::vector<double> jump_locations(const RationalSolution& sol, double tol = 1e-12) {
  const auto& bp = sol.field.breakpoints();
  const auto& vals = sol.field.values();
  const std::size_t m = bp.size();
  std::vector<double> out;
  for (std::size_t i = 0; i < m; ++i) {
    if (std::abs(vals[i] - vals[(i + m - 1) % m]) > tol) out.push_back(bp[i]);
  }
  return out;
}

/// The sawtooth initial datum of the S-series (1.12):
/// sum_{k != 0} e(kx)/k = i pi (1 - 2x) on (0,1), 0 at integers.
inline cd sawtooth_value(double x) {
  double r = detail::frac1(x);
  if (r == 0.0) return 0.0;
  return cd(0.0, 3.141592653589793 * (1.0 - 2.0 * r));
}

/// Exact K -> infinity limit of S_K at rational t, via Theorem-1.4 algebra
/// applied to the sawtooth pointwise (the sawtooth has non-constant pieces,
/// so it does not go through PiecewisePeriodic).
inline cd sawtooth_rational_value(const Fraction& t, double x, const IntPoly& P) {
  const std::int64_t q = t.den;
  std::vector<cd> row = g_row(P, t.num, q);
  cd sum = 0.0, comp = 0.0;
  const double inv_q = 1.0 / static_cast<double>(q);
  for (std::int64_t v = 0; v < q; ++v) {
    cd y = row[static_cast<std::size_t>(v)] *
               sawtooth_value(x + static_cast<double>(v) * inv_q) -
           comp;
    cd s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum * inv_q;
}

}  // namespace talbot
