#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "talbot/diophantine.hpp"
#include "talbot/expsum.hpp"
#include "talbot/fresnel.hpp"
#include "talbot/piecewise.hpp"
#include "talbot/rational_solver.hpp"
#include "talbot/ringing.hpp"
#include "talbot/series.hpp"

namespace talbot::verify {

struct SuiteResult {
  std::string name;
  bool pass = true;
  double max_dev = 0.0;

  explicit SuiteResult(std::string n) : name(std::move(n)) {}
};

namespace detail {

inline void check(SuiteResult& r, double dev, double tol) {
  r.max_dev = std::max(r.max_dev, dev);
  if (!(dev <= tol)) r.pass = false;
}

inline std::uint64_t next_rand(std::uint64_t& s) { return talbot::detail::splitmix64(s); }

}  // namespace detail

/// Parseval / unitarity: the rational evolution preserves the L2 norm.
inline SuiteResult suite_parseval(std::uint64_t seed) {
  SuiteResult r("parseval");
  const double gamma = 0.31830988618379067;
  auto f = PiecewisePeriodic::indicator(gamma);
  std::uint64_t s = seed;
  const int ns[3] = {2, 3, 5};
  for (int i = 0; i < 50; ++i) {
    auto q = static_cast<std::int64_t>(detail::next_rand(s) % 1000 + 1);
    auto u = static_cast<std::int64_t>(detail::next_rand(s) % static_cast<std::uint64_t>(q + 1));
    int n = ns[detail::next_rand(s) % 3];
    auto sol = solve_rational(f, Fraction(u, q), IntPoly::monomial(n));
    detail::check(r, std::abs(sol.field.l2_norm_sq() - 2.0 * gamma), 1e-10);
  }
  return r;
}

inline SuiteResult suite_diophantine(std::uint64_t seed) {
  SuiteResult r("diophantine");
  std::uint64_t s = seed;
  for (int i = 0; i < 100; ++i) {
    DD t = talbot::detail::uniform_dd(seed, 1000 + static_cast<std::uint64_t>(i));
    if (!(t.hi > 1e-6 && t.hi < 1.0 - 1e-6)) continue;
    auto cv = convergents(t, 10);
    for (std::size_t j = 0; j + 1 < cv.size(); ++j) {
      DD err = dd_abs(t - cv[j].value_dd());
      DD b9 = DD(1.0) / (DD(static_cast<double>(cv[j].den)) * DD(static_cast<double>(cv[j + 1].den)));
      DD b8 = DD(1.0) / (DD(static_cast<double>(cv[j].den)) * DD(static_cast<double>(cv[j].den)));
      if (!(err < b9) || !(err < b8)) r.pass = false;
    }
  }
  // monotonicity in m and A_m subset B_{m,alpha} on sampled points
  DiophantineParams p{3, 0.5, 0.0, 2};
  for (int i = 0; i < 12; ++i) {
    DD t = talbot::detail::uniform_dd(seed ^ 0xabcdULL, static_cast<std::uint64_t>(i));
    if (!(t.hi > 0.05 && t.hi < 0.95)) continue;
    DiophantineParams p2 = p, p8 = p;
    p2.m = 2;
    p8.m = 8;
    bool a2 = in_set_A_m(t, p2, 200), a8 = in_set_A_m(t, p8, 200);
    if (a2 && !a8) r.pass = false;
    if (a2 && !in_set_B(t, p2, 200)) r.pass = false;
  }
  (void)s;
  return r;
}

inline SuiteResult suite_expsum(std::uint64_t seed) {
  SuiteResult r("expsum");
  std::uint64_t s = seed;
  for (std::int64_t q : {1, 2, 3, 16, 17, 31, 60, 64}) {
    for (int n : {2, 3}) {
      auto P = IntPoly::monomial(n);
      auto u = static_cast<std::int64_t>(detail::next_rand(s) % static_cast<std::uint64_t>(q));
      auto row = g_row(P, u, q);
      for (std::int64_t v = 0; v < q; ++v) {
        cd naive = complete_sum(P, u, v, q);
        detail::check(r, std::abs(row[static_cast<std::size_t>(v)] - naive),
                      1e-10 * static_cast<double>(q));
        if (std::abs(naive) > static_cast<double>(q) + 1e-9) r.pass = false;
        cd shifted = complete_sum(P, u, v + q, q);
        if (shifted != naive) r.pass = false;  // exact integer reduction => bitwise
      }
    }
  }
  return r;
}

inline SuiteResult suite_rational(std::uint64_t seed) {
  SuiteResult r("rational");
  (void)seed;
  const double gamma = 0.31830988618379067;
  auto f = PiecewisePeriodic::indicator(gamma);
  // recurrence at t = 1/1
  auto sol1 = solve_rational(f, Fraction(1, 1), IntPoly::monomial(2));
  if (!(sol1.field == f)) r.pass = false;
  // half-period translate for n = 2
  auto sol2 = solve_rational(f, Fraction(1, 2), IntPoly::monomial(2));
  if (!(sol2.field == f.translate(Fraction(1, 2)))) r.pass = false;
  // odd-n realness
  auto sol3 = solve_rational(f, Fraction(3, 17), IntPoly::monomial(3));
  for (cd v : sol3.field.values()) detail::check(r, std::abs(v.imag()), 1e-12);
  return r;
}

inline SuiteResult suite_series(std::uint64_t seed) {
  SuiteResult r("series");
  (void)seed;
  // sawtooth closed form at t = 0
  cd s0 = partial_sum_S(0.0, 0.3, 10000, 2);
  detail::check(r, std::abs(s0 - cd(0.0, 3.141592653589793 * 0.4)), 1e-3);
  // paired vs separate summation
  const DD td(0.37);
  cd paired = partial_sum_S(0.37, 0.21, 500, 2);
  cd separate = 0.0;
  for (std::int64_t k = 1; k <= 500; ++k)
    separate += talbot::detail::cis(talbot::detail::phase_tkn_xk(td, k, 2, 0.21)) /
                static_cast<double>(k);
  for (std::int64_t k = 1; k <= 500; ++k)
    separate -= talbot::detail::cis(talbot::detail::phase_tkn_xk(td, -k, 2, 0.21)) /
                static_cast<double>(k);
  detail::check(r, std::abs(paired - separate), 1e-12);
  // U* close to the exact solution away from jumps
  const double gamma = 0.31830988618379067;
  auto f = PiecewisePeriodic::indicator(gamma);
  auto sol = solve_rational(f, Fraction(1, 2049), IntPoly::monomial(2));
  cd ustar = smoothed_solution_U_star(f, 1.0 / 2049.0, 0.0, 2, 0.55);
  detail::check(r, std::abs(sol.field.evaluate(0.0) - ustar), 0.05);
  return r;
}

inline SuiteResult suite_ringing(std::uint64_t seed) {
  SuiteResult r("ringing");
  (void)seed;
  for (int i = 0; i <= 20; ++i) {
    double s = -8.0 + 16.0 * i / 20.0;
    detail::check(r, std::abs(profile_even(2, s, +1) - profile_even2_closed(s, +1)), 1e-8);
  }
  if (std::abs(profile_even(4, 0.0, +1) - cd(0.5)) != 0.0) r.pass = false;
  // odd-n asymmetry about s = 0
  double p = profile_odd(3, 1.5, +1), q = profile_odd(3, -1.5, +1);
  if (std::abs(p + q - 1.0) <= 1e-3) r.pass = false;
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"parseval", "diophantine", "expsum",
                                              "rational", "series", "ringing"};
  return names;
}

inline SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "parseval") return suite_parseval(seed);
  if (name == "diophantine") return suite_diophantine(seed);
  if (name == "expsum") return suite_expsum(seed);
  if (name == "rational") return suite_rational(seed);
  if (name == "series") return suite_series(seed);
  if (name == "ringing") return suite_ringing(seed);
  throw std::invalid_argument("unknown verify suite: " + name);
}

/// Runs one suite or all of them; returns true iff everything passed.
inline bool run(const std::string& which, std::uint64_t seed, std::ostream& out) {
  std::vector<std::string> todo;
  if (which == "all" || which.empty())
    todo = suite_names();
  else
    todo.push_back(which);
  bool all_pass = true;
  for (const auto& name : todo) {
    SuiteResult r = run_suite(name, seed);
    out << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  max deviation "
        << std::scientific << std::setprecision(3) << r.max_dev << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass;
}

}  // namespace talbot::verify
