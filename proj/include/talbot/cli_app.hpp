#pragma once

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "talbot/diophantine.hpp"
#include "talbot/io.hpp"
#include "talbot/rational_solver.hpp"
#include "talbot/ringing.hpp"
#include "talbot/series.hpp"
#include "talbot/verify.hpp"

namespace talbot::cli {

constexpr double kDefaultGamma = 0.31830988618379067;  // 1/pi to 17 digits

namespace detail {

namespace fs = std::filesystem;

inline std::vector<double> real_part(const std::vector<cd>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
  return out;
}

inline std::vector<double> imag_part(const std::vector<cd>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].imag();
  return out;
}

struct SolveJob {
  int n = 2;
  double gamma = kDefaultGamma;
  std::string t_text = "1/7";
  int grid = 2048;
  std::string prefix = "solve";
};

inline void emit_solution(const fs::path& dir, const SolveJob& job, std::ostream& out) {
  Fraction t = Fraction::parse(job.t_text);
  auto f = PiecewisePeriodic::indicator(job.gamma);
  RationalSolution sol = solve_rational(f, t, IntPoly::monomial(job.n));
  GridField g = grid_eval(sol, job.grid);
  MetaList meta{{"command", "solve"},
                {"t", t.str()},
                {"n", std::to_string(job.n)},
                {"gamma", format_g17(job.gamma)},
                {"grid", std::to_string(job.grid)}};
  write_grid_csv(dir / (job.prefix + ".csv"), meta, g);
  write_arcs_csv(dir / (job.prefix + "_arcs.csv"), meta, sol.field);
  write_svg(dir / (job.prefix + "_re.svg"), g.xs, real_part(g.values),
            "Re U(" + t.str() + ", x), n=" + std::to_string(job.n));
  write_svg(dir / (job.prefix + "_im.svg"), g.xs, imag_part(g.values),
            "Im U(" + t.str() + ", x), n=" + std::to_string(job.n));
  out << job.prefix << ": " << sol.field.breakpoints().size() << " arcs, "
      << job.grid << " grid points\n";
}

struct RenormJob {
  int n = 2;
  double gamma = kDefaultGamma;
  Fraction t;
  int side = +1;
  double s_lo = -4.0, s_hi = 4.0;
  int count = 129;
  std::string prefix;
};

inline void emit_renormalized(const fs::path& dir, const RenormJob& job) {
  auto f = PiecewisePeriodic::indicator(job.gamma);
  RationalSolution sol = solve_rational(f, job.t, IntPoly::monomial(job.n));
  double t = job.t.value();
  std::vector<double> ss(job.count);
  std::vector<cd> vals(job.count);
  for (int i = 0; i < job.count; ++i) {
    ss[i] = job.s_lo + (job.s_hi - job.s_lo) * static_cast<double>(i) / (job.count - 1);
    double x = job.side * job.gamma + ss[i] * std::pow(t, 1.0 / job.n);
    vals[i] = sol.field.evaluate(x);
  }
  MetaList meta{{"command", "renormalized"},
                {"t", job.t.str()},
                {"n", std::to_string(job.n)},
                {"gamma", format_g17(job.gamma)},
                {"side", std::to_string(job.side)}};
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < job.count; ++i)
    rows.push_back({ss[i], vals[i].real(), vals[i].imag()});
  write_file(dir / (job.prefix + ".csv"), csv_text(meta, "s,re,im", rows));
  write_svg(dir / (job.prefix + "_re.svg"), ss, real_part(vals),
            "Re U(" + job.t.str() + ", g+s t^{1/n})");
  write_svg(dir / (job.prefix + "_im.svg"), ss, imag_part(vals),
            "Im U(" + job.t.str() + ", g+s t^{1/n})");
}

struct ProfileJob {
  int n = 2;
  int side = +1;
  double s_lo = -6.0, s_hi = 6.0;
  int count = 241;
  double tol = 1e-8;
  std::string prefix;
};

inline void emit_profile(const fs::path& dir, const ProfileJob& job) {
  RingingProfile prof(job.n, job.side);
  std::vector<std::pair<double, cd>> table;
  std::string failed;
  int failures = 0;
  for (int i = 0; i < job.count; ++i) {
    double s = job.s_lo + (job.s_hi - job.s_lo) * static_cast<double>(i) / (job.count - 1);
    try {
      cd v = prof.even() ? profile_even(prof.n, s, prof.side, job.tol)
                         : cd(profile_odd(prof.n, s, prof.side, job.tol), 0.0);
      table.emplace_back(s, v);
    } catch (const RingingError&) {
      ++failures;
      failed += (failed.empty() ? "" : ", ") + format_g6(s);
    }
  }
  if (failures > 0)
    throw std::runtime_error("quadrature failed at " + std::to_string(failures) +
                             " point(s): s = " + failed);
  MetaList meta{{"command", "ringing"},
                {"n", std::to_string(job.n)},
                {"side", std::to_string(job.side)}};
  std::vector<std::vector<double>> rows;
  std::vector<double> ss, re, im;
  for (auto& [s, v] : table) {
    rows.push_back({s, v.real(), v.imag()});
    ss.push_back(s);
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  write_file(dir / (job.prefix + ".csv"), csv_text(meta, "s,re,im", rows));
  write_svg(dir / (job.prefix + "_re.svg"), ss, re, "Re profile, n=" + std::to_string(job.n));
  if (prof.even())
    write_svg(dir / (job.prefix + "_im.svg"), ss, im, "Im profile, n=" + std::to_string(job.n));
}

inline void run_figure(const std::string& name, const fs::path& dir, std::ostream& out) {
  if (name == "fig1" || name == "fig2") {
    for (int u = 0; u <= 7; ++u) {
      SolveJob job;
      job.t_text = std::to_string(u) + "/7";
      job.prefix = name + "_u" + std::to_string(u);
      Fraction t = Fraction::parse(job.t_text);
      auto f = PiecewisePeriodic::indicator(job.gamma);
      RationalSolution sol = solve_rational(f, t, IntPoly::monomial(2));
      GridField g = grid_eval(sol, job.grid);
      MetaList meta{{"command", "figure:" + name}, {"t", job.t_text}, {"n", "2"},
                    {"gamma", format_g17(job.gamma)}};
      write_grid_csv(dir / (job.prefix + ".csv"), meta, g);
      if (name == "fig1")
        write_svg(dir / (job.prefix + ".svg"), g.xs, real_part(g.values),
                  "Re U(" + job.t_text + ", x), n=2");
      else
        write_svg(dir / (job.prefix + ".svg"), g.xs, imag_part(g.values),
                  "Im U(" + job.t_text + ", x), n=2");
    }
  } else if (name == "fig3") {
    for (int q : {17, 33, 65, 129, 257, 513, 2049, 4097, 7374}) {
      SolveJob job;
      job.t_text = "1/" + std::to_string(q);
      job.prefix = "fig3_q" + std::to_string(q);
      emit_solution(dir, job, out);
    }
  } else if (name == "fig5") {
    for (int q : {65, 257, 1025}) {
      SolveJob job;
      job.n = 3;
      job.t_text = "1/" + std::to_string(q);
      job.prefix = "fig5_q" + std::to_string(q);
      emit_solution(dir, job, out);
    }
  } else if (name == "fig6") {
    for (int q : {202, 1616, 6464, 51712}) {
      RenormJob job;
      job.t = Fraction(1, q);
      job.prefix = "fig6_q" + std::to_string(q);
      emit_renormalized(dir, job);
    }
  } else if (name == "fig7" || name == "fig8") {
    ProfileJob job;
    job.n = (name == "fig7") ? 2 : 6;
    job.prefix = name;
    emit_profile(dir, job);
  } else if (name == "fig9") {
    for (int n : {3, 17}) {
      ProfileJob job;
      job.n = n;
      job.prefix = "fig9_n" + std::to_string(n);
      emit_profile(dir, job);
    }
  } else if (name == "fig10") {
    SolveJob job;
    job.t_text = "468/3277";
    job.grid = 4096;
    job.prefix = "fig10";
    emit_solution(dir, job, out);
  } else {
    throw CLI::ValidationError("figure", "unknown figure preset: " + name);
  }
  out << name << " written to " << dir.string() << "\n";
}

}  // namespace detail

/// Entry point shared by the binary and the tests.  args excludes argv[0].
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"periodic dispersive evolutions with jump data: exact rational-time "
               "solver, Fourier partial sums, Diophantine sets, ringing profiles"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_dir = ".";
  if (const char* env = std::getenv("TALBOT_OUTPUT_DIR")) out_dir = env;
  app.add_option("--out-dir", out_dir, "output directory (env TALBOT_OUTPUT_DIR)");

  // solve
  detail::SolveJob solve_job;
  auto* solve = app.add_subcommand("solve", "exact piecewise solution at rational t");
  solve->add_option("--n", solve_job.n, "equation order")->check(CLI::Range(2, 40));
  solve->add_option("--gamma", solve_job.gamma, "jump half-width");
  solve->add_option("--t", solve_job.t_text, "rational time u/q")->required();
  solve->add_option("--grid", solve_job.grid, "grid size")->check(CLI::PositiveNumber);
  solve->add_option("--prefix", solve_job.prefix, "output file prefix");

  // series
  struct {
    int n = 2;
    double gamma = kDefaultGamma;
    std::string t_text = "1/7";
    std::int64_t K = 100000;
    int grid = 512;
    std::string prefix = "series";
  } series_job;
  auto* series = app.add_subcommand("series", "Fourier partial sum U_K on a grid");
  series->add_option("--n", series_job.n)->check(CLI::Range(2, 40));
  series->add_option("--gamma", series_job.gamma);
  series->add_option("--t", series_job.t_text, "time, u/q or decimal")->required();
  series->add_option("--K", series_job.K, "truncation")->check(CLI::PositiveNumber);
  series->add_option("--grid", series_job.grid)->check(CLI::PositiveNumber);
  series->add_option("--prefix", series_job.prefix);

  // ringing
  detail::ProfileJob prof_job;
  prof_job.prefix = "ringing";
  auto* ringing = app.add_subcommand("ringing", "Theorem-1.5 limit profile table");
  ringing->add_option("--n", prof_job.n)->check(CLI::Range(2, 40));
  ringing->add_option("--side", prof_job.side)->check(CLI::IsMember({-1, 1}));
  ringing->add_option("--s-min", prof_job.s_lo);
  ringing->add_option("--s-max", prof_job.s_hi);
  ringing->add_option("--count", prof_job.count)->check(CLI::Range(2, 100000));
  ringing->add_option("--tol", prof_job.tol, "quadrature tolerance override");
  ringing->add_option("--prefix", prof_job.prefix);

  // approx
  struct {
    std::string t_text;
    int n = 2;
    double delta = 0.4;
    double alpha = 0.0;
    int m = 2;
    double M = 0.0;
    double M_max = 1000.0;
  } approx_job;
  auto* approx = app.add_subcommand("approx", "continued fraction, approximants, set membership");
  approx->add_option("--t", approx_job.t_text, "time in (0,1), decimal or u/q")->required();
  approx->add_option("--n", approx_job.n)->check(CLI::Range(2, 40));
  approx->add_option("--delta", approx_job.delta);
  approx->add_option("--alpha", approx_job.alpha, "0 selects the window midpoint");
  approx->add_option("--m", approx_job.m)->check(CLI::Range(2, 1000000));
  approx->add_option("--M", approx_job.M, "single window scale M (0 = skip)");
  approx->add_option("--M-max", approx_job.M_max, "membership horizon");

  // verify
  struct {
    std::string suite = "all";
    std::uint64_t seed = 1;
  } verify_job;
  auto* verify_cmd = app.add_subcommand("verify", "run invariant suites");
  verify_cmd->add_option("--suite", verify_job.suite, "suite name or 'all'");
  verify_cmd->add_option("--seed", verify_job.seed);

  // figure
  std::string figure_name;
  auto* figure = app.add_subcommand("figure", "paper-figure presets (fig1..fig10)");
  figure->add_option("--name", figure_name, "fig1|fig2|fig3|fig5|fig6|fig7|fig8|fig9|fig10")
      ->required();

  std::vector<const char*> argv;
  argv.push_back("talbot");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const std::filesystem::path dir(out_dir);
    if (solve->parsed()) {
      if (solve_job.prefix.empty()) solve_job.prefix = "solve";
      detail::emit_solution(dir, solve_job, out);
    } else if (series->parsed()) {
      auto f = PiecewisePeriodic::indicator(series_job.gamma);
      GridField g;
      if (series_job.t_text.find('/') != std::string::npos) {
        g = solution_partial_sum_grid(f, Fraction::parse(series_job.t_text), series_job.K,
                                      series_job.n, series_job.grid);
      } else {
        double t = std::stod(series_job.t_text);
        g.t = t;
        g.xs.resize(series_job.grid);
        g.values.resize(series_job.grid);
        for (int i = 0; i < series_job.grid; ++i) {
          g.xs[i] = -0.5 + static_cast<double>(i) / series_job.grid;
          g.values[i] = solution_partial_sum(f, t, g.xs[i], series_job.K, series_job.n);
        }
      }
      MetaList meta{{"command", "series"},
                    {"t", series_job.t_text},
                    {"n", std::to_string(series_job.n)},
                    {"gamma", format_g17(series_job.gamma)},
                    {"K", std::to_string(series_job.K)}};
      write_grid_csv(dir / (series_job.prefix + ".csv"), meta, g);
      write_svg(dir / (series_job.prefix + "_re.svg"), g.xs, detail::real_part(g.values),
                "Re U_K, t=" + series_job.t_text);
      write_svg(dir / (series_job.prefix + "_im.svg"), g.xs, detail::imag_part(g.values),
                "Im U_K, t=" + series_job.t_text);
      out << series_job.prefix << ": K=" << series_job.K << ", " << series_job.grid
          << " grid points\n";
    } else if (ringing->parsed()) {
      detail::emit_profile(dir, prof_job);
      out << prof_job.prefix << ": " << prof_job.count << " points\n";
    } else if (approx->parsed()) {
      DD t;
      if (approx_job.t_text.find('/') != std::string::npos) {
        Fraction tf = Fraction::parse(approx_job.t_text);
        t = tf.value_dd();
      } else {
        t = DD(std::stod(approx_job.t_text));
      }
      DiophantineParams p{approx_job.n, approx_job.delta, approx_job.alpha, approx_job.m};
      auto cf = continued_fraction(t);
      out << "continued fraction: [0";
      for (std::size_t i = 1; i < std::min<std::size_t>(cf.size(), 14); ++i)
        out << (i == 1 ? "; " : ", ") << cf[i];
      out << (cf.size() > 14 ? ", ...]" : "]") << "\n";
      out << "convergents:";
      for (const auto& c : convergents(t, 10)) out << " " << c.str();
      out << "\n";
      if (approx_job.M >= 2.0) {
        auto a = find_approximant(t, approx_job.M, p);
        out << "find_approximant(M=" << approx_job.M << "): "
            << (a ? a->str() : std::string("absent")) << "\n";
      }
      bool in_a = in_set_A_m(t, p, approx_job.M_max);
      out << "in_set_A_m(m=" << p.m << ", M_max=" << approx_job.M_max
          << "): " << (in_a ? "true" : "false") << "\n";
      double ms = p.m * std::pow(t.hi, -p.alpha_or_default());
      if (ms <= approx_job.M_max) {
        bool in_b = in_set_B(t, p, approx_job.M_max);
        out << "in_set_B(m=" << p.m << ", alpha=" << p.alpha_or_default()
            << ", M_max=" << approx_job.M_max << "): " << (in_b ? "true" : "false") << "\n";
      } else {
        out << "in_set_B: horizon M_max below m t^{-alpha} = " << ms << ", skipped\n";
      }
    } else if (verify_cmd->parsed()) {
      bool ok = talbot::verify::run(verify_job.suite, verify_job.seed, out);
      return ok ? 0 : 1;
    } else if (figure->parsed()) {
      detail::run_figure(figure_name, dir, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace talbot::cli
