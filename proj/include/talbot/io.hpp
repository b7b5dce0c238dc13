#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "talbot/gridfield.hpp"
#include "talbot/piecewise.hpp"

namespace talbot {

/// %.17g: lossless round-trip for doubles, deterministic text.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

using MetaList = std::vector<std::pair<std::string, std::string>>;

/// CSV layout: "# key=value" metadata lines, a column-name line, then rows of
/// 17-significant-digit decimals.
inline std::string csv_text(const MetaList& meta, const std::string& columns,
                            const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (const auto& [k, v] : meta) out += "# " + k + "=" + v + "\n";
  out += columns + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_g17(row[i]);
    }
    out += "\n";
  }
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

inline void write_grid_csv(const std::filesystem::path& path, const MetaList& meta,
                           const GridField& g) {
  std::vector<std::vector<double>> rows;
  rows.reserve(g.xs.size());
  for (std::size_t i = 0; i < g.xs.size(); ++i)
    rows.push_back({g.xs[i], g.values[i].real(), g.values[i].imag()});
  write_file(path, csv_text(meta, "x,re,im", rows));
}

/// Exact arc dump (breakpoint, value) of a piecewise field.
inline void write_arcs_csv(const std::filesystem::path& path, const MetaList& meta,
                           const PiecewisePeriodic& f) {
  std::vector<std::vector<double>> rows;
  rows.reserve(f.breakpoints().size());
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i)
    rows.push_back({f.breakpoints()[i], f.values()[i].real(), f.values()[i].imag()});
  write_file(path, csv_text(meta, "breakpoint,re,im", rows));
}

namespace detail {

inline double nice_step(double range, int target_ticks) {
  double raw = range / target_ticks;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double norm = raw / mag;
  double step = (norm < 1.5) ? 1.0 : (norm < 3.5) ? 2.0 : (norm < 7.5) ? 5.0 : 10.0;
  return step * mag;
}

}  // namespace detail

/// Standalone 800x500 SVG polyline plot with labelled ticks.  Output bytes
/// are a pure function of the input series.
inline std::string svg_text(const std::vector<double>& xs, const std::vector<double>& ys,
                            const std::string& title) {
  if (xs.empty() || xs.size() != ys.size())
    throw std::invalid_argument("svg_text: empty or mismatched series");
  const int W = 800, H = 500, ML = 62, MR = 18, MT = 26, MB = 42;
  double xmin = xs[0], xmax = xs[0], ymin = ys[0], ymax = ys[0];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xmin = std::min(xmin, xs[i]);
    xmax = std::max(xmax, xs[i]);
    ymin = std::min(ymin, ys[i]);
    ymax = std::max(ymax, ys[i]);
  }
  if (xmax == xmin) { xmax += 1.0; xmin -= 1.0; }
  if (ymax == ymin) { ymax += 1.0; ymin -= 1.0; }
  double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
  auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };
  auto fmt2 = [](double v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
       "viewBox=\"0 0 800 500\">\n";
  s += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
  s += "<text x=\"400\" y=\"17\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"13\">" + title + "</text>\n";

  double xstep = detail::nice_step(xmax - xmin, 7);
  for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-12 * xstep; t += xstep) {
    s += "<line x1=\"" + fmt2(px(t)) + "\" y1=\"" + fmt2(H - MB) + "\" x2=\"" + fmt2(px(t)) +
         "\" y2=\"" + fmt2(MT) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + fmt2(px(t)) + "\" y=\"" + fmt2(H - MB + 16) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
         format_g6(t) + "</text>\n";
  }
  double ystep = detail::nice_step(ymax - ymin, 6);
  for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-12 * ystep; t += ystep) {
    s += "<line x1=\"" + fmt2(ML) + "\" y1=\"" + fmt2(py(t)) + "\" x2=\"" + fmt2(W - MR) +
         "\" y2=\"" + fmt2(py(t)) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + fmt2(ML - 6) + "\" y=\"" + fmt2(py(t) + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         format_g6(t) + "</text>\n";
  }
  s += "<rect x=\"" + fmt2(ML) + "\" y=\"" + fmt2(MT) + "\" width=\"" + fmt2(W - ML - MR) +
       "\" height=\"" + fmt2(H - MT - MB) + "\" fill=\"none\" stroke=\"black\"/>\n";

  s += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += " ";
    s += fmt2(px(xs[i])) + "," + fmt2(py(ys[i]));
  }
  s += "\"/>\n</svg>\n";
  return s;
}

inline void write_svg(const std::filesystem::path& path, const std::vector<double>& xs,
                      const std::vector<double>& ys, const std::string& title) {
  write_file(path, svg_text(xs, ys, title));
}

}  // namespace talbot
