#pragma once

// Self-contained SVG heatmaps of 2-D sweep columns.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "aqrsm/errors.hpp"
#include "aqrsm/sweep.hpp"

namespace aqrsm::io {

enum class ColorScale { linear, log10 };

struct Rgb {
  int r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr std::array<Rgb, 5> kColorStops = {
    Rgb{0x44, 0x01, 0x54}, Rgb{0x3B, 0x52, 0x8B}, Rgb{0x21, 0x91, 0x8C}, Rgb{0x5E, 0xC9, 0x62}, Rgb{0xFD, 0xE7, 0x25}};
inline constexpr const char* kMissingColor = "#BBBBBB";

/// Piecewise-linear interpolation between the five stops at 0, 0.25, ..., 1.
inline Rgb colormap(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double x = t * 4.0;
  const int seg = std::min(3, static_cast<int>(std::floor(x)));
  const double f = x - seg;
  const Rgb& a = kColorStops[seg];
  const Rgb& b = kColorStops[seg + 1];
  auto mix = [f](int p, int q) { return static_cast<int>(std::lround(p + (q - p) * f)); };
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

inline std::string hex(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02X%02X%02X", c.r, c.g, c.b);
  return buf;
}

struct HeatmapGrid {
  std::string x_name, y_name, column;
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  int nx = 0, ny = 0;
  std::vector<std::optional<double>> values;  // index = ix * ny + iy

  std::optional<double> at(int ix, int iy) const { return values[static_cast<std::size_t>(ix) * ny + iy]; }
};

inline HeatmapGrid heatmap_grid(const SweepResult& result, std::string_view column) {
  if (!result.two_dimensional()) throw InvalidInput("emit_heatmap: sweep result must be two-dimensional");
  const Axis& a1 = result.spec.axis1;
  const Axis& a2 = *result.spec.axis2;
  HeatmapGrid grid{a1.name, a2.name, std::string(column), a1.min, a1.max, a2.min, a2.max, a1.count, a2.count, {}};
  grid.values.reserve(result.rows.size());
  for (const SweepRow& row : result.rows) grid.values.push_back(column_value(row, column));
  return grid;
}

/// Per-cell normalized colour positions; empty entries are missing data.
inline std::vector<std::optional<double>> normalize(const std::vector<std::optional<double>>& values, ColorScale scale,
                                                    double* lo_out = nullptr, double* hi_out = nullptr) {
  std::vector<std::optional<double>> mapped(values.size());
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i] || !std::isfinite(*values[i])) continue;
    double v = *values[i];
    if (scale == ColorScale::log10) {
      if (!(v > 0.0)) continue;
      v = std::log10(v);
    }
    mapped[i] = v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (auto& m : mapped) {
    if (!m) continue;
    m = hi > lo ? (*m - lo) / (hi - lo) : 0.5;
  }
  if (lo_out) *lo_out = lo;
  if (hi_out) *hi_out = hi;
  return mapped;
}

namespace detail {

inline std::string fixed2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string tick(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace detail

inline std::string emit_heatmap(const HeatmapGrid& grid, ColorScale scale) {
  if (grid.nx < 2 || grid.ny < 2 || grid.values.size() != static_cast<std::size_t>(grid.nx) * grid.ny) {
    throw InvalidInput("emit_heatmap: input must be a two-dimensional table");
  }
  using detail::fixed2;
  double lo = 0.0, hi = 0.0;
  const auto t = normalize(grid.values, scale, &lo, &hi);
  const double left = 80.0, top = 40.0, plot_w = 400.0, plot_h = 400.0;
  const double cw = plot_w / grid.nx, ch = plot_h / grid.ny;
  const double bar_x = left + plot_w + 30.0, bar_w = 20.0;
  const double width = bar_x + bar_w + 90.0, height = top + plot_h + 60.0;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed2(width) + "\" height=\"" + fixed2(height) +
       "\" viewBox=\"0 0 " + fixed2(width) + " " + fixed2(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<title>" + grid.column + " (" + (scale == ColorScale::log10 ? "log10" : "linear") + ")</title>\n";
  s += "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (int ix = 0; ix < grid.nx; ++ix)
    for (int iy = 0; iy < grid.ny; ++iy) {
      const auto& c = t[static_cast<std::size_t>(ix) * grid.ny + iy];
      const std::string fill = c ? hex(colormap(*c)) : kMissingColor;
      s += "<rect x=\"" + fixed2(left + ix * cw) + "\" y=\"" + fixed2(top + (grid.ny - 1 - iy) * ch) + "\" width=\"" +
           fixed2(cw) + "\" height=\"" + fixed2(ch) + "\" fill=\"" + fill + "\"/>\n";
    }
  s += "</g>\n";

  // Axes: names with min / max at the plot edges.
  const double x_axis_y = top + plot_h;
  s += "<g id=\"axes\" fill=\"#000000\">\n";
  s += "<rect x=\"" + fixed2(left) + "\" y=\"" + fixed2(top) + "\" width=\"" + fixed2(plot_w) + "\" height=\"" +
       fixed2(plot_h) + "\" fill=\"none\" stroke=\"#000000\"/>\n";
  s += "<text x=\"" + fixed2(left) + "\" y=\"" + fixed2(x_axis_y + 16) + "\" text-anchor=\"start\">" +
       detail::tick(grid.x_min) + "</text>\n";
  s += "<text x=\"" + fixed2(left + plot_w) + "\" y=\"" + fixed2(x_axis_y + 16) + "\" text-anchor=\"end\">" +
       detail::tick(grid.x_max) + "</text>\n";
  s += "<text x=\"" + fixed2(left + plot_w / 2) + "\" y=\"" + fixed2(x_axis_y + 36) + "\" text-anchor=\"middle\">" +
       grid.x_name + "</text>\n";
  s += "<text x=\"" + fixed2(left - 6) + "\" y=\"" + fixed2(x_axis_y) + "\" text-anchor=\"end\">" +
       detail::tick(grid.y_min) + "</text>\n";
  s += "<text x=\"" + fixed2(left - 6) + "\" y=\"" + fixed2(top + 10) + "\" text-anchor=\"end\">" +
       detail::tick(grid.y_max) + "</text>\n";
  s += "<text x=\"" + fixed2(left - 50) + "\" y=\"" + fixed2(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 " +
       fixed2(left - 50) + " " + fixed2(top + plot_h / 2) + ")\">" + grid.y_name + "</text>\n";
  s += "<text x=\"" + fixed2(left + plot_w / 2) + "\" y=\"" + fixed2(top - 14) + "\" text-anchor=\"middle\">" +
       grid.column + "</text>\n";
  s += "</g>\n";

  // Colorbar: gradient through the exact stops, five ticks.
  s += "<defs><linearGradient id=\"cbar\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">\n";
  for (int i = 0; i < 5; ++i) {
    s += "<stop offset=\"" + fixed2(0.25 * i) + "\" stop-color=\"" + hex(kColorStops[i]) + "\"/>\n";
  }
  s += "</linearGradient></defs>\n";
  s += "<g id=\"colorbar\">\n";
  s += "<rect x=\"" + fixed2(bar_x) + "\" y=\"" + fixed2(top) + "\" width=\"" + fixed2(bar_w) + "\" height=\"" +
       fixed2(plot_h) + "\" fill=\"url(#cbar)\" stroke=\"#000000\"/>\n";
  const bool have_range = std::isfinite(lo) && std::isfinite(hi);
  for (int i = 0; i < 5; ++i) {
    const double frac = 0.25 * i;
    const double y = top + plot_h * (1.0 - frac);
    std::string label = "n/a";
    if (have_range) {
      const double v = hi > lo ? lo + frac * (hi - lo) : lo;
      label = detail::tick(scale == ColorScale::log10 ? std::pow(10.0, v) : v);
    }
    s += "<line x1=\"" + fixed2(bar_x + bar_w) + "\" y1=\"" + fixed2(y) + "\" x2=\"" + fixed2(bar_x + bar_w + 4) +
         "\" y2=\"" + fixed2(y) + "\" stroke=\"#000000\"/>\n";
    s += "<text x=\"" + fixed2(bar_x + bar_w + 6) + "\" y=\"" + fixed2(y + 4) + "\">" + label + "</text>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

inline std::string emit_heatmap(const SweepResult& result, std::string_view column, ColorScale scale) {
  return emit_heatmap(heatmap_grid(result, column), scale);
}

}  // namespace aqrsm::io
