#pragma once

// Deterministic SVG rendering of polygons, grid cells and guards.

#include "orthoguard/chromatic.hpp"

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace orthoguard {

struct RenderSpec {
  double scale = 20.0;
  bool show_cells = false;
  bool squash_rows = false;  // y-cuts drawn at uniform spacing; stretched spikes get depth labels
};

inline const char* palette_color(int flat_id) {
  static const char* kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4",
                                   "#f032e6", "#bfef45", "#469990", "#9a6324", "#800000", "#808000",
                                   "#000075", "#a9a9a9", "#fabed4", "#ffd8b1", "#aaffc3", "#dcbeff"};
  constexpr int n = sizeof(kPalette) / sizeof(kPalette[0]);
  return kPalette[((flat_id - 1) % n + n) % n];
}

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

// Maps polygon coordinates to SVG coordinates, optionally squashing rows.
class Projection {
 public:
  Projection(const CellGrid& grid, const RenderSpec& spec) : grid_(grid), spec_(spec) {}

  double x(const Coord& v) const {
    return (v - Coord(grid_.xcuts().front())).convert_to<double>() * spec_.scale + margin;
  }
  double y(const Coord& v) const { return (top() - ycoord(v)) * spec_.scale + margin; }
  double width() const { return (Coord(grid_.xcuts().back() - grid_.xcuts().front())).convert_to<double>() * spec_.scale + 2 * margin; }
  double height() const { return (top() - ycoord(Coord(grid_.ycuts().front()))) * spec_.scale + 2 * margin; }

  static constexpr double margin = 40.0;

 private:
  double top() const { return ycoord(Coord(grid_.ycuts().back())); }
  double ycoord(const Coord& v) const {
    if (!spec_.squash_rows) return v.convert_to<double>();
    // Piecewise-linear map sending y-cut i to i.
    const auto& ys = grid_.ycuts();
    for (std::size_t i = 0; i + 1 < ys.size(); ++i)
      if (v <= Coord(ys[i + 1])) return static_cast<double>(i) + ((v - Coord(ys[i])) / Coord(ys[i + 1] - ys[i])).convert_to<double>();
    return static_cast<double>(ys.size() - 1);
  }

  const CellGrid& grid_;
  const RenderSpec& spec_;
};

}  // namespace detail

inline std::string render_svg(const OrthoPolygon& poly, const ChromaticGuarding* guarding, const RenderSpec& spec) {
  const CellGrid grid(poly);
  const detail::Projection pr(grid, spec);
  using detail::num;
  std::ostringstream out;
  const double legend_h = guarding ? 24.0 : 0.0;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(pr.width() + 160) << "\" height=\""
      << num(pr.height() + legend_h) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (spec.show_cells) {
    out << "<g class=\"cells\" fill=\"#f4f4f4\" stroke=\"#cccccc\" stroke-width=\"0.5\">\n";
    for (const CellId& c : grid.inside_cells()) {
      const double x0 = pr.x(Coord(grid.xcuts()[c.a])), x1 = pr.x(Coord(grid.xcuts()[c.a + 1]));
      const double y0 = pr.y(Coord(grid.ycuts()[c.b + 1])), y1 = pr.y(Coord(grid.ycuts()[c.b]));
      out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0) << "\" height=\""
          << num(y1 - y0) << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "<g class=\"outline\" stroke=\"black\" stroke-width=\"1.5\">\n";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly.vertex(i);
    const Point& b = poly.vertex(i + 1);
    out << "<line x1=\"" << num(pr.x(a.x)) << "\" y1=\"" << num(pr.y(a.y)) << "\" x2=\"" << num(pr.x(b.x)) << "\" y2=\""
        << num(pr.y(b.y)) << "\"/>\n";
  }
  out << "</g>\n";

  if (spec.squash_rows) {
    if (auto spike = recognize_spike(poly); spike && spike->second) {
      const int m = spike->first;
      out << "<g class=\"rows\" font-family=\"monospace\" font-size=\"11\">\n";
      for (int i = 1; i <= m; ++i) {
        const Coord yb = -Coord(row_bottom(m, i, true));
        out << "<text x=\"" << num(pr.width() + 4) << "\" y=\"" << num(pr.y(yb)) << "\">row " << i << ": depth 2^"
            << (i - 1) * m << "</text>\n";
      }
      out << "</g>\n";
    }
  }

  if (guarding) {
    std::map<int, int> legend;  // flat id -> final color
    out << "<g class=\"guards\" font-family=\"monospace\" font-size=\"9\" text-anchor=\"middle\">\n";
    for (const auto& g : guarding->guards) {
      legend.emplace(g.flat, g.color);
      const double cx = pr.x(g.p.x), cy = pr.y(g.p.y);
      out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"5\" fill=\"" << palette_color(g.flat)
          << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
      out << "<text x=\"" << num(cx) << "\" y=\"" << num(cy - 7) << "\">" << g.color << "</text>\n";
    }
    out << "</g>\n";
    out << "<g class=\"legend\" font-family=\"monospace\" font-size=\"11\">\n";
    double lx = detail::Projection::margin;
    const double ly = pr.height() + 8;
    for (const auto& [flat, color] : legend) {
      out << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" width=\"10\" height=\"10\" fill=\""
          << palette_color(flat) << "\"/>\n";
      out << "<text x=\"" << num(lx + 14) << "\" y=\"" << num(ly + 9) << "\">color " << color << "</text>\n";
      lx += 80;
    }
    out << "</g>\n";
  } else {
    out << "<g class=\"legend\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace orthoguard
