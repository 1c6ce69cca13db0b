#pragma once

// Vertex-grid refinement of an orthogonal polygon and the exact point-to-point
// visibility predicates built on it.
//
// Positions are addressed by "doubled" grid indices: along an axis with cuts
// c_0 < ... < c_n, the value c_i maps to 2i and the open interval
// (c_i, c_{i+1}) maps to 2i+1. Cell a therefore has doubled index 2a+1.

#include "orthoguard/polygon.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace orthoguard {

struct CellId {
  int a = 0;  // column
  int b = 0;  // row (0 = lowest)

  friend bool operator==(const CellId&, const CellId&) = default;
  friend auto operator<=>(const CellId&, const CellId&) = default;
};

enum class Location { Inside, Boundary, Outside };

inline const char* to_string(Location l) {
  switch (l) {
    case Location::Inside: return "inside";
    case Location::Boundary: return "boundary";
    case Location::Outside: return "outside";
  }
  return "?";
}

/// Doubled-index position of a point inside the grid's bounding box.
struct GridPos {
  int x = 0;
  int y = 0;
};

class CellGrid {
 public:
  CellGrid() = default;

  /// Builds the grid. The polygon must pass validate().
  explicit CellGrid(const OrthoPolygon& poly) {
    const std::size_t n = poly.size();
    if (n < 4) throw std::invalid_argument("CellGrid: polygon has fewer than 4 vertices");
    std::vector<BigInt> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = numerator_of(poly.vertices[i].x);
      ys[i] = numerator_of(poly.vertices[i].y);
    }
    xcuts_ = xs;
    ycuts_ = ys;
    for (auto* v : {&xcuts_, &ycuts_}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    nx_ = static_cast<int>(xcuts_.size()) - 1;
    ny_ = static_cast<int>(ycuts_.size()) - 1;
    inside_.assign(static_cast<std::size_t>(nx_) * ny_, 0);

    // Parity of vertical edges left of each cell, accumulated per row.
    std::vector<std::uint8_t> toggle(static_cast<std::size_t>(nx_ + 1) * ny_, 0);
    const auto xr = detail::ranks_of(xs, xcuts_);
    const auto yr = detail::ranks_of(ys, ycuts_);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      if (xr[i] != xr[j]) continue;
      for (int b = std::min(yr[i], yr[j]); b < std::max(yr[i], yr[j]); ++b)
        toggle[static_cast<std::size_t>(b) * (nx_ + 1) + xr[i]] ^= 1;
    }
    for (int b = 0; b < ny_; ++b) {
      std::uint8_t par = 0;
      for (int a = 0; a < nx_; ++a) {
        par ^= toggle[static_cast<std::size_t>(b) * (nx_ + 1) + a];
        inside_[idx(a, b)] = par;
      }
    }

    outside_prefix_.assign(static_cast<std::size_t>(nx_ + 1) * (ny_ + 1), 0);
    for (int a = 0; a < nx_; ++a)
      for (int b = 0; b < ny_; ++b)
        outside_prefix_[pidx(a + 1, b + 1)] = outside_prefix_[pidx(a, b + 1)] + outside_prefix_[pidx(a + 1, b)] -
                                              outside_prefix_[pidx(a, b)] + (inside_[idx(a, b)] ? 0 : 1);

    for (int a = 0; a < nx_; ++a)
      for (int b = 0; b < ny_; ++b)
        if (inside_[idx(a, b)]) cells_.push_back({a, b});
    ordinal_.assign(inside_.size(), -1);
    for (std::size_t i = 0; i < cells_.size(); ++i) ordinal_[idx(cells_[i].a, cells_[i].b)] = static_cast<int>(i);
  }

  int columns() const { return nx_; }
  int rows() const { return ny_; }
  const std::vector<BigInt>& xcuts() const { return xcuts_; }
  const std::vector<BigInt>& ycuts() const { return ycuts_; }

  bool inside(int a, int b) const {
    if (a < 0 || b < 0 || a >= nx_ || b >= ny_) return false;
    return inside_[idx(a, b)] != 0;
  }
  bool inside(CellId c) const { return inside(c.a, c.b); }

  /// Inside cells in (column, row) lexicographic order.
  const std::vector<CellId>& inside_cells() const { return cells_; }
  std::size_t inside_count() const { return cells_.size(); }

  /// Position of `c` within inside_cells(), or -1.
  int ordinal(CellId c) const { return inside(c) ? ordinal_[idx(c.a, c.b)] : -1; }

  Point center(CellId c) const {
    return Point(Coord(xcuts_[c.a] + xcuts_[c.a + 1], 2), Coord(ycuts_[c.b] + ycuts_[c.b + 1], 2));
  }

  /// True iff every cell in columns [a0,a1] x rows [b0,b1] is inside.
  bool rect_inside(int a0, int a1, int b0, int b1) const {
    if (a0 > a1 || b0 > b1) return true;
    if (a0 < 0 || b0 < 0 || a1 >= nx_ || b1 >= ny_) return false;
    const int outside = outside_prefix_[pidx(a1 + 1, b1 + 1)] - outside_prefix_[pidx(a0, b1 + 1)] -
                        outside_prefix_[pidx(a1 + 1, b0)] + outside_prefix_[pidx(a0, b0)];
    return outside == 0;
  }

  static std::optional<int> locate(const std::vector<BigInt>& cuts, const Coord& v) {
    if (v < Coord(cuts.front()) || v > Coord(cuts.back())) return std::nullopt;
    // First cut >= v.
    auto it = std::lower_bound(cuts.begin(), cuts.end(), v, [](const BigInt& c, const Coord& val) { return Coord(c) < val; });
    const int i = static_cast<int>(it - cuts.begin());
    if (Coord(*it) == v) return 2 * i;
    return 2 * i - 1;
  }

  std::optional<GridPos> locate(const Point& p) const {
    auto x = locate(xcuts_, p.x);
    auto y = locate(ycuts_, p.y);
    if (!x || !y) return std::nullopt;
    return GridPos{*x, *y};
  }

  Location location(const GridPos& g) const {
    int in = 0, total = 0;
    for (int a : incident(g.x))
      for (int b : incident(g.y)) {
        ++total;
        in += inside(a, b) ? 1 : 0;
      }
    if (in == 0) return Location::Outside;
    return in == total ? Location::Inside : Location::Boundary;
  }

  Location location(const Point& p) const {
    auto g = locate(p);
    return g ? location(*g) : Location::Outside;
  }

  /// Closed axis-parallel rectangle spanned by two doubled positions lies in
  /// the closed polygon. Along a non-degenerate axis every cell meeting the
  /// open range must be inside; along a degenerate axis one of the incident
  /// cells suffices.
  bool rect_in_polygon(const GridPos& p, const GridPos& q) const {
    const int x0 = std::min(p.x, q.x), x1 = std::max(p.x, q.x);
    const int y0 = std::min(p.y, q.y), y1 = std::max(p.y, q.y);
    const bool xdeg = x0 == x1, ydeg = y0 == y1;
    auto cell_range = [](int lo, int hi) { return std::pair<int, int>{lo / 2, (hi - 1) / 2}; };
    if (!xdeg && !ydeg) {
      const auto [a0, a1] = cell_range(x0, x1);
      const auto [b0, b1] = cell_range(y0, y1);
      return rect_inside(a0, a1, b0, b1);
    }
    if (xdeg && ydeg) return location(p) != Location::Outside;
    if (xdeg) {
      const auto cols = incident(x0);
      const auto [b0, b1] = cell_range(y0, y1);
      for (int b = b0; b <= b1; ++b) {
        bool any = false;
        for (int a : cols) any = any || inside(a, b);
        if (!any) return false;
      }
      return true;
    }
    const auto rows = incident(y0);
    const auto [a0, a1] = cell_range(x0, x1);
    for (int a = a0; a <= a1; ++a) {
      bool any = false;
      for (int b : rows) any = any || inside(a, b);
      if (!any) return false;
    }
    return true;
  }

  static GridPos cell_pos(CellId c) { return {2 * c.a + 1, 2 * c.b + 1}; }

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * ny_ + b; }
  std::size_t pidx(int a, int b) const { return static_cast<std::size_t>(a) * (ny_ + 1) + b; }

  // Cells whose closure contains the doubled position d along one axis.
  static std::vector<int> incident(int d) {
    if (d % 2 != 0) return {(d - 1) / 2};
    return {d / 2 - 1, d / 2};
  }

  int nx_ = 0, ny_ = 0;
  std::vector<BigInt> xcuts_, ycuts_;
  std::vector<std::uint8_t> inside_;
  std::vector<int> outside_prefix_;
  std::vector<CellId> cells_;
  std::vector<int> ordinal_;
};

inline CellGrid build_grid(const OrthoPolygon& poly) { return CellGrid(poly); }

inline Location point_location(const Point& p, const CellGrid& grid) { return grid.location(p); }
inline Location point_location(const Point& p, const OrthoPolygon& poly) { return CellGrid(poly).location(p); }

namespace detail {
inline GridPos require_in_polygon(const Point& p, const CellGrid& grid, const char* what) {
  auto g = grid.locate(p);
  if (!g || grid.location(*g) == Location::Outside)
    throw std::domain_error(std::string(what) + ": point " + format_point(p) + " lies outside the polygon");
  return *g;
}
}  // namespace detail

/// R[p,q] is contained in the closed polygon.
inline bool r_visible(const Point& p, const Point& q, const CellGrid& grid) {
  const GridPos gp = detail::require_in_polygon(p, grid, "r_visible");
  const GridPos gq = detail::require_in_polygon(q, grid, "r_visible");
  return grid.rect_in_polygon(gp, gq);
}

inline bool r_visible(const Point& p, const Point& q, const OrthoPolygon& poly) {
  return r_visible(p, q, CellGrid(poly));
}

/// Closed segment pq is contained in the closed polygon. The segment is cut
/// at every grid-line crossing; membership is constant on each open piece,
/// so testing the piece midpoints decides it exactly.
inline bool l_visible(const Point& p, const Point& q, const CellGrid& grid) {
  detail::require_in_polygon(p, grid, "l_visible");
  detail::require_in_polygon(q, grid, "l_visible");
  if (p == q) return true;
  std::vector<Coord> params{Coord(0), Coord(1)};
  auto add_crossings = [&](const std::vector<BigInt>& cuts, const Coord& from, const Coord& to) {
    if (from == to) return;
    const Coord lo = from < to ? from : to;
    const Coord hi = from < to ? to : from;
    auto it = std::upper_bound(cuts.begin(), cuts.end(), lo, [](const Coord& v, const BigInt& c) { return v < Coord(c); });
    for (; it != cuts.end() && Coord(*it) < hi; ++it) params.push_back((Coord(*it) - from) / (to - from));
  };
  add_crossings(grid.xcuts(), p.x, q.x);
  add_crossings(grid.ycuts(), p.y, q.y);
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());
  for (std::size_t i = 0; i + 1 < params.size(); ++i) {
    const Coord t = (params[i] + params[i + 1]) / 2;
    const Point mid(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y));
    if (grid.location(mid) == Location::Outside) return false;
  }
  return true;
}

inline bool l_visible(const Point& p, const Point& q, const OrthoPolygon& poly) {
  return l_visible(p, q, CellGrid(poly));
}

/// Cell-to-cell r-visibility: the rectangular hull of the two cells is
/// entirely inside.
inline bool cells_r_visible(CellId c1, CellId c2, const CellGrid& grid) {
  if (!grid.inside(c1) || !grid.inside(c2)) return false;
  return grid.rect_inside(std::min(c1.a, c2.a), std::max(c1.a, c2.a), std::min(c1.b, c2.b), std::max(c1.b, c2.b));
}

/// Row-per-cell bitsets of cell-to-cell r-visibility over inside_cells().
class VisibilityTable {
 public:
  explicit VisibilityTable(const CellGrid& grid) : count_(grid.inside_count()), words_((count_ + 63) / 64) {
    bits_.assign(count_ * words_, 0);
    const auto& cells = grid.inside_cells();
    for (std::size_t i = 0; i < count_; ++i)
      for (std::size_t j = i; j < count_; ++j)
        if (cells_r_visible(cells[i], cells[j], grid)) {
          set(i, j);
          set(j, i);
        }
  }

  std::size_t size() const { return count_; }
  bool visible(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u; }

  std::vector<std::uint64_t> row(std::size_t i) const {
    return {bits_.begin() + static_cast<std::ptrdiff_t>(i * words_),
            bits_.begin() + static_cast<std::ptrdiff_t>((i + 1) * words_)};
  }

  std::vector<std::size_t> neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < count_; ++j)
      if (visible(i, j)) out.push_back(j);
    return out;
  }

 private:
  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }

  std::size_t count_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Partition of the inside cells into classes with identical r-visibility
/// sets. Classes are ordered by their first cell.
inline std::vector<std::vector<CellId>> canonical_cells(const CellGrid& grid) {
  const VisibilityTable vis(grid);
  std::map<std::vector<std::uint64_t>, std::size_t> class_of;
  std::vector<std::vector<CellId>> classes;
  for (std::size_t i = 0; i < vis.size(); ++i) {
    auto [it, fresh] = class_of.emplace(vis.row(i), classes.size());
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(grid.inside_cells()[i]);
  }
  return classes;
}

}  // namespace orthoguard
