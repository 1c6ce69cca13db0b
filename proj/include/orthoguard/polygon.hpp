#pragma once

// Simple orthogonal polygons: representation, validation and vertex
// classification.

#include "orthoguard/rational.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace orthoguard {

/// Vertices in counterclockwise order; edge i runs from vertex i to vertex i+1.
struct OrthoPolygon {
  std::vector<Point> vertices;

  std::size_t size() const { return vertices.size(); }
  const Point& vertex(std::size_t i) const { return vertices[i % vertices.size()]; }

  friend bool operator==(const OrthoPolygon&, const OrthoPolygon&) = default;
};

enum class ViolationKind { TooFewVertices, NonInteger, NonOrthogonal, NonSimple, NotCcw, GeneralPosition };

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::TooFewVertices: return "too-few-vertices";
    case ViolationKind::NonInteger: return "non-integer";
    case ViolationKind::NonOrthogonal: return "non-orthogonal";
    case ViolationKind::NonSimple: return "non-simple";
    case ViolationKind::NotCcw: return "not-ccw";
    case ViolationKind::GeneralPosition: return "general-position";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> indices;  // vertex or edge indices, see message
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const {
    return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
  }
};

enum class VertexKind { Convex, Reflex };

namespace detail {

inline int sign(const Coord& c) { return c > 0 ? 1 : (c < 0 ? -1 : 0); }

// Unit direction of edge i as (dx, dy) in {-1,0,1}^2.
inline std::pair<int, int> edge_dir(const OrthoPolygon& p, std::size_t i) {
  const Point& a = p.vertex(i);
  const Point& b = p.vertex(i + 1);
  return {sign(b.x - a.x), sign(b.y - a.y)};
}

inline BigInt twice_signed_area(const OrthoPolygon& p) {
  BigInt acc = 0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = p.vertex(i);
    const Point& b = p.vertex(i + 1);
    acc += numerator_of(a.x) * numerator_of(b.y) - numerator_of(b.x) * numerator_of(a.y);
  }
  return acc;
}

// Parity ray cast along +x over vertical edges. The point must not lie on
// the boundary.
inline bool strictly_inside_by_parity(const OrthoPolygon& p, const Coord& x, const Coord& y) {
  bool in = false;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = p.vertex(i);
    const Point& b = p.vertex(i + 1);
    if (a.x != b.x || a.x <= x) continue;
    const Coord& lo = a.y < b.y ? a.y : b.y;
    const Coord& hi = a.y < b.y ? b.y : a.y;
    if (lo <= y && y < hi) in = !in;
  }
  return in;
}

struct AxisEdge {
  std::size_t index;
  int line;      // rank of the fixed coordinate
  int lo, hi;    // ranks of the varying coordinate, lo < hi
};

inline std::vector<int> ranks_of(const std::vector<BigInt>& values, const std::vector<BigInt>& sorted) {
  std::vector<int> r(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    r[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin());
  return r;
}

inline bool consecutive_edges(std::size_t i, std::size_t j, std::size_t n) {
  return (i + 1) % n == j || (j + 1) % n == i;
}

// Collinear edges on one line must not overlap or touch.
inline void check_collinear(std::vector<AxisEdge> edges, std::vector<Violation>& out) {
  std::sort(edges.begin(), edges.end(), [](const AxisEdge& a, const AxisEdge& b) {
    return std::tie(a.line, a.lo, a.index) < std::tie(b.line, b.lo, b.index);
  });
  for (std::size_t s = 0; s < edges.size();) {
    std::size_t e = s;
    while (e < edges.size() && edges[e].line == edges[s].line) ++e;
    int reach = edges[s].hi;
    std::size_t reach_idx = edges[s].index;
    for (std::size_t k = s + 1; k < e; ++k) {
      if (edges[k].lo <= reach) {
        out.push_back({ViolationKind::NonSimple, {reach_idx, edges[k].index},
                       "collinear edges " + std::to_string(reach_idx) + " and " + std::to_string(edges[k].index) +
                           " overlap or touch"});
      }
      if (edges[k].hi > reach) {
        reach = edges[k].hi;
        reach_idx = edges[k].index;
      }
    }
    s = e;
  }
}

}  // namespace detail

/// Labels each vertex by its interior angle. Assumes counterclockwise order.
inline std::vector<VertexKind> classify_vertices(const OrthoPolygon& poly) {
  const std::size_t n = poly.size();
  std::vector<VertexKind> out(n, VertexKind::Convex);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [ux, uy] = detail::edge_dir(poly, i + n - 1);
    const auto [wx, wy] = detail::edge_dir(poly, i);
    out[i] = (ux * wy - uy * wx) > 0 ? VertexKind::Convex : VertexKind::Reflex;
  }
  return out;
}

inline std::size_t reflex_count(const OrthoPolygon& poly) {
  const auto kinds = classify_vertices(poly);
  return static_cast<std::size_t>(std::count(kinds.begin(), kinds.end(), VertexKind::Reflex));
}

/// Checks every structural invariant of a simple orthogonal polygon plus the
/// general-position rule for chords joining reflex vertices through the
/// interior. Never throws on malformed input; each problem becomes a
/// violation entry.
inline ValidationReport validate(const OrthoPolygon& poly) {
  ValidationReport rep;
  auto& out = rep.violations;
  const std::size_t n = poly.size();
  if (n < 4) {
    out.push_back({ViolationKind::TooFewVertices, {}, "polygon needs at least 4 vertices, got " + std::to_string(n)});
    return rep;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_integer(poly.vertices[i].x) || !is_integer(poly.vertices[i].y))
      out.push_back({ViolationKind::NonInteger, {i}, "vertex " + std::to_string(i) + " has a non-integer coordinate"});
  }
  if (n % 2 != 0)
    out.push_back({ViolationKind::NonOrthogonal, {}, "odd vertex count " + std::to_string(n)});

  bool edges_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [dx, dy] = detail::edge_dir(poly, i);
    if (dx == 0 && dy == 0) {
      out.push_back({ViolationKind::NonSimple, {i, (i + 1) % n},
                     "degenerate edge " + std::to_string(i) + " (repeated vertex)"});
      edges_ok = false;
    } else if (dx != 0 && dy != 0) {
      out.push_back({ViolationKind::NonOrthogonal, {i}, "edge " + std::to_string(i) + " is not axis-parallel"});
      edges_ok = false;
    }
  }
  if (edges_ok) {
    for (std::size_t i = 0; i < n; ++i) {
      const bool h0 = detail::edge_dir(poly, i).second == 0;
      const bool h1 = detail::edge_dir(poly, i + 1).second == 0;
      if (h0 == h1) {
        out.push_back({ViolationKind::NonOrthogonal, {i, (i + 1) % n},
                       "edges " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                           " do not alternate horizontal/vertical"});
        edges_ok = false;
      }
    }
  }
  if (!edges_ok || !out.empty()) return rep;

  // Rank-compress coordinates for the intersection tests.
  std::vector<BigInt> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = numerator_of(poly.vertices[i].x);
    ys[i] = numerator_of(poly.vertices[i].y);
  }
  auto uniq = [](std::vector<BigInt> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const auto xsorted = uniq(xs);
  const auto ysorted = uniq(ys);
  const auto xr = detail::ranks_of(xs, xsorted);
  const auto yr = detail::ranks_of(ys, ysorted);

  std::vector<detail::AxisEdge> hor, ver;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (yr[i] == yr[j])
      hor.push_back({i, yr[i], std::min(xr[i], xr[j]), std::max(xr[i], xr[j])});
    else
      ver.push_back({i, xr[i], std::min(yr[i], yr[j]), std::max(yr[i], yr[j])});
  }
  detail::check_collinear(hor, out);
  detail::check_collinear(ver, out);

  std::vector<detail::AxisEdge> ver_by_x = ver;
  std::sort(ver_by_x.begin(), ver_by_x.end(),
            [](const detail::AxisEdge& a, const detail::AxisEdge& b) { return a.line < b.line; });
  for (const auto& h : hor) {
    auto it = std::lower_bound(ver_by_x.begin(), ver_by_x.end(), h.lo,
                               [](const detail::AxisEdge& e, int x) { return e.line < x; });
    for (; it != ver_by_x.end() && it->line <= h.hi; ++it) {
      if (it->lo <= h.line && h.line <= it->hi && !detail::consecutive_edges(h.index, it->index, n)) {
        out.push_back({ViolationKind::NonSimple, {h.index, it->index},
                       "edges " + std::to_string(h.index) + " and " + std::to_string(it->index) + " intersect"});
      }
    }
  }
  if (!out.empty()) return rep;

  if (detail::twice_signed_area(poly) <= 0) {
    out.push_back({ViolationKind::NotCcw, {}, "vertices are not in counterclockwise order"});
    return rep;
  }

  // General position: consecutive reflex vertices on a common axis line whose
  // open connecting chord lies in the interior must have interior rays in
  // exactly three compass directions.
  const auto kinds = classify_vertices(poly);
  auto rays = [&](std::size_t i) {
    const auto u = detail::edge_dir(poly, i + n - 1);
    const auto w = detail::edge_dir(poly, i);
    return std::array<std::pair<int, int>, 2>{u, std::pair<int, int>{-w.first, -w.second}};
  };
  auto chord_interior = [&](std::size_t a, std::size_t b, bool horizontal) {
    // Open chord must avoid the boundary; then its midpoint decides.
    const int fixed = horizontal ? yr[a] : xr[a];
    const int lo = horizontal ? std::min(xr[a], xr[b]) : std::min(yr[a], yr[b]);
    const int hi = horizontal ? std::max(xr[a], xr[b]) : std::max(yr[a], yr[b]);
    const auto& crossing = horizontal ? ver : hor;
    const auto& along = horizontal ? hor : ver;
    for (const auto& e : crossing)
      if (e.line > lo && e.line < hi && e.lo <= fixed && fixed <= e.hi) return false;
    for (const auto& e : along)
      if (e.line == fixed && e.lo < hi && e.hi > lo) return false;
    const Point& pa = poly.vertices[a];
    const Point& pb = poly.vertices[b];
    const Coord mx = (pa.x + pb.x) / 2;
    const Coord my = (pa.y + pb.y) / 2;
    return detail::strictly_inside_by_parity(poly, mx, my);
  };
  for (int pass = 0; pass < 2; ++pass) {
    const bool horizontal = pass == 0;
    std::vector<std::size_t> reflex;
    for (std::size_t i = 0; i < n; ++i)
      if (kinds[i] == VertexKind::Reflex) reflex.push_back(i);
    std::sort(reflex.begin(), reflex.end(), [&](std::size_t a, std::size_t b) {
      return horizontal ? std::pair(yr[a], xr[a]) < std::pair(yr[b], xr[b])
                        : std::pair(xr[a], yr[a]) < std::pair(xr[b], yr[b]);
    });
    for (std::size_t s = 0; s + 1 < reflex.size(); ++s) {
      const std::size_t a = reflex[s], b = reflex[s + 1];
      const bool same_line = horizontal ? yr[a] == yr[b] : xr[a] == xr[b];
      if (!same_line || !chord_interior(a, b, horizontal)) continue;
      auto dirs = std::vector<std::pair<int, int>>{rays(a)[0], rays(a)[1], rays(b)[0], rays(b)[1]};
      std::sort(dirs.begin(), dirs.end());
      dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
      if (dirs.size() != 3) {
        out.push_back({ViolationKind::GeneralPosition, {a, b},
                       "reflex vertices " + std::to_string(a) + " and " + std::to_string(b) +
                           " span a chord whose interior rays cover " + std::to_string(dirs.size()) +
                           " compass directions"});
      }
    }
  }
  return rep;
}

/// Boundary of a 4-connected, hole-free union of grid cells as a
/// counterclockwise orthogonal polygon. `in(a, b)` selects cell
/// [xcuts[a], xcuts[a+1]] x [ycuts[b], ycuts[b+1]].
inline OrthoPolygon trace_cell_union(int nx, int ny, const std::function<bool(int, int)>& in,
                                     const std::vector<BigInt>& xcuts, const std::vector<BigInt>& ycuts) {
  auto member = [&](int a, int b) { return a >= 0 && b >= 0 && a < nx && b < ny && in(a, b); };
  using Node = std::pair<int, int>;
  std::map<Node, std::vector<Node>> next;
  std::size_t edge_count = 0;
  for (int b = 0; b < ny; ++b) {
    for (int a = 0; a < nx; ++a) {
      if (!member(a, b)) continue;
      if (!member(a, b - 1)) next[{a, b}].push_back({a + 1, b}), ++edge_count;
      if (!member(a + 1, b)) next[{a + 1, b}].push_back({a + 1, b + 1}), ++edge_count;
      if (!member(a, b + 1)) next[{a + 1, b + 1}].push_back({a, b + 1}), ++edge_count;
      if (!member(a - 1, b)) next[{a, b + 1}].push_back({a, b}), ++edge_count;
    }
  }
  if (next.empty()) throw std::invalid_argument("trace_cell_union: empty cell set");
  for (const auto& [node, outs] : next)
    if (outs.size() != 1) throw std::invalid_argument("trace_cell_union: cell set pinches at a grid node");

  // Lowest-leftmost node lies on the outer boundary.
  Node start = next.begin()->first;
  for (const auto& [node, outs] : next)
    if (std::pair(node.second, node.first) < std::pair(start.second, start.first)) start = node;

  std::vector<Node> loop;
  Node cur = start;
  do {
    loop.push_back(cur);
    cur = next.at(cur).front();
  } while (cur != start && loop.size() <= edge_count);
  if (loop.size() != edge_count) throw std::invalid_argument("trace_cell_union: cell set has holes or is disconnected");

  OrthoPolygon poly;
  const std::size_t m = loop.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Node& p = loop[(i + m - 1) % m];
    const Node& q = loop[i];
    const Node& r = loop[(i + 1) % m];
    const bool straight = (p.first == q.first && q.first == r.first) || (p.second == q.second && q.second == r.second);
    if (!straight) poly.vertices.emplace_back(Coord(xcuts[q.first]), Coord(ycuts[q.second]));
  }
  return poly;
}

}  // namespace orthoguard
