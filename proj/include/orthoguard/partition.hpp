#pragma once

// Window partition of an orthogonal polygon into weak r-visibility polygons
// (histograms) and their grouping into six mutually independent classes.
//
// Everything runs on the vertex grid. A histogram is described by its base
// segment, the inward direction, and one strip of cells per base cell.

#include "orthoguard/grid.hpp"
#include "orthoguard/spikes.hpp"

#include <array>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace orthoguard {

enum class Dir { N, S, E, W };

inline const char* to_string(Dir d) {
  switch (d) {
    case Dir::N: return "N";
    case Dir::S: return "S";
    case Dir::E: return "E";
    case Dir::W: return "W";
  }
  return "?";
}

inline std::pair<int, int> delta(Dir d) {
  switch (d) {
    case Dir::N: return {0, 1};
    case Dir::S: return {0, -1};
    case Dir::E: return {1, 0};
    case Dir::W: return {-1, 0};
  }
  return {0, 0};
}

inline bool is_vertical(Dir d) { return d == Dir::N || d == Dir::S; }

/// Axis-parallel segment on a grid line. For a horizontal segment `line` is a
/// y-cut index and [lo, hi] are the column indices of the cells it borders;
/// for a vertical one `line` is an x-cut index and [lo, hi] are rows.
struct GridSegment {
  bool horizontal = true;
  int line = 0;
  int lo = 0;
  int hi = -1;

  friend bool operator==(const GridSegment&, const GridSegment&) = default;
};

inline std::pair<Point, Point> endpoints(const GridSegment& s, const CellGrid& g) {
  if (s.horizontal) {
    const Coord y(g.ycuts()[s.line]);
    return {Point(Coord(g.xcuts()[s.lo]), y), Point(Coord(g.xcuts()[s.hi + 1]), y)};
  }
  const Coord x(g.xcuts()[s.line]);
  return {Point(x, Coord(g.ycuts()[s.lo])), Point(x, Coord(g.ycuts()[s.hi + 1]))};
}

/// Window of a histogram: a segment of its boundary that is not on the
/// polygon boundary, with the direction pointing away from the histogram.
struct Window {
  GridSegment seg;
  Dir outward = Dir::E;
  Side side = Side::L;
  int child = -1;
};

struct WeakVisPolygon {
  OrthoPolygon polygon;
  GridSegment base;
  Dir inward = Dir::S;
  std::vector<int> heights;  // cells per strip, strip s sits on base cell base.lo + s
  std::vector<Window> windows;

  std::size_t strip_count() const { return heights.size(); }

  /// Cell t steps away from the base in strip s (t = 0 touches the base).
  CellId cell(std::size_t s, int t) const {
    const int along = base.lo + static_cast<int>(s);
    switch (inward) {
      case Dir::S: return {along, base.line - 1 - t};
      case Dir::N: return {along, base.line + t};
      case Dir::E: return {base.line + t, along};
      case Dir::W: return {base.line - 1 - t, along};
    }
    return {};
  }

  std::vector<CellId> cells() const {
    std::vector<CellId> out;
    for (std::size_t s = 0; s < heights.size(); ++s)
      for (int t = 0; t < heights[s]; ++t) out.push_back(cell(s, t));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t cell_count() const {
    std::size_t c = 0;
    for (int h : heights) c += static_cast<std::size_t>(h);
    return c;
  }
};

namespace detail {

inline int turn(Dir from, Dir to) {
  const auto [ax, ay] = delta(from);
  const auto [bx, by] = delta(to);
  return ax * by - ay * bx;
}

/// Grows the histogram of `base` through cells accepted by `available` and
/// collects windows towards other available cells.
inline WeakVisPolygon grow_histogram(const CellGrid& grid, const GridSegment& base, Dir inward,
                                     const std::function<bool(CellId)>& available) {
  WeakVisPolygon w;
  w.base = base;
  w.inward = inward;
  w.heights.assign(static_cast<std::size_t>(base.hi - base.lo + 1), 0);
  for (std::size_t s = 0; s < w.heights.size(); ++s) {
    int t = 0;
    while (available(w.cell(s, t))) ++t;
    w.heights[s] = t;
    if (t == 0) throw std::logic_error("histogram strip " + std::to_string(s) + " is empty");
  }
  const auto members = w.cells();
  auto member = [&](CellId c) { return std::binary_search(members.begin(), members.end(), c); };
  w.polygon = trace_cell_union(
      grid.columns(), grid.rows(), [&](int a, int b) { return member({a, b}); }, grid.xcuts(), grid.ycuts());

  // Lateral neighbours that are available but outside the histogram form windows.
  const std::array<Dir, 2> lateral = is_vertical(inward) ? std::array{Dir::W, Dir::E} : std::array{Dir::S, Dir::N};
  struct Edge {
    int line, pos;
    Dir out;
  };
  std::vector<Edge> edges;
  for (const CellId& c : members) {
    for (Dir d : lateral) {
      const auto [dx, dy] = delta(d);
      const CellId nb{c.a + dx, c.b + dy};
      if (member(nb) || !available(nb)) continue;
      if (is_vertical(inward))
        edges.push_back({d == Dir::E ? c.a + 1 : c.a, c.b, d});
      else
        edges.push_back({d == Dir::N ? c.b + 1 : c.b, c.a, d});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tuple(x.line, static_cast<int>(x.out), x.pos) < std::tuple(y.line, static_cast<int>(y.out), y.pos);
  });
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i + 1;
    while (j < edges.size() && edges[j].line == edges[i].line && edges[j].out == edges[i].out &&
           edges[j].pos == edges[j - 1].pos + 1)
      ++j;
    Window win;
    win.seg = {!is_vertical(inward), edges[i].line, edges[i].pos, edges[j - 1].pos};
    win.outward = edges[i].out;
    win.side = turn(inward, win.outward) > 0 ? Side::L : Side::R;
    w.windows.push_back(win);
    i = j;
  }
  return w;
}

}  // namespace detail

/// Histogram r-visible from polygon edge `edge` (vertex edge -> edge+1),
/// which must be horizontal with two convex endpoints.
inline WeakVisPolygon weak_vis_polygon(const OrthoPolygon& poly, std::size_t edge, const CellGrid& grid) {
  const std::size_t n = poly.size();
  if (edge >= n) throw std::invalid_argument("weak_vis_polygon: edge index out of range");
  const Point& p = poly.vertex(edge);
  const Point& q = poly.vertex(edge + 1);
  if (p.y != q.y) throw std::invalid_argument("weak_vis_polygon: edge " + std::to_string(edge) + " is not horizontal");
  const auto kinds = classify_vertices(poly);
  if (kinds[edge] != VertexKind::Convex || kinds[(edge + 1) % n] != VertexKind::Convex)
    throw std::invalid_argument("weak_vis_polygon: edge " + std::to_string(edge) + " has a reflex endpoint");
  const auto gp = grid.locate(p), gq = grid.locate(q);
  GridSegment base{true, gp->y / 2, std::min(gp->x, gq->x) / 2, std::max(gp->x, gq->x) / 2 - 1};
  const Dir inward = q.x < p.x ? Dir::S : Dir::N;
  return detail::grow_histogram(grid, base, inward, [&](CellId c) { return grid.inside(c); });
}

inline WeakVisPolygon weak_vis_polygon(const OrthoPolygon& poly, std::size_t edge) {
  return weak_vis_polygon(poly, edge, CellGrid(poly));
}

/// Index of the highest horizontal edge, leftmost among ties.
inline std::size_t starting_edge(const OrthoPolygon& poly) {
  std::size_t best = poly.size();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly.vertex(i);
    const Point& q = poly.vertex(i + 1);
    if (p.y != q.y) continue;
    if (best == poly.size()) {
      best = i;
      continue;
    }
    const Point& b = poly.vertex(best);
    const Point& c = poly.vertex(best + 1);
    const Coord bx = b.x < c.x ? b.x : c.x;
    const Coord px = p.x < q.x ? p.x : q.x;
    if (p.y > b.y || (p.y == b.y && px < bx)) best = i;
  }
  return best;
}

struct VisNode {
  int id = 0;
  int parent = -1;
  Side side = Side::L;
  int depth = 0;
  WeakVisPolygon region;
  std::vector<int> children;
};

struct VisTree {
  CellGrid grid;
  std::vector<VisNode> nodes;  // breadth-first; nodes[0] is the root

  int height() const {
    int h = 0;
    for (const auto& n : nodes) h = std::max(h, n.depth + 1);
    return h;
  }
};

inline VisTree window_partition(const OrthoPolygon& poly) {
  VisTree tree;
  tree.grid = CellGrid(poly);
  const CellGrid& grid = tree.grid;
  std::vector<int> owner(static_cast<std::size_t>(grid.columns()) * grid.rows(), -1);
  auto slot = [&](CellId c) -> int& { return owner[static_cast<std::size_t>(c.a) * grid.rows() + c.b]; };
  auto unassigned = [&](CellId c) { return grid.inside(c) && slot(c) == -1; };

  auto claim = [&](VisNode& node) {
    for (const CellId& c : node.region.cells()) slot(c) = node.id;
  };

  VisNode root;
  root.region = weak_vis_polygon(poly, starting_edge(poly), grid);
  tree.nodes.push_back(std::move(root));
  claim(tree.nodes[0]);

  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    std::vector<Window> windows = tree.nodes[id].region.windows;
    // Each window must lead into its own component of unclaimed cells.
    std::vector<int> comp(owner.size(), -1);
    for (std::size_t w = 0; w < windows.size(); ++w) {
      const auto [dx, dy] = delta(windows[w].outward);
      const GridSegment& s = windows[w].seg;
      CellId seed = s.horizontal ? CellId{s.lo, dy > 0 ? s.line : s.line - 1}
                                 : CellId{dx > 0 ? s.line : s.line - 1, s.lo};
      const std::size_t seed_idx = static_cast<std::size_t>(seed.a) * grid.rows() + seed.b;
      if (comp[seed_idx] != -1)
        throw std::logic_error("window_partition: two windows lead into the same component");
      std::vector<CellId> stack{seed};
      comp[seed_idx] = static_cast<int>(w);
      while (!stack.empty()) {
        const CellId c = stack.back();
        stack.pop_back();
        for (Dir d : {Dir::N, Dir::S, Dir::E, Dir::W}) {
          const auto [ex, ey] = delta(d);
          const CellId nb{c.a + ex, c.b + ey};
          if (!unassigned(nb)) continue;
          int& cc = comp[static_cast<std::size_t>(nb.a) * grid.rows() + nb.b];
          if (cc == static_cast<int>(w)) continue;
          if (cc != -1) throw std::logic_error("window_partition: two windows lead into the same component");
          cc = static_cast<int>(w);
          stack.push_back(nb);
        }
      }
    }
    for (std::size_t w = 0; w < windows.size(); ++w) {
      VisNode child;
      child.id = static_cast<int>(tree.nodes.size());
      child.parent = id;
      child.side = windows[w].side;
      child.depth = tree.nodes[id].depth + 1;
      child.region = detail::grow_histogram(grid, windows[w].seg, windows[w].outward, unassigned);
      claim(child);
      tree.nodes[id].region.windows[w].child = child.id;
      tree.nodes[id].children.push_back(child.id);
      tree.nodes.push_back(std::move(child));
      queue.push_back(tree.nodes.back().id);
    }
  }
  for (const CellId& c : grid.inside_cells())
    if (slot(c) == -1) throw std::logic_error("window_partition: cell left unassigned");
  return tree;
}

/// Six groups indexed (depth mod 3) * 2 + side; the root counts as left.
struct IndependenceClasses {
  std::array<std::vector<int>, 6> groups;

  static int group_of(const VisNode& n) { return (n.depth % 3) * 2 + (n.parent < 0 || n.side == Side::L ? 0 : 1); }
  static std::string name(int g) { return "A" + std::to_string(g / 2) + (g % 2 == 0 ? "L" : "R"); }
};

inline IndependenceClasses independence_classes(const VisTree& tree) {
  IndependenceClasses ic;
  for (const auto& n : tree.nodes) ic.groups[IndependenceClasses::group_of(n)].push_back(n.id);
  return ic;
}

/// Cells r-visible from at least one cell of the node, as a mask over
/// grid.inside_cells().
inline std::vector<bool> visible_from_node(const VisTree& tree, int node) {
  const CellGrid& g = tree.grid;
  std::vector<bool> seen(g.inside_count(), false);
  const auto& cells = g.inside_cells();
  for (const CellId& c : tree.nodes[node].region.cells())
    for (std::size_t j = 0; j < cells.size(); ++j)
      if (!seen[j] && cells_r_visible(c, cells[j], g)) seen[j] = true;
  return seen;
}

/// First same-group pair whose visibility regions share a cell, if any.
inline std::optional<std::pair<int, int>> independence_violation(const VisTree& tree, const IndependenceClasses& ic) {
  std::vector<std::vector<bool>> vis(tree.nodes.size());
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) vis[i] = visible_from_node(tree, static_cast<int>(i));
  for (const auto& group : ic.groups)
    for (std::size_t x = 0; x < group.size(); ++x)
      for (std::size_t y = x + 1; y < group.size(); ++y)
        for (std::size_t c = 0; c < tree.grid.inside_count(); ++c)
          if (vis[group[x]][c] && vis[group[y]][c]) return std::pair{group[x], group[y]};
  return std::nullopt;
}

}  // namespace orthoguard
