#pragma once

// Truncation of a histogram into pyramids and the resulting guard tree.
//
// The truncation runs on strip heights measured in grid cells from the base.
// A strip floor is solid while it still lies on the polygon boundary; cutting
// a pyramid replaces the floors of its strips by a non-solid cut line.

#include "orthoguard/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace orthoguard {

struct Histogram {
  std::vector<int> heights;
  std::vector<bool> solid;

  static Histogram of(const WeakVisPolygon& w) { return {w.heights, std::vector<bool>(w.heights.size(), true)}; }
};

/// Maximal run of equal-height strips.
struct Plateau {
  int lo = 0;
  int hi = 0;
  int height = 0;
  bool c_edge = false;  // both neighbours shallower (the histogram ends count as shallower)
  bool r_edge = false;  // both neighbours deeper
};

inline std::vector<Plateau> plateaus(const Histogram& h) {
  std::vector<Plateau> out;
  const int n = static_cast<int>(h.heights.size());
  for (int s = 0; s < n;) {
    int e = s;
    while (e + 1 < n && h.heights[e + 1] == h.heights[s]) ++e;
    out.push_back({s, e, h.heights[s]});
    s = e + 1;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int left = i == 0 ? 0 : out[i - 1].height;
    const int right = i + 1 == out.size() ? 0 : out[i + 1].height;
    out[i].c_edge = left < out[i].height && right < out[i].height;
    out[i].r_edge = i > 0 && i + 1 < out.size() && left > out[i].height && right > out[i].height;
  }
  return out;
}

/// A pyramid cut from a histogram: strips [lo, hi], cells at distances
/// [level, top[s]) from the base.
struct PyramidCut {
  int lo = 0;
  int hi = 0;
  int level = 0;
  std::vector<int> top;  // strip heights at cut time, indexed s - lo
  int c_lo = 0, c_hi = 0;
  int solid_lo = 0, solid_hi = 0;  // first solid run of the c-edge
};

struct TruncationStep {
  std::vector<PyramidCut> pyramids;
  Histogram residual;
  bool done = false;  // the input was already a pyramid; it is the single entry of `pyramids`
};

namespace detail {
inline PyramidCut make_cut(const Histogram& h, const Plateau& c, int level) {
  PyramidCut cut;
  cut.level = level;
  cut.c_lo = c.lo;
  cut.c_hi = c.hi;
  cut.lo = c.lo;
  cut.hi = c.hi;
  while (cut.lo > 0 && h.heights[cut.lo - 1] > level) --cut.lo;
  while (cut.hi + 1 < static_cast<int>(h.heights.size()) && h.heights[cut.hi + 1] > level) ++cut.hi;
  cut.top.assign(h.heights.begin() + cut.lo, h.heights.begin() + cut.hi + 1);
  int s = c.lo;
  while (s <= c.hi && !h.solid[s]) ++s;
  if (s > c.hi) throw std::logic_error("c-edge without a solid segment");
  cut.solid_lo = s;
  while (s + 1 <= c.hi && h.solid[s + 1]) ++s;
  cut.solid_hi = s;
  return cut;
}
}  // namespace detail

inline TruncationStep truncate_once(const Histogram& h) {
  TruncationStep step;
  const auto ps = plateaus(h);
  std::vector<std::size_t> c_edges;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps[i].c_edge) c_edges.push_back(i);
  if (c_edges.size() <= 1) {
    step.done = true;
    Plateau whole = c_edges.empty() ? Plateau{0, static_cast<int>(h.heights.size()) - 1, 0} : ps[c_edges[0]];
    step.pyramids.push_back(detail::make_cut(h, whole, 0));
    return step;
  }
  step.residual = h;
  for (std::size_t ci : c_edges) {
    // The sweep towards the base stops at the deeper of the two adjacent r-edges.
    int level = 0;
    for (std::size_t j = ci; j-- > 0;)
      if (ps[j].r_edge) {
        level = std::max(level, ps[j].height);
        break;
      }
    for (std::size_t j = ci + 1; j < ps.size(); ++j)
      if (ps[j].r_edge) {
        level = std::max(level, ps[j].height);
        break;
      }
    PyramidCut cut = detail::make_cut(h, ps[ci], level);
    for (int s = cut.lo; s <= cut.hi; ++s) {
      step.residual.heights[s] = level;
      step.residual.solid[s] = false;
    }
    step.pyramids.push_back(std::move(cut));
  }
  return step;
}

inline TruncationStep truncate_once(const WeakVisPolygon& w) { return truncate_once(Histogram::of(w)); }

struct PyramidNode {
  int id = 0;
  int stage = 0;  // truncation round, 1-based; the root has the largest stage
  PyramidCut cut;
  CellId guard_cell;
  Point guard;
  int parent = -1;
  int depth = 0;  // root = 0
  std::vector<int> children;
};

struct GuardTree {
  std::vector<PyramidNode> nodes;  // in cut order; the root is last
  int rounds = 0;

  int root() const { return static_cast<int>(nodes.size()) - 1; }
  int height() const {
    int h = 0;
    for (const auto& n : nodes) h = std::max(h, n.depth + 1);
    return h;
  }
  std::vector<int> path_to_root(int id) const {
    std::vector<int> p;
    for (int v = id; v >= 0; v = nodes[v].parent) p.push_back(v);
    return p;
  }
};

/// Cells of a pyramid within its histogram.
inline std::vector<CellId> pyramid_cells(const PyramidCut& cut, const WeakVisPolygon& w) {
  std::vector<CellId> out;
  for (int s = cut.lo; s <= cut.hi; ++s)
    for (int t = cut.level; t < cut.top[s - cut.lo]; ++t) out.push_back(w.cell(static_cast<std::size_t>(s), t));
  return out;
}

/// Center of the cell next to the pyramid's base line, in the strip holding
/// the midpoint of the solid segment; a midpoint on a grid line goes to the
/// lower strip.
inline CellId guard_cell(const PyramidCut& cut, const WeakVisPolygon& w, const CellGrid& grid) {
  const auto& cuts = is_vertical(w.inward) ? grid.xcuts() : grid.ycuts();
  const int first = w.base.lo + cut.solid_lo;
  const int last = w.base.lo + cut.solid_hi;
  const BigInt twice_mid = cuts[first] + cuts[last + 1];
  int s = cut.solid_lo;
  while (s < cut.solid_hi && 2 * cuts[w.base.lo + s + 1] < twice_mid) ++s;
  return w.cell(static_cast<std::size_t>(s), cut.level);
}

inline Point guard_position(const PyramidCut& cut, const WeakVisPolygon& w, const CellGrid& grid) {
  return grid.center(guard_cell(cut, w, grid));
}

inline GuardTree decompose(const WeakVisPolygon& w, const CellGrid& grid) {
  GuardTree tree;
  Histogram h = Histogram::of(w);
  for (int stage = 1;; ++stage) {
    TruncationStep step = truncate_once(h);
    for (auto& cut : step.pyramids) {
      PyramidNode node;
      node.id = static_cast<int>(tree.nodes.size());
      node.stage = stage;
      node.guard_cell = guard_cell(cut, w, grid);
      node.guard = grid.center(node.guard_cell);
      node.cut = std::move(cut);
      tree.nodes.push_back(std::move(node));
    }
    tree.rounds = stage;
    if (step.done) break;
    h = std::move(step.residual);
  }
  // Parent: the pyramid of the earliest later stage whose strips contain ours.
  for (auto& node : tree.nodes) {
    if (node.id == tree.root()) continue;
    int best = -1;
    for (const auto& cand : tree.nodes) {
      if (cand.stage <= node.stage || cand.cut.lo > node.cut.lo || cand.cut.hi < node.cut.hi) continue;
      if (best < 0 || cand.stage < tree.nodes[best].stage) best = cand.id;
    }
    if (best < 0) throw std::logic_error("pyramid without an enclosing later pyramid");
    node.parent = best;
    tree.nodes[best].children.push_back(node.id);
  }
  for (int id = tree.root(); id >= 0; --id)
    if (tree.nodes[id].parent >= 0) tree.nodes[id].depth = tree.nodes[tree.nodes[id].parent].depth + 1;
  return tree;
}

}  // namespace orthoguard
