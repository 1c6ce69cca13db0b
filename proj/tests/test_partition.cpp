#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace orthoguard;

namespace {

// Every cell of a weak visibility polygon sees its base edge straight on.
void expect_sees_base(const WeakVisPolygon& w, const CellGrid& g) {
  const auto [a, b] = endpoints(w.base, g);
  for (const CellId& c : w.cells()) {
    const Point p = g.center(c);
    const Point foot = w.base.horizontal ? Point(p.x, a.y) : Point(a.x, p.y);
    EXPECT_TRUE(r_visible(p, foot, g)) << format_point(p);
    if (w.base.horizontal) {
      EXPECT_GE(p.x, std::min(a.x, b.x));
      EXPECT_LE(p.x, std::max(a.x, b.x));
    } else {
      EXPECT_GE(p.y, std::min(a.y, b.y));
      EXPECT_LE(p.y, std::max(a.y, b.y));
    }
  }
}

}  // namespace

TEST(WeakVisPolygon, RectangleFromTopEdgeIsWhole) {
  const auto r = fixtures::rect(3, 2);
  const auto w = weak_vis_polygon(r, starting_edge(r));
  EXPECT_EQ(w.cell_count(), CellGrid(r).inside_count());
  EXPECT_TRUE(w.windows.empty());
}

TEST(WeakVisPolygon, SpikeFromTopEdgeIsWhole) {
  for (int m = 1; m <= 6; ++m) {
    const auto s = gen_spike(m, false);
    const CellGrid g(s);
    const auto w = weak_vis_polygon(s, starting_edge(s), g);
    EXPECT_EQ(w.cell_count(), g.inside_count());
    EXPECT_TRUE(w.windows.empty());
    expect_sees_base(w, g);
  }
}

TEST(WeakVisPolygon, TwelveVertexSpiralHasOneWindow) {
  const auto sp = fixtures::spiral(4);
  ASSERT_EQ(sp.size(), 12u);
  const CellGrid g(sp);
  const auto w = weak_vis_polygon(sp, starting_edge(sp), g);
  EXPECT_LT(w.cell_count(), g.inside_count());
  EXPECT_EQ(w.windows.size(), 1u);
  expect_sees_base(w, g);
  EXPECT_TRUE(validate(w.polygon).ok());
}

TEST(WeakVisPolygon, RejectsInvalidBaseEdge) {
  const auto l = fixtures::l_shape();
  // Edge 1 is vertical.
  EXPECT_THROW(weak_vis_polygon(l, 1), std::invalid_argument);
  // Edge 2 runs from the convex corner (2,1) to the reflex corner (1,1).
  EXPECT_THROW(weak_vis_polygon(l, 2), std::invalid_argument);
}

TEST(StartingEdge, LeftmostAmongHighest) {
  const auto c = fixtures::comb({2, 1, 2}, false);
  ASSERT_TRUE(validate(c).ok());
  const std::size_t e = starting_edge(c);
  const Point& p = c.vertex(e);
  const Point& q = c.vertex(e + 1);
  EXPECT_EQ(p.y, q.y);
  EXPECT_EQ(p.y, Coord(3));  // spine row 0, teeth rows 1..2
  EXPECT_EQ(std::min(p.x, q.x), Coord(0));
}

TEST(WindowPartition, RectangleIsSingleNode) {
  const auto t = window_partition(fixtures::rect(4, 3));
  EXPECT_EQ(t.nodes.size(), 1u);
  EXPECT_EQ(t.nodes[0].parent, -1);
}

TEST(WindowPartition, SpikeFourIsSingleNode) { EXPECT_EQ(window_partition(gen_spike(4, false)).nodes.size(), 1u); }

TEST(WindowPartition, SpiralWithSevenReflexIsDeepChain) {
  const auto sp = fixtures::spiral(7);
  ASSERT_EQ(reflex_count(sp), 7u);
  const auto t = window_partition(sp);
  EXPECT_GT(t.height(), 1);
  for (const auto& n : t.nodes) EXPECT_LE(n.children.size(), 1u);
}

TEST(WindowPartition, CoverageBoundAndBaseVisibilityOnCorpus) {
  for (const auto& f : fixtures::corpus()) {
    const auto t = window_partition(f.poly);
    const CellGrid& g = t.grid;
    EXPECT_LE(t.nodes.size(), std::max<std::size_t>(1, f.poly.size() / 2 - 1)) << f.name;
    std::map<CellId, int> owner;
    for (const auto& n : t.nodes)
      for (const CellId& c : n.region.cells()) EXPECT_TRUE(owner.emplace(c, n.id).second) << f.name;
    EXPECT_EQ(owner.size(), g.inside_count()) << f.name;
    for (const auto& n : t.nodes) {
      expect_sees_base(n.region, g);
      if (n.parent >= 0) {
        EXPECT_EQ(n.depth, t.nodes[n.parent].depth + 1);
        const auto& sib = t.nodes[n.parent].children;
        EXPECT_NE(std::find(sib.begin(), sib.end(), n.id), sib.end());
      }
    }
    // Root base: a highest horizontal edge.
    Coord top = f.poly.vertices[0].y;
    for (const auto& v : f.poly.vertices) top = std::max(top, v.y);
    EXPECT_EQ(endpoints(t.nodes[0].region.base, g).first.y, top) << f.name;
  }
}

TEST(WindowPartition, ChildSideFollowsTurnDirection) {
  // Two-shaft shape: the left shaft turns right (foot) and the right shaft
  // turns left (arm); both children must be tagged.
  const auto t = window_partition(fixtures::two_shafts());
  int lefts = 0, rights = 0;
  for (const auto& n : t.nodes)
    if (n.parent >= 0) (n.side == Side::L ? lefts : rights)++;
  EXPECT_GT(lefts, 0);
  EXPECT_GT(rights, 0);
}

TEST(IndependenceClasses, SingleNodeTree) {
  const auto t = window_partition(fixtures::rect(2, 2));
  const auto ic = independence_classes(t);
  int nonempty = 0;
  for (const auto& g : ic.groups) nonempty += !g.empty();
  EXPECT_EQ(nonempty, 1);
  EXPECT_EQ(ic.groups[0], std::vector<int>{0});
}

TEST(IndependenceClasses, DepthsCongruentModThreeShareGroup) {
  VisNode root, deep;
  root.depth = 0;
  root.parent = -1;
  deep.depth = 3;
  deep.parent = 2;
  deep.side = Side::L;
  EXPECT_EQ(IndependenceClasses::group_of(root), IndependenceClasses::group_of(deep));
  deep.side = Side::R;
  EXPECT_NE(IndependenceClasses::group_of(root), IndependenceClasses::group_of(deep));
  deep.depth = 4;
  EXPECT_NE(IndependenceClasses::group_of(root), IndependenceClasses::group_of(deep));
}

TEST(IndependenceClasses, SameGroupMembersAreIndependentOnCorpus) {
  for (const auto& f : fixtures::corpus()) {
    const auto t = window_partition(f.poly);
    const auto ic = independence_classes(t);
    EXPECT_FALSE(independence_violation(t, ic).has_value()) << f.name;
    std::size_t total = 0;
    for (const auto& g : ic.groups) total += g.size();
    EXPECT_EQ(total, t.nodes.size());
  }
}

TEST(IndependenceClasses, SpiralChainHasSharedGroups) {
  const auto t = window_partition(fixtures::spiral(9));
  const auto ic = independence_classes(t);
  std::size_t largest = 0;
  for (const auto& g : ic.groups) largest = std::max(largest, g.size());
  EXPECT_GE(largest, 2u);
  EXPECT_FALSE(independence_violation(t, ic).has_value());
}

TEST(WindowPartition, Deterministic) {
  const auto a = window_partition(fixtures::two_shafts());
  const auto b = window_partition(fixtures::two_shafts());
  ASSERT_EQ(a.nodes.size(), b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    EXPECT_EQ(a.nodes[i].region.cells(), b.nodes[i].region.cells());
    EXPECT_EQ(a.nodes[i].parent, b.nodes[i].parent);
  }
}
