#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace orthoguard;

namespace {

OrthoPolygon unit_square() { return fixtures::rect(1, 1); }

Point P(long long x, long long y) { return {x, y}; }
Point Q(Coord x, Coord y) { return {std::move(x), std::move(y)}; }

// Random points with denominator 4 in the closed polygon, chosen by the oracle.
std::vector<Point> sample_points(const OrthoPolygon& poly, std::mt19937& rng, std::size_t count) {
  long long x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  for (const auto& v : poly.vertices) {
    const long long x = numerator_of(v.x).convert_to<long long>();
    const long long y = numerator_of(v.y).convert_to<long long>();
    x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
  }
  std::uniform_int_distribution<long long> dx(4 * x0, 4 * x1), dy(4 * y0, 4 * y1);
  std::vector<Point> out;
  while (out.size() < count) {
    Point p{Coord(dx(rng), 4), Coord(dy(rng), 4)};
    if (oracle::in_closed(poly, p.x, p.y)) out.push_back(p);
  }
  return out;
}

// Directions (dx, dy) of the two edges leaving a vertex.
std::set<std::pair<int, int>> rays_at(const OrthoPolygon& poly, std::size_t i) {
  const std::size_t n = poly.size();
  auto dir = [](const Point& a, const Point& b) {
    return std::pair<int, int>{(b.x > a.x) - (b.x < a.x), (b.y > a.y) - (b.y < a.y)};
  };
  return {dir(poly.vertex(i), poly.vertex(i + 1)), dir(poly.vertex(i), poly.vertex(i + n - 1))};
}

bool oracle_general_position(const OrthoPolygon& poly) {
  for (const auto& c : oracle::reflex_chords(poly)) {
    auto dirs = rays_at(poly, c.u);
    const auto more = rays_at(poly, c.v);
    dirs.insert(more.begin(), more.end());
    if (dirs.size() != 3) return false;
  }
  return true;
}

}  // namespace

TEST(Validate, UnitSquareIsValid) { EXPECT_TRUE(validate(unit_square()).ok()); }

TEST(Validate, RepeatedVertexIsNonSimple) {
  OrthoPolygon p{{P(0, 0), P(1, 0), P(1, 0), P(1, 1), P(0, 1)}};
  const auto rep = validate(p);
  EXPECT_FALSE(rep.ok());
  EXPECT_TRUE(rep.has(ViolationKind::NonSimple));
}

TEST(Validate, ClockwiseIsRejected) {
  OrthoPolygon p{{P(0, 0), P(0, 1), P(1, 1), P(1, 0)}};
  EXPECT_TRUE(validate(p).has(ViolationKind::NotCcw));
}

TEST(Validate, DiagonalEdgeIsNonOrthogonal) {
  OrthoPolygon p{{P(0, 0), P(2, 0), P(2, 1), P(1, 2)}};
  EXPECT_TRUE(validate(p).has(ViolationKind::NonOrthogonal));
}

TEST(Validate, SelfIntersectionIsNonSimple) {
  // Bow-tie made of two squares touching through crossing edges.
  OrthoPolygon p{{P(0, 0), P(2, 0), P(2, 2), P(1, 2), P(1, -1), P(3, -1), P(3, 1), P(0, 1)}};
  EXPECT_TRUE(validate(p).has(ViolationKind::NonSimple));
}

TEST(Validate, FractionalVertexIsRejected) {
  OrthoPolygon p{{Q(0, 0), Q(Coord(1, 2), 0), Q(Coord(1, 2), 1), Q(0, 1)}};
  EXPECT_TRUE(validate(p).has(ViolationKind::NonInteger));
}

TEST(Validate, TooFewVertices) {
  OrthoPolygon p{{P(0, 0), P(1, 0)}};
  EXPECT_TRUE(validate(p).has(ViolationKind::TooFewVertices));
}

TEST(Validate, SpikeThreeIsValidAndChordsAgreeWithOracle) {
  const auto s3 = gen_spike(3, false);
  EXPECT_TRUE(validate(s3).ok());
  EXPECT_TRUE(oracle_general_position(s3));
}

TEST(Validate, GeneralPositionMatchesChordEnumeration) {
  std::vector<OrthoPolygon> polys;
  for (const auto& f : fixtures::corpus()) polys.push_back(f.poly);
  // Symmetric bands: reflex pairs face each other across the corridor.
  for (int n = 4; n <= 6; ++n) {
    fixtures::CellSet cells;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (std::abs(x - y) <= 1) cells.insert({x, y});
    polys.push_back(fixtures::from_cells(cells));
  }
  polys.push_back({{P(0, 0), P(3, 0), P(3, 1), P(5, 1), P(5, 3), P(4, 3), P(4, 2), P(1, 2), P(1, 1), P(0, 1)}});
  int rejected = 0;
  for (const auto& p : polys) {
    const bool gp = !validate(p).has(ViolationKind::GeneralPosition);
    EXPECT_EQ(gp, oracle_general_position(p));
    rejected += !gp;
  }
  EXPECT_GE(rejected, 4);
}

TEST(ClassifyVertices, UnitSquareAllConvex) {
  const auto k = classify_vertices(unit_square());
  EXPECT_EQ(std::count(k.begin(), k.end(), VertexKind::Convex), 4);
}

TEST(ClassifyVertices, LShapeHasOneReflexAtInnerCorner) {
  const auto poly = fixtures::l_shape();
  const auto k = classify_vertices(poly);
  ASSERT_EQ(k.size(), 6u);
  EXPECT_EQ(std::count(k.begin(), k.end(), VertexKind::Reflex), 1);
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] == VertexKind::Reflex) {
      EXPECT_EQ(poly.vertex(i), P(1, 1));
    }
}

TEST(ClassifyVertices, SpikeTwoHasTwoReflex) {
  const auto k = classify_vertices(gen_spike(2, false));
  EXPECT_EQ(std::count(k.begin(), k.end(), VertexKind::Convex), 6);
  EXPECT_EQ(std::count(k.begin(), k.end(), VertexKind::Reflex), 2);
}

TEST(ClassifyVertices, ReflexCountFormulaOnCorpus) {
  for (const auto& f : fixtures::corpus()) EXPECT_EQ(reflex_count(f.poly), (f.poly.size() - 4) / 2) << f.name;
  for (int m = 1; m <= 6; ++m) EXPECT_EQ(reflex_count(gen_spike(m, m > 1)), (gen_spike(m, false).size() - 4) / 2);
}

TEST(PointLocation, UnitSquare) {
  const auto sq = unit_square();
  EXPECT_EQ(point_location(Q(Coord(1, 2), Coord(1, 2)), sq), Location::Inside);
  EXPECT_EQ(point_location(Q(1, Coord(1, 2)), sq), Location::Boundary);
  EXPECT_EQ(point_location(P(-1, 0), sq), Location::Outside);
  EXPECT_EQ(point_location(P(0, 0), sq), Location::Boundary);
}

TEST(PointLocation, AgreesWithOracleOnCorpus) {
  std::mt19937 rng(7);
  for (const auto& f : fixtures::corpus()) {
    const CellGrid g(f.poly);
    long long x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    for (const auto& v : f.poly.vertices) {
      x0 = std::min(x0, numerator_of(v.x).convert_to<long long>());
      x1 = std::max(x1, numerator_of(v.x).convert_to<long long>());
      y0 = std::min(y0, numerator_of(v.y).convert_to<long long>());
      y1 = std::max(y1, numerator_of(v.y).convert_to<long long>());
    }
    std::uniform_int_distribution<long long> dx(2 * x0 - 2, 2 * x1 + 2), dy(2 * y0 - 2, 2 * y1 + 2);
    for (int s = 0; s < 200; ++s) {
      const Point p{Coord(dx(rng), 2), Coord(dy(rng), 2)};
      const auto w = oracle::where(f.poly, p.x, p.y);
      const Location expect = w == oracle::Where::In ? Location::Inside
                              : w == oracle::Where::On ? Location::Boundary
                                                       : Location::Outside;
      ASSERT_EQ(point_location(p, g), expect) << f.name << " " << format_point(p);
    }
  }
}

// Spike coordinates use doubled x: column k spans [2k-2, 2k].
TEST(RVisible, SpikeTwoExamples) {
  const auto s2 = gen_spike(2, false);
  EXPECT_FALSE(r_visible(Q(1, Coord(-3, 2)), Q(5, Coord(-3, 2)), s2));
  EXPECT_TRUE(r_visible(Q(1, Coord(-1, 2)), Q(5, Coord(-1, 2)), s2));
  const Point p = Q(3, Coord(-1, 2));
  EXPECT_TRUE(r_visible(p, p, s2));
}

TEST(RVisible, OutsidePointIsAnError) {
  EXPECT_THROW(r_visible(P(5, 5), P(0, 0), unit_square()), std::domain_error);
  EXPECT_THROW(l_visible(P(0, 0), P(-1, 0), unit_square()), std::domain_error);
}

TEST(LVisible, SpikeTwoExamples) {
  const auto s2 = gen_spike(2, false);
  const Point p = Q(1, Coord(-3, 2));
  EXPECT_TRUE(l_visible(p, p, s2));
  EXPECT_FALSE(l_visible(p, Q(5, Coord(-3, 2)), s2));
  // Along the floor of column 2 (boundary contact counts as visible).
  EXPECT_TRUE(l_visible(P(2, -1), P(4, -1), s2));
}

TEST(Visibility, SymmetryContainmentAndOracleAgreementOnSpikeThree) {
  const auto s3 = gen_spike(3, false);
  const CellGrid g(s3);
  std::mt19937 rng(11);
  const auto pts = sample_points(s3, rng, 2000);
  int r_true = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    const Point& p = pts[i];
    const Point& q = pts[i + 1];
    const bool r = r_visible(p, q, g), l = l_visible(p, q, g);
    ASSERT_EQ(r, r_visible(q, p, g));
    ASSERT_EQ(l, l_visible(q, p, g));
    if (r) {
      ASSERT_TRUE(l) << format_point(p) << " " << format_point(q);
    }
    ASSERT_EQ(r, oracle::r_visible(s3, p, q)) << format_point(p) << " " << format_point(q);
    ASSERT_EQ(l, oracle::l_visible(s3, p, q)) << format_point(p) << " " << format_point(q);
    r_true += r;
  }
  EXPECT_GT(r_true, 50);
  EXPECT_LT(r_true, 950);
}

TEST(Visibility, OracleAgreementOnCorpus) {
  std::mt19937 rng(5);
  for (const auto& f : fixtures::corpus()) {
    const CellGrid g(f.poly);
    const auto pts = sample_points(f.poly, rng, 120);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
      ASSERT_EQ(r_visible(pts[i], pts[i + 1], g), oracle::r_visible(f.poly, pts[i], pts[i + 1])) << f.name;
      ASSERT_EQ(l_visible(pts[i], pts[i + 1], g), oracle::l_visible(f.poly, pts[i], pts[i + 1])) << f.name;
    }
  }
}

TEST(Visibility, RepeatedCallsAgree) {
  const auto s3 = gen_spike(3, false);
  std::mt19937 rng(3);
  const auto pts = sample_points(s3, rng, 100);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    EXPECT_EQ(r_visible(pts[i], pts[i + 1], s3), r_visible(pts[i], pts[i + 1], s3));
    EXPECT_EQ(l_visible(pts[i], pts[i + 1], s3), l_visible(pts[i], pts[i + 1], s3));
  }
}

TEST(Coord, ParseAndFormatRoundTrip) {
  for (const char* s : {"0", "-7", "3/2", "-1/4", "123456789012345678901234567890"})
    EXPECT_EQ(format_coord(parse_coord(s)), s);
  EXPECT_EQ(format_coord(parse_coord("4/2")), "2");
  EXPECT_THROW(parse_coord("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_coord("abc"), std::invalid_argument);
  EXPECT_THROW(parse_coord(""), std::invalid_argument);
}
