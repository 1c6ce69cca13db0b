#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace orthoguard;

namespace {

// Guards seeing the center of each inside cell, decided by the sampling oracle
// rather than the cell grid.
std::vector<std::vector<std::size_t>> oracle_seers(const OrthoPolygon& poly, const ChromaticGuarding& G) {
  const CellGrid g(poly);
  std::vector<std::vector<std::size_t>> out;
  for (const CellId& c : g.inside_cells()) {
    std::vector<std::size_t> seers;
    for (std::size_t i = 0; i < G.guards.size(); ++i)
      if (oracle::r_visible(poly, G.guards[i].p, g.center(c))) seers.push_back(i);
    out.push_back(std::move(seers));
  }
  return out;
}

bool oracle_strong(const OrthoPolygon& poly, const ChromaticGuarding& G) {
  for (const auto& seers : oracle_seers(poly, G)) {
    if (seers.empty()) return false;
    std::set<int> colors;
    for (std::size_t i : seers)
      if (!colors.insert(G.guards[i].color).second) return false;
  }
  return true;
}

bool oracle_cf(const OrthoPolygon& poly, const ChromaticGuarding& G) {
  for (const auto& seers : oracle_seers(poly, G)) {
    std::map<int, int> mult;
    for (std::size_t i : seers) ++mult[G.guards[i].color];
    bool unique = false;
    for (const auto& [c, n] : mult) unique = unique || n == 1;
    if (!unique) return false;
  }
  return true;
}

std::set<int> colors_of(const ChromaticGuarding& G) {
  std::set<int> s;
  for (const auto& g : G.guards) s.insert(g.color);
  return s;
}

}  // namespace

TEST(RulerSequence, SmallExamples) {
  EXPECT_EQ(ruler_sequence(1), std::vector<int>{1});
  EXPECT_EQ(ruler_sequence(2), (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(ruler_sequence(3), (std::vector<int>{1, 2, 1, 3, 1, 2, 1}));
  EXPECT_THROW(ruler_sequence(0), std::invalid_argument);
}

TEST(RulerSequence, EveryWindowHasAUniqueSymbol) {
  for (int i = 1; i <= 10; ++i) {
    const auto s = ruler_sequence(i);
    ASSERT_EQ(s.size(), (std::size_t{1} << i) - 1);
    EXPECT_EQ(*std::max_element(s.begin(), s.end()), i);
    for (std::size_t d = 0; d < s.size(); ++d) EXPECT_EQ(ruler_symbol(static_cast<int>(d)), s[d]);
    for (std::size_t a = 0; a < s.size(); ++a) {
      std::vector<int> count(static_cast<std::size_t>(i) + 1, 0);
      for (std::size_t b = a; b < s.size(); ++b) {
        ++count[static_cast<std::size_t>(s[b])];
        bool unique = false;
        for (int c : count) unique = unique || c == 1;
        ASSERT_TRUE(unique) << "i=" << i << " window [" << a << "," << b << "]";
      }
    }
  }
}

TEST(RulerSequence, PrefixesUseFewSymbols) {
  for (int i = 1; i <= 10; ++i) {
    const auto s = ruler_sequence(i);
    std::set<int> distinct;
    for (std::size_t k = 1; k <= s.size(); ++k) {
      distinct.insert(s[k - 1]);
      ASSERT_LE(static_cast<int>(distinct.size()), ceil_log2_plus1(static_cast<std::int64_t>(k))) << i << " " << k;
    }
  }
}

TEST(CeilLog2Plus1, Values) {
  EXPECT_EQ(ceil_log2_plus1(0), 0);
  EXPECT_EQ(ceil_log2_plus1(1), 1);
  EXPECT_EQ(ceil_log2_plus1(2), 2);
  EXPECT_EQ(ceil_log2_plus1(3), 2);
  EXPECT_EQ(ceil_log2_plus1(4), 3);
  EXPECT_EQ(ceil_log2_plus1(7), 3);
  EXPECT_EQ(ceil_log2_plus1(8), 4);
}

TEST(Coloring, SpikeColorCounts) {
  for (int m = 1; m <= 8; ++m) {
    const auto s = gen_spike(m, false);
    const auto strong = strong_coloring(s);
    const auto cf = cf_coloring(s);
    EXPECT_EQ(strong.guards.size(), static_cast<std::size_t>(column_count(m)));
    EXPECT_EQ(strong.t, m);
    EXPECT_EQ(cf.t, ceil_log2_plus1(m));
    EXPECT_EQ(static_cast<int>(colors_of(strong).size()), strong.t);
    EXPECT_EQ(static_cast<int>(colors_of(cf).size()), cf.t);
  }
}

TEST(Coloring, SpikeGuardsAreColumnBottoms) {
  const int m = 4;
  const CellGrid g(gen_spike(m, false));
  const auto strong = strong_coloring(gen_spike(m, false));
  std::set<std::int64_t> columns;
  for (const auto& gd : strong.guards) {
    const auto pos = g.locate(gd.p);
    ASSERT_TRUE(pos);
    const CellId c{(pos->x - 1) / 2, (pos->y - 1) / 2};
    const auto [i, k] = spike_row_col(m, c);
    EXPECT_EQ(i, depth(m, k));
    EXPECT_EQ(gd.color, depth(m, k));
    columns.insert(k);
  }
  EXPECT_EQ(columns.size(), static_cast<std::size_t>(column_count(m)));
}

TEST(Coloring, BothModesPlaceTheSameGuards) {
  for (const auto& f : fixtures::corpus()) {
    const auto a = strong_coloring(f.poly), b = cf_coloring(f.poly);
    ASSERT_EQ(a.guards.size(), b.guards.size()) << f.name;
    for (std::size_t i = 0; i < a.guards.size(); ++i) EXPECT_EQ(a.guards[i].p, b.guards[i].p) << f.name;
  }
}

TEST(Coloring, PaletteBookkeeping) {
  for (const auto& f : fixtures::corpus()) {
    for (Mode mode : {Mode::Strong, Mode::ConflictFree}) {
      const auto plan = plan_guards(f.poly);
      const auto G = assemble(plan, mode);
      EXPECT_EQ(G.guards.size(), plan.guard_count());
      // Colors are exactly [t] and are a bijective relabeling of (group, local).
      std::map<std::pair<int, int>, int> seen;
      int width = 0;
      for (const auto& gd : G.guards) width = std::max(width, gd.local);
      for (const auto& gd : G.guards) {
        EXPECT_GE(gd.group, 0);
        EXPECT_LT(gd.group, 6);
        EXPECT_EQ(gd.flat, gd.group * width + gd.local);
        auto [it, fresh] = seen.emplace(std::pair{gd.group, gd.local}, gd.color);
        if (!fresh) {
          EXPECT_EQ(it->second, gd.color);
        }
      }
      std::set<int> labels;
      for (const auto& [k, c] : seen) labels.insert(c);
      EXPECT_EQ(labels.size(), seen.size());
      EXPECT_EQ(colors_of(G), labels);
      EXPECT_EQ(*labels.begin(), 1);
      EXPECT_EQ(*labels.rbegin(), G.t);
    }
  }
}

TEST(Coloring, ColorBoundsFromTreeHeight) {
  for (const auto& f : fixtures::corpus()) {
    const auto plan = plan_guards(f.poly);
    const int h = plan.max_tree_height();
    EXPECT_LE(assemble(plan, Mode::Strong).t, 6 * h) << f.name;
    EXPECT_LE(assemble(plan, Mode::ConflictFree).t, 6 * ceil_log2_plus1(h)) << f.name;
    EXPECT_LE(assemble(plan, Mode::ConflictFree).t, assemble(plan, Mode::Strong).t) << f.name;
  }
}

TEST(Coloring, CorpusGuardingsVerify) {
  for (const auto& f : fixtures::corpus()) {
    const auto strong = strong_coloring(f.poly);
    const auto cf = cf_coloring(f.poly);
    EXPECT_TRUE(verify_strong(f.poly, strong).ok) << f.name << ": " << verify_strong(f.poly, strong).explanation;
    EXPECT_TRUE(verify_cf(f.poly, cf, Model::R).ok) << f.name << ": " << verify_cf(f.poly, cf, Model::R).explanation;
  }
}

TEST(Coloring, CorpusGuardingsPassSamplingOracle) {
  // Second route: visibility by sampling, colors checked pair by pair.
  for (const auto& f : fixtures::corpus()) {
    if (CellGrid(f.poly).inside_count() > 60) continue;
    EXPECT_TRUE(oracle_strong(f.poly, strong_coloring(f.poly))) << f.name;
    EXPECT_TRUE(oracle_cf(f.poly, cf_coloring(f.poly))) << f.name;
  }
  for (int m = 1; m <= 4; ++m) {
    const auto s = gen_spike(m, false);
    EXPECT_TRUE(oracle_strong(s, strong_coloring(s)));
    EXPECT_TRUE(oracle_cf(s, cf_coloring(s)));
  }
}

TEST(Coloring, Deterministic) {
  const auto p = fixtures::two_shafts();
  EXPECT_EQ(strong_coloring(p), strong_coloring(p));
  EXPECT_EQ(cf_coloring(p), cf_coloring(p));
  EXPECT_EQ(coloring(p, Mode::Strong), strong_coloring(p));
}
