#pragma once

// Strong and conflict-free chromatic r-guardings built from the window
// partition and the per-histogram guard trees.

#include "orthoguard/pyramids.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace orthoguard {

/// s_1 = (1), s_i = s_{i-1} i s_{i-1}.
inline std::vector<int> ruler_sequence(int i) {
  if (i < 1) throw std::invalid_argument("ruler_sequence: i must be >= 1");
  std::vector<int> s{1};
  for (int j = 2; j <= i; ++j) {
    std::vector<int> next = s;
    next.push_back(j);
    next.insert(next.end(), s.begin(), s.end());
    s = std::move(next);
  }
  return s;
}

/// Ruler symbol at 0-based position d: one more than the number of trailing
/// zero bits of d + 1.
inline int ruler_symbol(int d) { return pi2(d + 1) + 1; }

/// ceil(log2(k + 1)) for k >= 0.
inline int ceil_log2_plus1(std::int64_t k) {
  int b = 0;
  while ((std::int64_t{1} << b) < k + 1) ++b;
  return b;
}

struct Guard {
  Point p;
  int color = 1;  // in [t]
  // Palette bookkeeping: independence group in [0, 6), color inside the
  // group's palette, and the flat id group * W + local.
  int group = 0;
  int local = 1;
  int flat = 1;

  friend bool operator==(const Guard& a, const Guard& b) { return a.p == b.p && a.color == b.color; }
};

struct ChromaticGuarding {
  Model model = Model::R;
  int t = 0;
  std::vector<Guard> guards;

  friend bool operator==(const ChromaticGuarding& a, const ChromaticGuarding& b) {
    return a.model == b.model && a.t == b.t && a.guards == b.guards;
  }
};

/// Everything the two colorings share: partition, independence classes and
/// one guard tree per partition node.
struct GuardPlan {
  VisTree partition;
  IndependenceClasses classes;
  std::vector<GuardTree> trees;  // indexed by partition node

  int max_tree_height() const {
    int h = 0;
    for (const auto& t : trees) h = std::max(h, t.height());
    return h;
  }
  std::size_t guard_count() const {
    std::size_t c = 0;
    for (const auto& t : trees) c += t.nodes.size();
    return c;
  }
};

inline GuardPlan plan_guards(const OrthoPolygon& poly) {
  GuardPlan plan;
  plan.partition = window_partition(poly);
  plan.classes = independence_classes(plan.partition);
  for (const auto& node : plan.partition.nodes) plan.trees.push_back(decompose(node.region, plan.partition.grid));
  return plan;
}

enum class Mode { Strong, ConflictFree };
inline const char* to_string(Mode m) { return m == Mode::Strong ? "strong" : "cf"; }

/// Assigns colors from per-guard local colors: groups get disjoint palettes,
/// members of a group share one. Final colors are the ranks of the used
/// (group, local) pairs, so they are exactly [t].
inline ChromaticGuarding assemble(const GuardPlan& plan, Mode mode) {
  struct Raw {
    Point p;
    int group, local;
  };
  std::vector<Raw> raw;
  int width = 0;
  for (std::size_t v = 0; v < plan.partition.nodes.size(); ++v) {
    const int group = IndependenceClasses::group_of(plan.partition.nodes[v]);
    for (const auto& pn : plan.trees[v].nodes) {
      const int local = mode == Mode::Strong ? pn.depth + 1 : ruler_symbol(pn.depth);
      raw.push_back({pn.guard, group, local});
      width = std::max(width, local);
    }
  }
  std::set<std::pair<int, int>> used;
  for (const auto& r : raw) used.insert({r.group, r.local});
  std::map<std::pair<int, int>, int> rank;
  for (const auto& key : used) rank.emplace(key, static_cast<int>(rank.size()) + 1);
  ChromaticGuarding out;
  out.model = Model::R;
  out.t = static_cast<int>(rank.size());
  for (const auto& r : raw)
    out.guards.push_back({r.p, rank.at({r.group, r.local}), r.group, r.local, r.group * width + r.local});
  return out;
}

inline ChromaticGuarding strong_coloring(const OrthoPolygon& poly) { return assemble(plan_guards(poly), Mode::Strong); }
inline ChromaticGuarding cf_coloring(const OrthoPolygon& poly) { return assemble(plan_guards(poly), Mode::ConflictFree); }
inline ChromaticGuarding coloring(const OrthoPolygon& poly, Mode mode) { return assemble(plan_guards(poly), mode); }

}  // namespace orthoguard
