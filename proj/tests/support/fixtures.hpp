#pragma once

// Polygon families for tests. Each generator builds a hole-free union of
// unit cells and traces its boundary; callers filter on validate().

#include "orthoguard/orthoguard.hpp"

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace orthoguard::fixtures {

using CellSet = std::set<std::pair<int, int>>;

inline OrthoPolygon from_cells(const CellSet& cells) {
  int x0 = cells.begin()->first, x1 = x0, y0 = cells.begin()->second, y1 = y0;
  for (const auto& [x, y] : cells) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  std::vector<BigInt> xs, ys;
  for (int x = x0; x <= x1 + 1; ++x) xs.emplace_back(x);
  for (int y = y0; y <= y1 + 1; ++y) ys.emplace_back(y);
  return trace_cell_union(
      x1 - x0 + 1, y1 - y0 + 1, [&](int a, int b) { return cells.count({a + x0, b + y0}) > 0; }, xs, ys);
}

inline OrthoPolygon rect(long long w, long long h) { return {{Point(0, 0), Point(w, 0), Point(w, h), Point(0, h)}}; }

inline OrthoPolygon l_shape() { return {{Point(0, 0), Point(2, 0), Point(2, 1), Point(1, 1), Point(1, 2), Point(0, 2)}}; }

/// Corridor of width 1 winding outward; `turns` reflex vertices, 2 * turns + 4
/// vertices. Rotated so the outermost arm runs along the top.
inline OrthoPolygon spiral(int turns) {
  CellSet cells;
  int x = 0, y = 0;
  const int quarter_turns = (2 - turns % 4 + 4) % 4;
  auto put = [&] {
    int u = x, v = y;
    for (int r = 0; r < quarter_turns; ++r) std::tie(u, v) = std::pair(-v, u);
    cells.insert({u, v});
  };
  put();
  const int dx[] = {1, 0, -1, 0};
  const int dy[] = {0, 1, 0, -1};
  for (int arm = 0; arm <= turns; ++arm) {
    const int len = 2 + 2 * (arm / 2);
    for (int s = 0; s < len; ++s) {
      x += dx[arm % 4];
      y += dy[arm % 4];
      put();
    }
  }
  return from_cells(cells);
}

/// Two-sided staircase climbing two units per two columns; n steps.
inline OrthoPolygon staircase(int n) {
  CellSet cells;
  for (int x = 0; x < 2 * n; ++x)
    for (int y = 2 * (x / 2); y <= 2 * ((x + 1) / 2) + 2; ++y) cells.insert({x, y});
  return from_cells(cells);
}

/// One-sided staircase: cells below the diagonal of an n x n square.
inline OrthoPolygon triangle_staircase(int n) {
  CellSet cells;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y <= x; ++y) cells.insert({x, y});
  return from_cells(cells);
}

/// Teeth of the given heights standing on a spine, separated by unit gaps.
/// With `down` the teeth hang below the spine.
inline OrthoPolygon comb(const std::vector<int>& teeth, bool down) {
  CellSet cells;
  const int width = 2 * static_cast<int>(teeth.size()) - 1;
  for (int x = 0; x < width; ++x) cells.insert({x, 0});
  for (std::size_t i = 0; i < teeth.size(); ++i)
    for (int h = 1; h <= teeth[i]; ++h) cells.insert({2 * static_cast<int>(i), down ? -h : h});
  return from_cells(cells);
}

/// Histogram hanging from a top edge: column j has depth depths[j].
inline OrthoPolygon histogram(const std::vector<int>& depths) {
  CellSet cells;
  for (std::size_t j = 0; j < depths.size(); ++j)
    for (int d = 1; d <= depths[j]; ++d) cells.insert({static_cast<int>(j), -d});
  return from_cells(cells);
}

inline OrthoPolygon random_histogram(std::mt19937& rng, int columns, int max_depth) {
  std::uniform_int_distribution<int> d(1, max_depth);
  std::vector<int> depths(static_cast<std::size_t>(columns));
  for (auto& v : depths) v = d(rng);
  return histogram(depths);
}

/// Random valid polyomino grown cell by cell inside a box.
inline OrthoPolygon random_polyomino(std::mt19937& rng, int box, int target) {
  for (;;) {
    CellSet cells{{box / 2, box / 2}};
    std::uniform_int_distribution<int> dir(0, 3);
    int guard = 0;
    while (static_cast<int>(cells.size()) < target && ++guard < 100 * target) {
      auto it = cells.begin();
      std::advance(it, std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng));
      const int k = dir(rng);
      const std::pair<int, int> c{it->first + (k == 0) - (k == 1), it->second + (k == 2) - (k == 3)};
      if (c.first < 0 || c.second < 0 || c.first >= box || c.second >= box) continue;
      cells.insert(c);
    }
    try {
      OrthoPolygon p = from_cells(cells);
      if (validate(p).ok()) return p;
    } catch (const std::invalid_argument&) {
      // holes or pinches: retry
    }
  }
}

/// A polygon that splits into several weak visibility parts on both sides:
/// a top chamber with a left arm going down and a right arm going down then
/// turning, with notches along the way.
inline OrthoPolygon two_shafts() {
  CellSet cells;
  for (int x = 0; x < 12; ++x)
    for (int y = 8; y < 10; ++y) cells.insert({x, y});
  for (int y = 2; y < 8; ++y) cells.insert({1, y});       // left shaft
  for (int x = 1; x < 5; ++x) cells.insert({x, 2});       // left foot turning right
  cells.insert({3, 3});                                  // notch on the left foot
  for (int y = 3; y < 8; ++y) cells.insert({10, y});      // right shaft
  for (int x = 6; x < 10; ++x) cells.insert({x, 4});      // right arm turning left
  cells.insert({6, 5});
  cells.insert({6, 6});                                  // rising tip
  cells.insert({8, 3});                                  // notch below the right arm
  cells.insert({5, 10});                                 // bump on the top chamber
  return from_cells(cells);
}

/// C-shape whose lower corridor [1,4] x [0,1] is cut at x = 2, 3 by the
/// stepped upper arm. The corridor cells see exactly the same cells.
inline OrthoPolygon split_corridor() {
  CellSet cells;
  for (int y = 0; y < 5; ++y) cells.insert({0, y});
  for (int x = 1; x < 4; ++x) cells.insert({x, 0});
  for (int x = 1; x < 4; ++x)
    for (int y = 4; y < 4 + x; ++y) cells.insert({x, y});
  return from_cells(cells);
}

struct Named {
  std::string name;
  OrthoPolygon poly;
};

/// Valid polygons from every family; deterministic.
inline std::vector<Named> corpus() {
  std::vector<Named> out;
  auto add = [&](std::string name, OrthoPolygon p) {
    if (validate(p).ok()) out.push_back({std::move(name), std::move(p)});
  };
  add("rect", rect(3, 2));
  add("l_shape", l_shape());
  for (int t : {3, 4, 5, 6, 7, 8, 9}) add("spiral" + std::to_string(t), spiral(t));
  for (int n : {3, 5, 7}) add("staircase" + std::to_string(n), staircase(n));
  for (int n : {4, 6}) add("triangle" + std::to_string(n), triangle_staircase(n));
  add("comb_up", comb({2, 3, 1, 4, 2}, false));
  add("comb_down", comb({3, 1, 2, 1, 3}, true));
  add("comb_up_long", comb({1, 2, 3, 4, 5, 6}, false));
  add("two_shafts", two_shafts());
  add("split_corridor", split_corridor());
  std::mt19937 rng(20241015);
  for (int i = 0; i < 8; ++i) add("histogram" + std::to_string(i), random_histogram(rng, 6 + i, 5));
  for (int i = 0; i < 8; ++i) add("polyomino" + std::to_string(i), random_polyomino(rng, 8, 10 + 2 * i));
  return out;
}

}  // namespace orthoguard::fixtures
