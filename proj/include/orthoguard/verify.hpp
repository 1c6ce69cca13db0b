#pragma once

// Coverage, strong and conflict-free checks for chromatic guardings.
//
// r-model: every inside grid cell is tested through its representative; the
// r-visibility of a cell from a fixed guard does not depend on the point
// chosen inside the cell. l-model: only the special points of a stretched
// spike polygon are tested.

#include "orthoguard/chromatic.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthoguard {

class UnsupportedModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Failure { None, Uncovered, NoUniqueColor, SameColorPair };

inline const char* to_string(Failure f) {
  switch (f) {
    case Failure::None: return "none";
    case Failure::Uncovered: return "uncovered";
    case Failure::NoUniqueColor: return "no-unique-color";
    case Failure::SameColorPair: return "same-color-pair";
  }
  return "?";
}

struct Verdict {
  bool ok = true;
  Failure failure = Failure::None;
  std::optional<CellId> cell;                 // r-model witness
  std::optional<std::pair<int, std::int64_t>> special;  // l-model witness (i, k)
  std::vector<std::size_t> guards;            // guards involved (indices into the guarding)
  std::string explanation;
};

/// Guards seeing each checked location, in checking order.
struct Sightings {
  std::vector<std::vector<std::size_t>> seen_by;
  std::vector<CellId> cells;                               // r-model
  std::vector<std::pair<int, std::int64_t>> special_points;  // l-model
};

inline GridPos guard_position_in(const CellGrid& grid, const Guard& g, std::size_t index) {
  auto pos = grid.locate(g.p);
  if (!pos || grid.location(*pos) == Location::Outside)
    throw std::invalid_argument("guard " + std::to_string(index) + " at " + format_point(g.p) + " lies outside the polygon");
  return *pos;
}

inline Sightings r_sightings(const CellGrid& grid, const ChromaticGuarding& G) {
  Sightings s;
  s.cells = grid.inside_cells();
  s.seen_by.resize(s.cells.size());
  for (std::size_t gi = 0; gi < G.guards.size(); ++gi) {
    const GridPos gp = guard_position_in(grid, G.guards[gi], gi);
    const bool in_cell = gp.x % 2 != 0 && gp.y % 2 != 0;
    const CellId gc{(gp.x - 1) / 2, (gp.y - 1) / 2};
    for (std::size_t c = 0; c < s.cells.size(); ++c) {
      const bool vis = in_cell ? cells_r_visible(gc, s.cells[c], grid) : grid.rect_in_polygon(gp, CellGrid::cell_pos(s.cells[c]));
      if (vis) s.seen_by[c].push_back(gi);
    }
  }
  return s;
}

/// Stretched spike parameter m, or UnsupportedModel.
inline int require_stretched_spike(const OrthoPolygon& poly) {
  const auto spike = recognize_spike(poly);
  if (!spike || !(spike->second || spike->first == 1))
    throw UnsupportedModel("l-visibility verification is only defined on stretched spike polygons");
  return spike->first;
}

inline Sightings l_sightings(const OrthoPolygon& poly, const CellGrid& grid, const ChromaticGuarding& G) {
  const int m = require_stretched_spike(poly);
  Sightings s;
  for (std::size_t gi = 0; gi < G.guards.size(); ++gi) guard_position_in(grid, G.guards[gi], gi);
  for (int i = 1; i <= m; ++i)
    for (std::int64_t k = 1; k <= column_count(m); ++k) {
      if (i > depth(m, k)) continue;
      const Point p = special_point(m, i, k, true);
      std::vector<std::size_t> seers;
      for (std::size_t gi = 0; gi < G.guards.size(); ++gi)
        if (l_visible(G.guards[gi].p, p, grid)) seers.push_back(gi);
      s.special_points.push_back({i, k});
      s.seen_by.push_back(std::move(seers));
    }
  return s;
}

inline Sightings sightings(const OrthoPolygon& poly, const CellGrid& grid, const ChromaticGuarding& G, Model model) {
  return model == Model::R ? r_sightings(grid, G) : l_sightings(poly, grid, G);
}

namespace detail {

inline Verdict witness_at(const Sightings& s, std::size_t idx, Failure f, std::string why) {
  Verdict v;
  v.ok = false;
  v.failure = f;
  if (!s.cells.empty())
    v.cell = s.cells[idx];
  else
    v.special = s.special_points[idx];
  v.guards = s.seen_by[idx];
  v.explanation = std::move(why);
  return v;
}

inline std::string where(const Sightings& s, std::size_t idx) {
  if (!s.cells.empty()) return "cell (" + std::to_string(s.cells[idx].a) + ", " + std::to_string(s.cells[idx].b) + ")";
  return "special point p(" + std::to_string(s.special_points[idx].first) + ", " +
         std::to_string(s.special_points[idx].second) + ")";
}

inline std::optional<Verdict> first_uncovered(const Sightings& s) {
  for (std::size_t c = 0; c < s.seen_by.size(); ++c)
    if (s.seen_by[c].empty()) return witness_at(s, c, Failure::Uncovered, where(s, c) + " is seen by no guard");
  return std::nullopt;
}

}  // namespace detail

inline Verdict verify_cover(const Sightings& s) {
  if (auto v = detail::first_uncovered(s)) return *v;
  return {};
}

inline Verdict verify_strong(const Sightings& s, const ChromaticGuarding& G) {
  if (auto v = detail::first_uncovered(s)) return *v;
  for (std::size_t c = 0; c < s.seen_by.size(); ++c) {
    std::map<int, std::size_t> first_of;
    for (std::size_t gi : s.seen_by[c]) {
      auto [it, fresh] = first_of.emplace(G.guards[gi].color, gi);
      if (!fresh) {
        Verdict v = detail::witness_at(s, c, Failure::SameColorPair,
                                       detail::where(s, c) + " is seen by guards " + std::to_string(it->second) + " and " +
                                           std::to_string(gi) + " of color " + std::to_string(it->first));
        v.guards = {it->second, gi};
        return v;
      }
    }
  }
  return {};
}

inline Verdict verify_cf(const Sightings& s, const ChromaticGuarding& G) {
  if (auto v = detail::first_uncovered(s)) return *v;
  for (std::size_t c = 0; c < s.seen_by.size(); ++c) {
    std::map<int, int> mult;
    for (std::size_t gi : s.seen_by[c]) ++mult[G.guards[gi].color];
    bool unique = false;
    for (const auto& [color, count] : mult) unique = unique || count == 1;
    if (!unique)
      return detail::witness_at(s, c, Failure::NoUniqueColor, detail::where(s, c) + " sees no color exactly once");
  }
  return {};
}

inline Verdict verify_cover(const OrthoPolygon& poly, const ChromaticGuarding& G, Model model) {
  const CellGrid grid(poly);
  return verify_cover(sightings(poly, grid, G, model));
}

inline Verdict verify_strong(const OrthoPolygon& poly, const ChromaticGuarding& G) {
  const CellGrid grid(poly);
  return verify_strong(r_sightings(grid, G), G);
}

inline Verdict verify_cf(const OrthoPolygon& poly, const ChromaticGuarding& G, Model model) {
  const CellGrid grid(poly);
  return verify_cf(sightings(poly, grid, G, model), G);
}

}  // namespace orthoguard
