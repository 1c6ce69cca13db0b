#pragma once

// JSON formats. Coordinates are decimal strings "num" or "num/den"; plain
// JSON integers are accepted on input. Parse errors name the offending field.

#include "orthoguard/tableau.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace orthoguard {

using nlohmann::json;

class FormatError : public std::invalid_argument {
 public:
  FormatError(const std::string& path, const std::string& what) : std::invalid_argument(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

namespace detail {

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw FormatError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(path + "." + key, "missing");
  return *it;
}

inline Coord coord_from(const json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_coord(j.get<std::string>());
    if (j.is_number_integer()) return Coord(j.get<long long>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(path, e.what());
  }
  throw FormatError(path, "expected a coordinate string or integer");
}

inline long long int_from(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw FormatError(path, "expected an integer");
  return j.get<long long>();
}

inline const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError(path, "expected an array");
  return j;
}

}  // namespace detail

inline json to_json(const OrthoPolygon& p) {
  json v = json::array();
  for (const auto& q : p.vertices) v.push_back({format_coord(q.x), format_coord(q.y)});
  return {{"vertices", v}};
}

inline OrthoPolygon polygon_from_json(const json& j) {
  const json& vs = detail::array_at(detail::field(j, "vertices", "$"), "$.vertices");
  OrthoPolygon p;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string path = "$.vertices[" + std::to_string(i) + "]";
    if (!vs[i].is_array() || vs[i].size() != 2) throw FormatError(path, "expected a pair [x, y]");
    p.vertices.emplace_back(detail::coord_from(vs[i][0], path + "[0]"), detail::coord_from(vs[i][1], path + "[1]"));
  }
  if (p.vertices.empty()) throw FormatError("$.vertices", "empty vertex list");
  return p;
}

inline json to_json(const ChromaticGuarding& g) {
  json guards = json::array();
  for (const auto& x : g.guards)
    guards.push_back({{"x", format_coord(x.p.x)}, {"y", format_coord(x.p.y)}, {"color", x.color}});
  return {{"model", to_string(g.model)}, {"t", g.t}, {"guards", guards}};
}

/// Guarding with palette bookkeeping (group, local color, flat id).
inline json to_json_detailed(const ChromaticGuarding& g) {
  json out = to_json(g);
  for (std::size_t i = 0; i < g.guards.size(); ++i) {
    out["guards"][i]["group"] = IndependenceClasses::name(g.guards[i].group);
    out["guards"][i]["local"] = g.guards[i].local;
    out["guards"][i]["flat"] = g.guards[i].flat;
  }
  return out;
}

inline ChromaticGuarding guarding_from_json(const json& j) {
  ChromaticGuarding g;
  const json& model = detail::field(j, "model", "$");
  if (model == "r")
    g.model = Model::R;
  else if (model == "l")
    g.model = Model::L;
  else
    throw FormatError("$.model", "expected \"r\" or \"l\"");
  g.t = static_cast<int>(detail::int_from(detail::field(j, "t", "$"), "$.t"));
  if (g.t < 1) throw FormatError("$.t", "must be >= 1");
  const json& gs = detail::array_at(detail::field(j, "guards", "$"), "$.guards");
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::string path = "$.guards[" + std::to_string(i) + "]";
    Guard x;
    x.p = Point(detail::coord_from(detail::field(gs[i], "x", path), path + ".x"),
                detail::coord_from(detail::field(gs[i], "y", path), path + ".y"));
    x.color = static_cast<int>(detail::int_from(detail::field(gs[i], "color", path), path + ".color"));
    if (x.color < 1 || x.color > g.t) throw FormatError(path + ".color", "outside [1, t]");
    x.local = x.flat = x.color;
    g.guards.push_back(x);
  }
  return g;
}

inline json to_json(const MulticolorTableau& T) {
  json cols = json::array();
  for (const auto& col : T.columns) {
    json c = json::array();
    for (const auto& M : col) {
      json ms = json::object();
      for (const auto& [color, n] : M) ms[std::to_string(color)] = n;
      c.push_back(ms);
    }
    cols.push_back(c);
  }
  return {{"m", T.m}, {"mprime", T.mprime}, {"t", T.t}, {"columns", cols}};
}

inline MulticolorTableau tableau_from_json(const json& j) {
  MulticolorTableau T;
  T.m = static_cast<int>(detail::int_from(detail::field(j, "m", "$"), "$.m"));
  T.mprime = static_cast<int>(detail::int_from(detail::field(j, "mprime", "$"), "$.mprime"));
  T.t = static_cast<int>(detail::int_from(detail::field(j, "t", "$"), "$.t"));
  const json& cols = detail::array_at(detail::field(j, "columns", "$"), "$.columns");
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const std::string cpath = "$.columns[" + std::to_string(k) + "]";
    detail::array_at(cols[k], cpath);
    std::vector<ColorMultiset> col;
    for (std::size_t i = 0; i < cols[k].size(); ++i) {
      const std::string path = cpath + "[" + std::to_string(i) + "]";
      if (!cols[k][i].is_object()) throw FormatError(path, "expected an object of color multiplicities");
      ColorMultiset M;
      for (const auto& [key, val] : cols[k][i].items()) {
        int c = 0;
        try {
          std::size_t used = 0;
          c = std::stoi(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          throw FormatError(path + "." + key, "color key is not a decimal integer");
        }
        const long long n = detail::int_from(val, path + "." + key);
        if (n < 0) throw FormatError(path + "." + key, "negative multiplicity");
        if (n > 0) M[c] = static_cast<int>(n);
      }
      col.push_back(std::move(M));
    }
    T.columns.push_back(std::move(col));
  }
  try {
    check_shape(T);
  } catch (const std::invalid_argument& e) {
    throw FormatError("$.columns", e.what());
  }
  return T;
}

inline json to_json(const ConformViolation& v) {
  json out = {{"property", v.property}, {"i", v.i}, {"k", v.k}, {"message", v.describe()}};
  if (v.property >= 2) out["color"] = v.c;
  if (v.property == 2) out["i2"] = v.i2;
  if (v.property == 3) {
    json qs = json::array();
    for (const auto& q : v.quarters)
      qs.push_back({{"quarter", to_string(q.quarter)}, {"j", q.j}, {"condition", std::string(1, q.condition)}});
    out["quarters"] = qs;
  }
  return out;
}

inline json to_json(const ReductionTrace& tr) {
  json stages = json::array();
  for (const auto& r : tr.stages) {
    json s = {{"stage", r.stage}, {"width", r.width}, {"k", r.k}, {"excluded", r.excluded}, {"color", r.c}};
    if (r.quarter) s["quarter"] = to_string(*r.quarter);
    if (!r.centers.empty()) s["subblock_centers"] = r.centers;
    if (r.branch) {
      s["case"] = *r.branch == StageCase::Reduce ? 1 : 2;
      if (*r.branch == StageCase::Descend) s["descend_to"] = r.descend_to;
      if (*r.branch == StageCase::Reduce) {
        s["odd_choices"] = r.odd_choices;
        s["top_row_unique"] = r.top_row_unique;
        s["color_absent"] = r.color_absent;
      }
    }
    stages.push_back(s);
  }
  json out = {{"t", tr.t}, {"sub_m", tr.sub_m}, {"outcome", to_string(tr.outcome)}, {"stages", stages}, {"note", tr.note}};
  if (tr.violation) out["violation"] = to_json(*tr.violation);
  if (tr.reduced) out["reduced"] = to_json(*tr.reduced);
  if (tr.reduced) out["reduced_conform"] = !tr.reduced_violation.has_value();
  return out;
}

inline json to_json(const Verdict& v) {
  json out = {{"ok", v.ok}};
  if (v.ok) return out;
  out["failure"] = to_string(v.failure);
  if (v.cell) out["cell"] = {v.cell->a, v.cell->b};
  if (v.special) out["special_point"] = {{"i", v.special->first}, {"k", v.special->second}};
  out["guards"] = v.guards;
  out["explanation"] = v.explanation;
  return out;
}

inline json to_json(const VisTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes) {
    const auto [a, b] = endpoints(n.region.base, tree.grid);
    json node = {{"id", n.id},
                 {"parent", n.parent < 0 ? json(nullptr) : json(n.parent)},
                 {"side", n.parent < 0 ? json(nullptr) : json(to_string(n.side))},
                 {"depth", n.depth},
                 {"group", IndependenceClasses::name(IndependenceClasses::group_of(n))},
                 {"base", {{format_coord(a.x), format_coord(a.y)}, {format_coord(b.x), format_coord(b.y)}}},
                 {"inward", to_string(n.region.inward)},
                 {"vertices", to_json(n.region.polygon)["vertices"]},
                 {"children", n.children}};
    nodes.push_back(node);
  }
  return {{"nodes", nodes}};
}

inline json to_json(const GuardTree& gt, const WeakVisPolygon& w, const CellGrid& grid) {
  json nodes = json::array();
  for (const auto& n : gt.nodes) {
    const auto cells = pyramid_cells(n.cut, w);
    BigInt x0, x1, y0, y1;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const BigInt& cx0 = grid.xcuts()[cells[i].a];
      const BigInt& cx1 = grid.xcuts()[cells[i].a + 1];
      const BigInt& cy0 = grid.ycuts()[cells[i].b];
      const BigInt& cy1 = grid.ycuts()[cells[i].b + 1];
      if (i == 0 || cx0 < x0) x0 = cx0;
      if (i == 0 || cx1 > x1) x1 = cx1;
      if (i == 0 || cy0 < y0) y0 = cy0;
      if (i == 0 || cy1 > y1) y1 = cy1;
    }
    nodes.push_back({{"id", n.id},
                     {"stage", n.stage},
                     {"parent", n.parent < 0 ? json(nullptr) : json(n.parent)},
                     {"depth", n.depth},
                     {"strips", {n.cut.lo, n.cut.hi}},
                     {"level", n.cut.level},
                     {"bbox", {x0.str(), y0.str(), x1.str(), y1.str()}},
                     {"cells", cells.size()},
                     {"guard", {format_coord(n.guard.x), format_coord(n.guard.y)}},
                     {"children", n.children}});
  }
  return {{"rounds", gt.rounds}, {"height", gt.height()}, {"root", gt.root()}, {"pyramids", nodes}};
}

}  // namespace orthoguard
