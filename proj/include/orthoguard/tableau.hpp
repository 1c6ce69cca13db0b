#pragma once

// Multicolor tableaux over spike columns: extraction from guardings, the
// t-conformity check, the three conformity-preserving constructions, and a
// replay of the staged reduction used by the lower-bound induction.
//
// Indexing is 1-based throughout to match the column/row arithmetic: column
// k in [2^{m'} - 1] holds d_m(k) = m - pi2(k) multisets, row 1 on top.

#include "orthoguard/verify.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthoguard {

using ColorMultiset = std::map<int, int>;  // color -> multiplicity >= 1

inline int multiplicity(const ColorMultiset& M, int c) {
  auto it = M.find(c);
  return it == M.end() ? 0 : it->second;
}
inline bool contains(const ColorMultiset& M, int c) { return multiplicity(M, c) > 0; }
inline bool unique_in(const ColorMultiset& M, int c) { return multiplicity(M, c) == 1; }

inline std::set<int> unique_colors(const ColorMultiset& M) {
  std::set<int> u;
  for (const auto& [c, n] : M)
    if (n == 1) u.insert(c);
  return u;
}

inline bool multiset_subset(const ColorMultiset& a, const ColorMultiset& b) {
  for (const auto& [c, n] : a)
    if (n > multiplicity(b, c)) return false;
  return true;
}

struct MulticolorTableau {
  int m = 1;       // row parameter
  int mprime = 1;  // column parameter: 2^{mprime} - 1 columns
  int t = 1;       // color universe [t]
  std::vector<std::vector<ColorMultiset>> columns;

  std::int64_t width() const { return column_count(mprime); }
  int depth_of(std::int64_t k) const { return m - pi2(k); }

  const ColorMultiset& at(int i, std::int64_t k) const {
    if (k < 1 || k > width()) throw std::out_of_range("tableau column " + std::to_string(k) + " out of range");
    const auto& col = columns[static_cast<std::size_t>(k - 1)];
    if (i < 1 || i > static_cast<int>(col.size()))
      throw std::out_of_range("tableau row " + std::to_string(i) + " missing in column " + std::to_string(k));
    return col[static_cast<std::size_t>(i - 1)];
  }
  bool unique(int i, std::int64_t k, int c) const { return unique_in(at(i, k), c); }
  bool has(int i, std::int64_t k, int c) const { return contains(at(i, k), c); }

  friend bool operator==(const MulticolorTableau&, const MulticolorTableau&) = default;
};

/// Throws std::invalid_argument unless the shape matches (m, mprime).
inline void check_shape(const MulticolorTableau& T) {
  if (T.mprime < 1 || T.mprime > T.m || T.m > 62)
    throw std::invalid_argument("tableau needs 1 <= mprime <= m, got m=" + std::to_string(T.m) +
                                " mprime=" + std::to_string(T.mprime));
  if (static_cast<std::int64_t>(T.columns.size()) != T.width())
    throw std::invalid_argument("tableau has " + std::to_string(T.columns.size()) + " columns, expected " +
                                std::to_string(T.width()));
  for (std::int64_t k = 1; k <= T.width(); ++k) {
    const auto& col = T.columns[static_cast<std::size_t>(k - 1)];
    if (static_cast<int>(col.size()) != T.depth_of(k))
      throw std::invalid_argument("tableau column " + std::to_string(k) + " has " + std::to_string(col.size()) +
                                  " entries, expected " + std::to_string(T.depth_of(k)));
    for (const auto& M : col)
      for (const auto& [c, n] : M)
        if (c < 1 || c > T.t || n < 1)
          throw std::invalid_argument("tableau column " + std::to_string(k) + " holds color " + std::to_string(c) +
                                      " with multiplicity " + std::to_string(n) + " outside [1, t]");
  }
}

class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// M_{i,k} = colors of guards r-seeing R_{i,k} in S_m.
inline MulticolorTableau extract_r(int m, const ChromaticGuarding& G) {
  const OrthoPolygon poly = gen_spike(m, false);
  const CellGrid grid(poly);
  const Sightings s = r_sightings(grid, G);
  MulticolorTableau T;
  T.m = T.mprime = m;
  T.t = G.t;
  T.columns.resize(static_cast<std::size_t>(column_count(m)));
  for (std::int64_t k = 1; k <= column_count(m); ++k) T.columns[k - 1].resize(static_cast<std::size_t>(depth(m, k)));
  for (std::size_t c = 0; c < s.cells.size(); ++c) {
    const auto [i, k] = spike_row_col(m, s.cells[c]);
    if (s.seen_by[c].empty())
      throw CoverageError("cell R(" + std::to_string(i) + ", " + std::to_string(k) + ") is seen by no guard");
    for (std::size_t gi : s.seen_by[c]) ++T.columns[k - 1][i - 1][G.guards[gi].color];
  }
  return T;
}

/// M_{i,k} = colors of guards l-seeing the special point p_{i,k} of the stretched S_m.
inline MulticolorTableau extract_l(int m, const ChromaticGuarding& G) {
  const OrthoPolygon poly = gen_spike(m, true);
  const CellGrid grid(poly);
  const Sightings s = l_sightings(poly, grid, G);
  MulticolorTableau T;
  T.m = T.mprime = m;
  T.t = G.t;
  T.columns.resize(static_cast<std::size_t>(column_count(m)));
  for (std::int64_t k = 1; k <= column_count(m); ++k) T.columns[k - 1].resize(static_cast<std::size_t>(depth(m, k)));
  for (std::size_t p = 0; p < s.special_points.size(); ++p) {
    const auto [i, k] = s.special_points[p];
    if (s.seen_by[p].empty())
      throw CoverageError("special point p(" + std::to_string(i) + ", " + std::to_string(k) + ") is seen by no guard");
    for (std::size_t gi : s.seen_by[p]) ++T.columns[k - 1][i - 1][G.guards[gi].color];
  }
  return T;
}

// ---------------------------------------------------------------------------
// Conformity

/// Why one quarter block failed to witness property 3.
struct QuarterFailure {
  Quarter quarter = Quarter::LL;
  std::int64_t j = 0;
  char condition = 'a';
};

struct ConformViolation {
  int property = 0;  // 1, 2 or 3
  int i = 0;
  std::int64_t k = 0;
  int c = 0;         // property 3: the unique color; property 2: an offending color
  int i2 = 0;        // property 2: the deeper row
  std::vector<QuarterFailure> quarters;  // property 3: one entry per non-empty quarter

  std::string describe() const {
    std::string s = "property " + std::to_string(property) + " fails at (i=" + std::to_string(i) +
                    ", k=" + std::to_string(k) + ")";
    if (property == 2) s += ": M(" + std::to_string(i2) + ", k) is not contained in M(i, k) (color " + std::to_string(c) + ")";
    if (property == 3) {
      s += " for color " + std::to_string(c) + ":";
      for (std::size_t n = 0; n < quarters.size(); ++n)
        s += std::string(n ? "; " : " ") + to_string(quarters[n].quarter) + " breaks (" + quarters[n].condition +
             ") at j=" + std::to_string(quarters[n].j);
    }
    return s;
  }
};

inline ConformViolation make_violation(int property, int i, std::int64_t k, int c = 0, int i2 = 0) {
  ConformViolation v;
  v.property = property;
  v.i = i;
  v.k = k;
  v.c = c;
  v.i2 = i2;
  return v;
}

namespace detail {

/// First column of `range` where Q(c, k, j) fails at row i, with the failed
/// condition; nullopt when Q holds on the whole range.
inline std::optional<std::pair<std::int64_t, char>> q_failure(const MulticolorTableau& T, int i, std::int64_t k, int c,
                                                               const ColumnRange& range) {
  const int dk = T.depth_of(k);
  for (std::int64_t j = range.lo; j <= range.hi; ++j) {
    if (T.depth_of(j) < dk + 2)
      throw std::logic_error("quarter block column " + std::to_string(j) + " is shallower than d(k)+2");
    if (!T.has(i, j, c)) return std::pair{j, 'a'};
    if (T.unique(i, j, c)) {
      if (T.has(dk + 2, j, c)) return std::pair{j, 'b'};
    } else {
      bool some_side = false;
      for (Side z : {Side::L, Side::R}) {
        const ColumnRange half = block_half(j, z);
        bool all = true;
        for (std::int64_t jp = half.lo; jp <= half.hi && all; ++jp) all = !T.unique(dk, jp, c);
        some_side = some_side || all;
      }
      if (!some_side) return std::pair{j, 'c'};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Q(c, k, j) for all j in the quarter block.
inline bool q_holds(const MulticolorTableau& T, int i, std::int64_t k, int c, Quarter q) {
  return !detail::q_failure(T, i, k, c, block_quarter(k, q)).has_value();
}

/// First quarter witnessing property 3 for (i, k, c), in LL, LR, RL, RR order.
inline std::optional<Quarter> property3_witness(const MulticolorTableau& T, int i, std::int64_t k, int c) {
  for (Quarter q : kQuarters)
    if (q_holds(T, i, k, c, q)) return q;
  return std::nullopt;
}

/// Checks properties 1, 2, 3 in that order; within a property the first
/// violation in (i, k, c) order is reported.
inline std::optional<ConformViolation> check_conform(const MulticolorTableau& T, int t) {
  MulticolorTableau U = T;
  U.t = t;
  check_shape(U);
  const std::int64_t w = T.width();
  const int rows = T.m;
  for (int i = 1; i <= rows; ++i)
    for (std::int64_t k = 1; k <= w; ++k)
      if (i <= T.depth_of(k) && unique_colors(T.at(i, k)).empty()) return make_violation(1, i, k);
  for (int i = 1; i <= rows; ++i)
    for (std::int64_t k = 1; k <= w; ++k)
      for (int i2 = i + 1; i2 <= T.depth_of(k); ++i2)
        for (const auto& [c, n] : T.at(i2, k))
          if (n > multiplicity(T.at(i, k), c)) return make_violation(2, i, k, c, i2);
  for (int i = 1; i <= rows; ++i)
    for (std::int64_t k = 1; k <= w; ++k) {
      if (i > T.depth_of(k)) continue;
      for (int c : unique_colors(T.at(i, k))) {
        ConformViolation v = make_violation(3, i, k, c);
        bool witnessed = false;
        for (Quarter q : kQuarters) {
          auto f = detail::q_failure(T, i, k, c, block_quarter(k, q));
          if (!f) {
            witnessed = true;
            break;
          }
          v.quarters.push_back({q, f->first, f->second});
        }
        if (!witnessed) return v;
      }
    }
  return std::nullopt;
}

/// The half-block rule satisfied by tableaux of conflict-free r-guardings:
/// for c unique in the top cell of column k, conditions (a)-(c) hold on all of
/// B_L(k) or on all of B_R(k). Returns the first (k, c) where neither half works.
inline std::optional<std::pair<std::int64_t, int>> check_left_right_rule(const MulticolorTableau& T) {
  check_shape(T);
  for (std::int64_t k = 1; k <= T.width(); ++k) {
    const int dk = T.depth_of(k);
    for (int c : unique_colors(T.at(1, k))) {
      bool ok = false;
      for (Side z : {Side::L, Side::R}) {
        const ColumnRange half = block_half(k, z);
        bool all = true;
        for (std::int64_t j = half.lo; j <= half.hi && all; ++j) {
          if (!T.has(1, j, c)) all = false;
          else if (T.unique(1, j, c)) all = !T.has(dk + 1, j, c);
          else {
            const ColumnRange b = block(j);
            for (std::int64_t jp = b.lo; jp <= b.hi && all; ++jp) all = !T.unique(1, jp, c);
          }
        }
        ok = ok || all;
      }
      if (!ok) return std::pair{k, c};
    }
  }
  return std::nullopt;
}

/// Multiplicities non-increasing down each column, and rows where a color is
/// unique form an interval followed only by rows without it.
inline bool unique_interval_property(const MulticolorTableau& T) {
  for (std::int64_t k = 1; k <= T.width(); ++k) {
    const int d = T.depth_of(k);
    for (int c = 1; c <= T.t; ++c) {
      for (int i = 1; i < d; ++i)
        if (multiplicity(T.at(i + 1, k), c) > multiplicity(T.at(i, k), c)) return false;
      int i = 1;
      while (i <= d && multiplicity(T.at(i, k), c) > 1) ++i;
      while (i <= d && multiplicity(T.at(i, k), c) == 1) ++i;
      if (i <= d && multiplicity(T.at(i, k), c) != 0) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructions

/// Restriction to the block B(k), renumbered to [2^{pi2(k)+1} - 1].
inline MulticolorTableau op_restrict_block(const MulticolorTableau& T, std::int64_t k) {
  if (k < 1 || k > T.width())
    throw std::out_of_range("restrict: column " + std::to_string(k) + " outside [1, " + std::to_string(T.width()) + "]");
  const ColumnRange b = block(k);
  MulticolorTableau R;
  R.m = T.m;
  R.mprime = pi2(k) + 1;
  R.t = T.t;
  for (std::int64_t j = b.lo; j <= b.hi; ++j) R.columns.push_back(T.columns[static_cast<std::size_t>(j - 1)]);
  return R;
}

/// Drops the top m - m_new rows; the result has row parameter m_new.
inline MulticolorTableau op_delete_top_rows(const MulticolorTableau& T, int m_new) {
  if (m_new > T.m) throw std::out_of_range("delete rows: m_new exceeds m");
  if (m_new < T.mprime)
    throw std::out_of_range("delete rows: m_new = " + std::to_string(m_new) + " would empty the central column");
  MulticolorTableau R = T;
  const int drop = T.m - m_new;
  R.m = m_new;
  for (auto& col : R.columns) col.erase(col.begin(), col.begin() + drop);
  return R;
}

/// Column selection down to 2^{m*} - 1 columns. `odd_choices[(k-1)/2]` is
/// the old column used for new odd column k.
inline MulticolorTableau op_select_columns(const MulticolorTableau& T, int mstar,
                                           const std::vector<std::int64_t>& odd_choices) {
  if (mstar < 1 || mstar > T.mprime) throw std::out_of_range("select: m* must lie in [1, mprime]");
  const int shift = T.mprime - mstar;
  const std::int64_t stride = std::int64_t{1} << shift;
  const std::int64_t n = column_count(mstar);
  if (static_cast<std::int64_t>(odd_choices.size()) != (n + 1) / 2)
    throw std::out_of_range("select: expected " + std::to_string((n + 1) / 2) + " odd choices");
  MulticolorTableau R;
  R.m = T.m - shift;
  R.mprime = mstar;
  R.t = T.t;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (k % 2 == 0) {
      R.columns.push_back(T.columns[static_cast<std::size_t>(k * stride - 1)]);
      continue;
    }
    const std::int64_t j = odd_choices[static_cast<std::size_t>((k - 1) / 2)];
    if (j <= (k - 1) * stride || j >= (k + 1) * stride)
      throw std::out_of_range("select: choice " + std::to_string(j) + " for new column " + std::to_string(k) +
                              " outside (" + std::to_string((k - 1) * stride) + ", " + std::to_string((k + 1) * stride) +
                              ")");
    auto col = T.columns[static_cast<std::size_t>(j - 1)];
    col.resize(static_cast<std::size_t>(R.m));
    R.columns.push_back(std::move(col));
  }
  return R;
}

/// Swaps the names of colors a and b.
inline MulticolorTableau op_swap_colors(const MulticolorTableau& T, int a, int b) {
  MulticolorTableau R = T;
  for (auto& col : R.columns)
    for (auto& M : col) {
      ColorMultiset out;
      for (const auto& [c, n] : M) out[c == a ? b : (c == b ? a : c)] = n;
      M = std::move(out);
    }
  return R;
}

// ---------------------------------------------------------------------------
// Staged reduction

enum class StageCase { Reduce, Descend };
enum class ReductionOutcome { NotConform, Reduced, Exhausted, TooSmall };

inline const char* to_string(ReductionOutcome o) {
  switch (o) {
    case ReductionOutcome::NotConform: return "not-conform";
    case ReductionOutcome::Reduced: return "reduced";
    case ReductionOutcome::Exhausted: return "exhausted";
    case ReductionOutcome::TooSmall: return "too-small";
  }
  return "?";
}

struct StageRecord {
  int stage = 0;
  std::int64_t width = 0;           // columns of the current tableau
  std::int64_t k = 0;               // central column
  std::set<int> excluded;           // C_{s-1}
  int c = 0;                        // chosen unique color, 0 if none
  std::optional<Quarter> quarter;   // witness XY
  std::int64_t quarter_center = 0;  // B_XY(k) = B(quarter_center)
  std::vector<std::int64_t> centers;  // j_l, l = 1..K
  std::optional<StageCase> branch;
  std::int64_t descend_to = 0;              // case 2: j_l chosen
  std::vector<std::int64_t> odd_choices;    // case 1: columns picked in the restricted block
  bool top_row_unique = false;  // case 1: c unique in the top row of every selected column
  bool color_absent = false;    // case 1: c gone after deleting the top rows
};

struct ReductionTrace {
  int t = 0;
  int sub_m = 0;
  std::vector<StageRecord> stages;
  ReductionOutcome outcome = ReductionOutcome::TooSmall;
  std::optional<ConformViolation> violation;  // NotConform
  std::optional<MulticolorTableau> reduced;   // Reduced: the (t-1)-color tableau
  std::optional<ConformViolation> reduced_violation;  // conformity of `reduced` under t-1 colors
  std::string note;
};

inline int default_sub_m(int t) {
  if (t < 2) return 1;
  const BigInt v = lb_size(t - 1, Model::L);
  return v > 62 ? 62 : static_cast<int>(v);
}

namespace detail {

struct StageContext {
  MulticolorTableau T;
  std::set<int> C;
};

inline bool column_range_has_unique(const MulticolorTableau& T, const ColumnRange& r, int c) {
  for (std::int64_t j = r.lo; j <= r.hi; ++j)
    if (T.unique(1, j, c)) return true;
  return false;
}

/// Quarter-block center: B_XY(k) = B(center).
inline std::int64_t quarter_center(std::int64_t k, Quarter q) {
  const std::int64_t half = (q == Quarter::LL || q == Quarter::LR) ? left_center(k) : right_center(k);
  return (q == Quarter::LL || q == Quarter::RL) ? left_center(half) : right_center(half);
}

inline bool mentions(const MulticolorTableau& T, int c) {
  for (const auto& col : T.columns)
    for (const auto& M : col)
      if (contains(M, c)) return true;
  return false;
}

struct ReduceStep {
  MulticolorTableau selected;  // after restriction and column selection
  MulticolorTableau reduced;   // after top-row deletion (and renaming when c vanished)
  bool top_row_unique = true;
  bool color_absent = false;
};

/// The Reduce branch: restriction, column selection, top-row deletion and,
/// when c no longer occurs, renaming of color t to c.
inline ReduceStep reduce_step(const MulticolorTableau& T, std::int64_t qc, int sub_m,
                          const std::vector<std::int64_t>& odd_choices, int c) {
  ReduceStep out;
  out.selected = op_select_columns(op_restrict_block(T, qc), sub_m, odd_choices);
  for (std::int64_t j = 1; j <= out.selected.width(); ++j)
    out.top_row_unique = out.top_row_unique && out.selected.unique(1, j, c);
  out.reduced = op_delete_top_rows(out.selected, sub_m);
  out.color_absent = !mentions(out.reduced, c);
  if (out.color_absent) {
    out.reduced = op_swap_colors(out.reduced, c, T.t);
    out.reduced.t = T.t - 1;
  }
  return out;
}

}  // namespace detail

/// Replays the staged case analysis on a t-conform standard-form tableau.
/// Subblocks of the quarter block are sized for (t-1)-tableaux with `sub_m`
/// rows; every decision takes the smallest admissible index.
inline ReductionTrace staged_reduction(const MulticolorTableau& input, int t, int sub_m) {
  ReductionTrace tr;
  tr.t = t;
  tr.sub_m = sub_m;
  if (sub_m < 1) throw std::invalid_argument("staged_reduction: sub_m must be >= 1");
  detail::StageContext ctx{input, {}};
  ctx.T.t = t;
  if (auto v = check_conform(ctx.T, t)) {
    tr.outcome = ReductionOutcome::NotConform;
    tr.violation = v;
    tr.note = "input is not " + std::to_string(t) + "-conform: " + v->describe();
    return tr;
  }
  for (int stage = 1;; ++stage) {
    StageRecord rec;
    rec.stage = stage;
    rec.width = ctx.T.width();
    rec.k = (rec.width + 1) / 2;
    rec.excluded = ctx.C;
    for (int c : unique_colors(ctx.T.at(1, rec.k)))
      if (!ctx.C.count(c)) {
        rec.c = c;
        break;
      }
    if (rec.c == 0) {
      tr.stages.push_back(rec);
      tr.outcome = ReductionOutcome::Exhausted;
      tr.note = "every unique color of the central top cell is excluded";
      return tr;
    }
    rec.quarter = property3_witness(ctx.T, 1, rec.k, rec.c);
    if (!rec.quarter) {
      tr.stages.push_back(rec);
      tr.outcome = ReductionOutcome::NotConform;
      tr.violation = check_conform(ctx.T, t);
      tr.note = "no quarter block witnesses the unique color";
      return tr;
    }
    // The quarter block has width 2^q - 1; it must split into 2^{sub_m - 1}
    // blocks of width 2^w - 1, w >= 1.
    const int q = ctx.T.mprime - 2;
    const int w = q - (sub_m - 1);
    if (q < 1 || w < 1) {
      tr.stages.push_back(rec);
      tr.outcome = ReductionOutcome::TooSmall;
      tr.note = "quarter block too narrow for " + std::to_string(std::int64_t{1} << (sub_m - 1)) + " subblocks";
      return tr;
    }
    rec.quarter_center = detail::quarter_center(rec.k, *rec.quarter);
    const ColumnRange qb = block(rec.quarter_center);
    const std::int64_t K = std::int64_t{1} << (sub_m - 1);
    const std::int64_t span = std::int64_t{1} << w;
    for (std::int64_t l = 1; l <= K; ++l) rec.centers.push_back(qb.lo - 1 + (l - 1) * span + span / 2);
    std::int64_t empty_block = 0;
    for (std::int64_t jl : rec.centers)
      if (!detail::column_range_has_unique(ctx.T, block(jl), rec.c)) {
        empty_block = jl;
        break;
      }
    if (empty_block == 0) {
      rec.branch = StageCase::Reduce;
      for (std::int64_t jl : rec.centers) {
        const ColumnRange b = block(jl);
        std::int64_t pick = b.lo;
        while (!ctx.T.unique(1, pick, rec.c)) ++pick;
        rec.odd_choices.push_back(pick - (qb.lo - 1));
      }
      const auto r1 = detail::reduce_step(ctx.T, rec.quarter_center, sub_m, rec.odd_choices, rec.c);
      rec.top_row_unique = r1.top_row_unique;
      rec.color_absent = r1.color_absent;
      tr.reduced = r1.reduced;
      tr.reduced_violation = check_conform(r1.reduced, r1.reduced.t);
      tr.stages.push_back(rec);
      tr.outcome = ReductionOutcome::Reduced;
      if (!r1.color_absent)
        tr.note = "color " + std::to_string(rec.c) + " survives the top-row deletion";
      else
        tr.note = tr.reduced_violation ? "reduced tableau is not (t-1)-conform: " + tr.reduced_violation->describe()
                                       : "reduced tableau is (t-1)-conform";
      return tr;
    }
    rec.branch = StageCase::Descend;
    rec.descend_to = empty_block;
    tr.stages.push_back(rec);
    ctx.T = op_restrict_block(ctx.T, empty_block);
    ctx.C.insert(rec.c);
  }
}

inline ReductionTrace staged_reduction(const MulticolorTableau& input, int t) {
  return staged_reduction(input, t, default_sub_m(t));
}

/// Re-evaluates every recorded claim of a trace against the input tableau.
/// Returns an empty string when all claims hold, else the first broken one.
inline std::string verify_trace(const MulticolorTableau& input, const ReductionTrace& tr) {
  const int t = tr.t;
  MulticolorTableau T = input;
  T.t = t;
  if (tr.outcome == ReductionOutcome::NotConform && tr.stages.empty()) {
    if (!tr.violation) return "missing violation";
    auto v = check_conform(T, t);
    if (!v || v->property != tr.violation->property || v->i != tr.violation->i || v->k != tr.violation->k)
      return "recorded violation does not reproduce";
    return "";
  }
  if (check_conform(T, t)) return "input is not conform but the trace proceeds";
  std::set<int> C;
  for (std::size_t s = 0; s < tr.stages.size(); ++s) {
    const StageRecord& r = tr.stages[s];
    const bool last = s + 1 == tr.stages.size();
    if (r.width != T.width() || r.k != (T.width() + 1) / 2) return "stage " + std::to_string(r.stage) + ": wrong center";
    if (r.excluded != C) return "stage " + std::to_string(r.stage) + ": wrong excluded set";
    // Precondition: excluded colors are never unique in the top row.
    for (int c : C)
      for (std::int64_t j = 1; j <= T.width(); ++j)
        if (T.unique(1, j, c)) return "stage " + std::to_string(r.stage) + ": excluded color unique in top row";
    const auto U = unique_colors(T.at(1, r.k));
    int expect_c = 0;
    for (int c : U)
      if (!C.count(c)) {
        expect_c = c;
        break;
      }
    if (r.c != expect_c) return "stage " + std::to_string(r.stage) + ": wrong color choice";
    if (r.c == 0) return last && tr.outcome == ReductionOutcome::Exhausted ? "" : "stage without color must end the trace";
    const auto witness = property3_witness(T, 1, r.k, r.c);
    if (witness != r.quarter) return "stage " + std::to_string(r.stage) + ": wrong quarter witness";
    if (!witness) return last && tr.outcome == ReductionOutcome::NotConform ? "" : "missing witness must end the trace";
    if (r.centers.empty()) return last && tr.outcome == ReductionOutcome::TooSmall ? "" : "stage without subblocks must end the trace";
    if (!q_holds(T, 1, r.k, r.c, *witness)) return "stage " + std::to_string(r.stage) + ": Q does not hold";
    if (block(r.quarter_center) != block_quarter(r.k, *witness)) return "stage " + std::to_string(r.stage) + ": wrong quarter block";
    bool reduce = true;
    for (std::int64_t jl : r.centers) reduce = reduce && detail::column_range_has_unique(T, block(jl), r.c);
    if (reduce != (r.branch == StageCase::Reduce)) return "stage " + std::to_string(r.stage) + ": wrong case";
    if (reduce) {
      const ColumnRange qb = block(r.quarter_center);
      for (std::size_t l = 0; l < r.centers.size(); ++l) {
        const std::int64_t j = qb.lo - 1 + r.odd_choices[l];
        if (!block(r.centers[l]).contains(j) || !T.unique(1, j, r.c))
          return "stage " + std::to_string(r.stage) + ": bad odd choice";
      }
      const auto r1 = detail::reduce_step(T, r.quarter_center, tr.sub_m, r.odd_choices, r.c);
      std::int64_t unique_cols = 0;
      for (std::int64_t j = 1; j <= r1.selected.width(); ++j) unique_cols += r1.selected.unique(1, j, r.c) ? 1 : 0;
      if ((unique_cols == r1.selected.width()) != r.top_row_unique)
        return "stage " + std::to_string(r.stage) + ": top-row uniqueness claim does not reproduce";
      if (r1.color_absent != r.color_absent || r1.color_absent == detail::mentions(op_delete_top_rows(r1.selected, tr.sub_m), r.c))
        return "stage " + std::to_string(r.stage) + ": absence claim does not reproduce";
      if (!tr.reduced || !(r1.reduced == *tr.reduced)) return "reduced tableau does not reproduce";
      const auto v = check_conform(r1.reduced, r1.reduced.t);
      if (v.has_value() != tr.reduced_violation.has_value()) return "reduced conformity result does not reproduce";
      return last ? "" : "case 1 must end the trace";
    }
    if (r.descend_to == 0 || detail::column_range_has_unique(T, block(r.descend_to), r.c))
      return "stage " + std::to_string(r.stage) + ": descent block still has the color unique";
    T = op_restrict_block(T, r.descend_to);
    C.insert(r.c);
  }
  return "";
}

}  // namespace orthoguard
