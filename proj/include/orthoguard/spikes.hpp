#pragma once

// Spike polygons S_m (plain and vertically stretched) and the column/block
// arithmetic used by the lower-bound machinery.
//
// Geometry: column k in [1, 2^m - 1] spans x in [2(k-1), 2k] (x is doubled so
// column midlines and special points are integral). The top edge is y = 0 and
// column k reaches down to the bottom of its row d_m(k).

#include "orthoguard/grid.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orthoguard {

/// Multiplicity of the factor 2 in k (k >= 1).
inline int pi2(std::int64_t k) {
  int p = 0;
  while (k % 2 == 0) {
    k /= 2;
    ++p;
  }
  return p;
}

inline std::int64_t column_count(int m) { return (std::int64_t{1} << m) - 1; }

inline void require_column(int m, std::int64_t k) {
  if (m < 1 || m > 62) throw std::out_of_range("spike parameter m out of range: " + std::to_string(m));
  if (k < 1 || k > column_count(m))
    throw std::out_of_range("column " + std::to_string(k) + " outside [1, " + std::to_string(column_count(m)) + "]");
}

/// Combinatorial depth d_m(k) = m - pi2(k).
inline int depth(int m, std::int64_t k) {
  require_column(m, k);
  return m - pi2(k);
}

/// Closed column interval [lo, hi]; empty when lo > hi.
struct ColumnRange {
  std::int64_t lo = 1;
  std::int64_t hi = 0;

  bool empty() const { return lo > hi; }
  std::int64_t size() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(std::int64_t k) const { return lo <= k && k <= hi; }

  friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

enum class Quarter { LL, LR, RL, RR };
inline constexpr Quarter kQuarters[] = {Quarter::LL, Quarter::LR, Quarter::RL, Quarter::RR};

inline const char* to_string(Quarter q) {
  switch (q) {
    case Quarter::LL: return "LL";
    case Quarter::LR: return "LR";
    case Quarter::RL: return "RL";
    case Quarter::RR: return "RR";
  }
  return "?";
}

enum class Side { L, R };
inline const char* to_string(Side s) { return s == Side::L ? "L" : "R"; }

// Block arithmetic depends only on k; m merely bounds the column range.
inline ColumnRange block(std::int64_t k) {
  const std::int64_t r = (std::int64_t{1} << pi2(k)) - 1;
  return {k - r, k + r};
}
inline ColumnRange block_left(std::int64_t k) { return {block(k).lo, k - 1}; }
inline ColumnRange block_right(std::int64_t k) { return {k + 1, block(k).hi}; }
inline ColumnRange block_half(std::int64_t k, Side s) { return s == Side::L ? block_left(k) : block_right(k); }

/// Centers of the two halves of B(k); only meaningful for even k.
inline std::int64_t left_center(std::int64_t k) {
  const int p = pi2(k);
  if (p == 0) throw std::domain_error("left_center: column " + std::to_string(k) + " is odd");
  return k - (std::int64_t{1} << (p - 1));
}
inline std::int64_t right_center(std::int64_t k) {
  const int p = pi2(k);
  if (p == 0) throw std::domain_error("right_center: column " + std::to_string(k) + " is odd");
  return k + (std::int64_t{1} << (p - 1));
}

/// Quarter subblocks; empty unless pi2(k) >= 2.
inline ColumnRange block_quarter(std::int64_t k, Quarter q) {
  if (pi2(k) == 0) return {};
  switch (q) {
    case Quarter::LL: return block_left(left_center(k));
    case Quarter::LR: return block_right(left_center(k));
    case Quarter::RL: return block_left(right_center(k));
    case Quarter::RR: return block_right(right_center(k));
  }
  return {};
}

struct BlockInfo {
  int m = 0;
  std::int64_t k = 0;
  int depth = 0;
  ColumnRange b, bl, br;
  std::int64_t l = 0, r = 0;  // 0 when k is odd
  ColumnRange ll, lr, rl, rr;
};

inline BlockInfo block_ops(int m, std::int64_t k) {
  BlockInfo info;
  info.m = m;
  info.k = k;
  info.depth = depth(m, k);
  info.b = block(k);
  info.bl = block_left(k);
  info.br = block_right(k);
  if (pi2(k) > 0) {
    info.l = left_center(k);
    info.r = right_center(k);
  }
  info.ll = block_quarter(k, Quarter::LL);
  info.lr = block_quarter(k, Quarter::LR);
  info.rl = block_quarter(k, Quarter::RL);
  info.rr = block_quarter(k, Quarter::RR);
  return info;
}

/// Scaled x-coordinate of column k's midline.
inline BigInt midline_x(std::int64_t k) { return BigInt(2 * k - 1); }

/// Left wing: strictly left of column k's midline.
inline Side wing(int m, std::int64_t k, const Point& p) {
  require_column(m, k);
  return p.x < Coord(midline_x(k)) ? Side::L : Side::R;
}

/// Depth (positive) of the bottom of row i, i.e. the sum of the first i row heights.
inline BigInt row_bottom(int m, int i, bool stretched) {
  if (i < 1) throw std::out_of_range("row index must be >= 1");
  if (!stretched) return BigInt(i);
  return pow2(static_cast<unsigned>((i - 1) * m));
}

/// Height of row i: 1 for plain rows; 1 then 2^{(i-1)m} - 2^{(i-2)m} when stretched.
inline BigInt row_height(int m, int i, bool stretched) {
  if (i == 1) return 1;
  return row_bottom(m, i, stretched) - row_bottom(m, i - 1, stretched);
}

/// Geometric depth of column k.
inline BigInt geometric_depth(int m, std::int64_t k, bool stretched) { return row_bottom(m, depth(m, k), stretched); }

/// Counterclockwise comb polygon with 2^{m+1} vertices.
inline OrthoPolygon gen_spike(int m, bool stretched) {
  if (m < 1) throw std::invalid_argument("gen_spike: m must be >= 1");
  if (m > 24) throw std::invalid_argument("gen_spike: m too large");
  const std::int64_t n = column_count(m);
  std::vector<BigInt> bottoms(static_cast<std::size_t>(m) + 1);
  for (int i = 1; i <= m; ++i) bottoms[i] = row_bottom(m, i, stretched);
  OrthoPolygon poly;
  poly.vertices.reserve(static_cast<std::size_t>(2 * n + 2));
  poly.vertices.emplace_back(0, 0);
  for (std::int64_t k = 1; k <= n; ++k) {
    const Coord y = -Coord(bottoms[m - pi2(k)]);
    poly.vertices.emplace_back(Coord(2 * (k - 1)), y);
    poly.vertices.emplace_back(Coord(2 * k), y);
  }
  poly.vertices.emplace_back(Coord(2 * n), Coord(0));
  return poly;
}

/// Grid cell of R_{i,k} in the vertex grid of gen_spike(m, *).
inline CellId spike_cell(int m, int i, std::int64_t k) {
  if (i < 1 || i > depth(m, k)) throw std::out_of_range("row " + std::to_string(i) + " outside column " + std::to_string(k));
  return {static_cast<int>(k - 1), m - i};
}

/// Inverse of spike_cell: (row i, column k).
inline std::pair<int, std::int64_t> spike_row_col(int m, CellId c) { return {m - c.b, c.a + 1}; }

/// Midpoint of the lower side of R_{i,k}.
inline Point special_point(int m, int i, std::int64_t k, bool stretched) {
  if (i < 1 || i > depth(m, k)) throw std::out_of_range("row " + std::to_string(i) + " outside column " + std::to_string(k));
  return {Coord(midline_x(k)), -Coord(row_bottom(m, i, stretched))};
}

/// Recognizes gen_spike output; returns (m, stretched).
inline std::optional<std::pair<int, bool>> recognize_spike(const OrthoPolygon& poly) {
  const std::size_t n = poly.size();
  if (n < 4 || (n & (n - 1)) != 0) return std::nullopt;
  int m = 0;
  while ((std::size_t{2} << m) < n) ++m;
  if (m < 1 || m > 24) return std::nullopt;
  for (bool stretched : {false, true}) {
    if (m == 1 && stretched) continue;
    if (gen_spike(m, stretched) == poly) return std::pair{m, stretched};
  }
  return std::nullopt;
}

enum class Model { R, L };
inline const char* to_string(Model md) { return md == Model::R ? "r" : "l"; }

/// Minimal m for which every conflict-free t-coloring is impossible, as
/// produced by the tableau induction.
inline BigInt lb_size(int t, Model model) {
  if (t < 1) throw std::invalid_argument("lb_size: t must be >= 1");
  BigInt v = model == Model::R ? 2 : 3;
  for (int s = 2; s <= t; ++s) {
    if (model == Model::R)
      v = 1 + s * v;
    else
      v = 1 + s * (v + 1);
  }
  return v;
}

}  // namespace orthoguard
