#pragma once

// Exhaustive search for strong and conflict-free r-guardings with a fixed
// number of colors. Guards sit at cell representatives; a cell carries at
// most one guard per color, and in strong mode at most one guard at all.

#include "orthoguard/verify.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace orthoguard {

enum class SearchStatus { Yes, No, Unknown };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Yes: return "yes";
    case SearchStatus::No: return "no";
    case SearchStatus::Unknown: return "unknown";
  }
  return "?";
}

struct SearchResult {
  SearchStatus status = SearchStatus::Unknown;
  std::optional<ChromaticGuarding> witness;
  std::uint64_t nodes = 0;  // complete or partial cell assignments visited
  double seconds = 0;
};

namespace detail {

class Searcher {
 public:
  using Clock = std::chrono::steady_clock;

  Searcher(const CellGrid& grid, int t, Mode mode, Clock::time_point deadline)
      : grid_(grid), t_(t), mode_(mode), deadline_(deadline) {
    // Deepest rows first, then left to right.
    order_ = grid.inside_cells();
    std::stable_sort(order_.begin(), order_.end(),
                     [](const CellId& x, const CellId& y) { return std::pair(x.b, x.a) < std::pair(y.b, y.a); });
    const std::size_t n = order_.size();
    sees_.resize(n);
    closing_.resize(n);
    std::vector<std::size_t> last(n, 0);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (cells_r_visible(order_[p], order_[q], grid)) {
          sees_[p].push_back(q);
          last[q] = std::max(last[q], p);
        }
    for (std::size_t q = 0; q < n; ++q) closing_[last[q]].push_back(q);
    count_.assign(n * static_cast<std::size_t>(t), 0);
    choice_.assign(n, 0);
    // Options per cell as color bitmasks; strong mode allows single colors only.
    options_.push_back(0);
    for (std::uint32_t mask = 1; mask < (1u << t); ++mask)
      if (mode == Mode::ConflictFree || (mask & (mask - 1)) == 0) options_.push_back(mask);
  }

  SearchResult run() {
    const auto start = Clock::now();
    SearchResult r;
    const int found = dfs(0, 0);
    r.nodes = nodes_;
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (found < 0) {
      r.status = SearchStatus::Unknown;
    } else if (found == 0) {
      r.status = SearchStatus::No;
    } else {
      r.status = SearchStatus::Yes;
      ChromaticGuarding g;
      g.model = Model::R;
      g.t = t_;
      for (std::size_t p = 0; p < order_.size(); ++p)
        for (int c = 0; c < t_; ++c)
          if (choice_[p] & (1u << c)) g.guards.push_back({grid_.center(order_[p]), c + 1, 0, c + 1, c + 1});
      r.witness = std::move(g);
    }
    return r;
  }

 private:
  // 1 found, 0 exhausted, -1 out of time.
  int dfs(std::size_t p, int used) {
    ++nodes_;
    if ((nodes_ & 0xfff) == 0 && Clock::now() > deadline_) return -1;
    if (p == order_.size()) return 1;
    for (std::uint32_t mask : options_) {
      // Colors above `used` must be introduced in order: used+1, used+2, ...
      const std::uint32_t fresh = mask >> used;
      if ((fresh & (fresh + 1)) != 0) continue;
      int fresh_count = 0;
      for (std::uint32_t f = fresh; f; f >>= 1) ++fresh_count;
      if (!apply(p, mask)) {
        undo(p, mask);
        continue;
      }
      choice_[p] = mask;
      if (closed_ok(p)) {
        const int r = dfs(p + 1, used + fresh_count);
        if (r != 0) return r;
      }
      choice_[p] = 0;
      undo(p, mask);
    }
    return 0;
  }

  // Adds the guards; false on a strong conflict.
  bool apply(std::size_t p, std::uint32_t mask) {
    bool ok = true;
    for (int c = 0; c < t_; ++c) {
      if (!(mask & (1u << c))) continue;
      for (std::size_t q : sees_[p]) {
        auto& cnt = count_[q * t_ + c];
        ++cnt;
        if (mode_ == Mode::Strong && cnt >= 2) ok = false;
      }
    }
    return ok;
  }

  void undo(std::size_t p, std::uint32_t mask) {
    for (int c = 0; c < t_; ++c)
      if (mask & (1u << c))
        for (std::size_t q : sees_[p]) --count_[q * t_ + c];
  }

  // Cells whose last possible observer is p must now be satisfied.
  bool closed_ok(std::size_t p) const {
    for (std::size_t q : closing_[p]) {
      bool covered = false, unique = false;
      for (int c = 0; c < t_; ++c) {
        const auto cnt = count_[q * t_ + c];
        covered = covered || cnt > 0;
        unique = unique || cnt == 1;
      }
      if (!covered || (mode_ == Mode::ConflictFree && !unique)) return false;
    }
    return true;
  }

  const CellGrid& grid_;
  int t_;
  Mode mode_;
  Clock::time_point deadline_;
  std::vector<CellId> order_;
  std::vector<std::vector<std::size_t>> sees_;
  std::vector<std::vector<std::size_t>> closing_;
  std::vector<std::uint16_t> count_;
  std::vector<std::uint32_t> choice_;
  std::vector<std::uint32_t> options_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Searches for an r-guarding with colors in [t].
inline SearchResult exists_guarding(const CellGrid& grid, int t, Mode mode, double budget_seconds) {
  if (t < 1 || t > 16) throw std::invalid_argument("exists_guarding: t must lie in [1, 16]");
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                                std::chrono::duration<double>(budget_seconds));
  return detail::Searcher(grid, t, mode, deadline).run();
}

inline SearchResult exists_guarding(const OrthoPolygon& poly, int t, Mode mode, double budget_seconds) {
  return exists_guarding(CellGrid(poly), t, mode, budget_seconds);
}

struct MinColorsResult {
  SearchStatus status = SearchStatus::Unknown;  // Yes when `value` is exact
  int value = 0;
  int upper_bound = 0;                 // colors used by the constructive algorithm
  std::vector<SearchResult> levels;    // one per t tried, starting at 1
  std::optional<ChromaticGuarding> witness;
};

/// Smallest t admitting a guarding. Levels at or above the constructive
/// upper bound are not searched.
inline MinColorsResult min_colors(const OrthoPolygon& poly, Mode mode, double budget_seconds, int max_t = 16) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  MinColorsResult out;
  const CellGrid grid(poly);
  ChromaticGuarding upper = coloring(poly, mode);
  out.upper_bound = upper.t;
  for (int t = 1; t < upper.t && t <= max_t; ++t) {
    const double left = budget_seconds - std::chrono::duration<double>(Clock::now() - start).count();
    SearchResult r = left > 0 ? exists_guarding(grid, t, mode, left) : SearchResult{};
    out.levels.push_back(r);
    if (r.status == SearchStatus::Unknown) return out;
    if (r.status == SearchStatus::Yes) {
      out.status = SearchStatus::Yes;
      out.value = t;
      out.witness = std::move(r.witness);
      return out;
    }
  }
  if (upper.t > max_t) return out;
  out.status = SearchStatus::Yes;
  out.value = upper.t;
  out.witness = std::move(upper);
  return out;
}

}  // namespace orthoguard
