#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace young {

class InvalidShape : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A cell of a diagram, 0-based. Row 0 is the longest row (the bottom row in
// French drawings), column 0 the leftmost column.
struct CellPos {
  int i = 0;
  int j = 0;
  friend constexpr auto operator<=>(const CellPos&, const CellPos&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const CellPos& c) {
  return os << '(' << c.i << ',' << c.j << ')';
}

/// Two-dimensional Young diagram stored as weakly decreasing positive row
/// lengths. Immutable once built.
class Partition {
 public:
  Partition() = default;

  /// Validated construction. Throws InvalidShape naming the first bad index.
  static Partition from_rows(std::vector<int> rows) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k] <= 0)
        throw InvalidShape("non-positive row length at index " + std::to_string(k));
      if (k > 0 && rows[k] > rows[k - 1])
        throw InvalidShape("rows not weakly decreasing at index " + std::to_string(k));
    }
    return Partition(std::move(rows), Unchecked{});
  }

  static Partition from_rows(std::span<const int> rows) {
    return from_rows(std::vector<int>(rows.begin(), rows.end()));
  }

  // Caller guarantees the invariants (generators, samplers).
  struct Unchecked {};
  Partition(std::vector<int> rows, Unchecked) : rows_(std::move(rows)) {
    for (int r : rows_) n_ += r;
  }

  [[nodiscard]] std::span<const int> rows() const noexcept { return rows_; }
  [[nodiscard]] const std::vector<int>& row_vector() const noexcept { return rows_; }
  [[nodiscard]] int size() const noexcept { return n_; }
  [[nodiscard]] int num_rows() const noexcept { return static_cast<int>(rows_.size()); }
  [[nodiscard]] bool empty() const noexcept { return rows_.empty(); }
  [[nodiscard]] int row(int i) const noexcept {
    return i >= 0 && i < num_rows() ? rows_[static_cast<std::size_t>(i)] : 0;
  }
  [[nodiscard]] bool contains(CellPos c) const noexcept {
    return c.i >= 0 && c.j >= 0 && c.j < row(c.i);
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.rows_ == b.rows_; }
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.rows_ <=> b.rows_; }

 private:
  std::vector<int> rows_;
  int n_ = 0;
};

inline std::string to_string(const Partition& p) {
  std::string s;
  for (std::size_t k = 0; k < p.rows().size(); ++k) {
    if (k) s += ',';
    s += std::to_string(p.rows()[k]);
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const Partition& p) {
  return os << '[' << to_string(p) << ']';
}

/// Column lengths of `rows`; cols[j] = number of rows longer than j.
inline void column_lengths(std::span<const int> rows, std::vector<int>& cols) {
  cols.assign(rows.empty() ? 0 : static_cast<std::size_t>(rows[0]), 0);
  int i = static_cast<int>(rows.size());
  // Walk rows from the shortest so each column is written once.
  int j = 0;
  while (i > 0) {
    const int len = rows[static_cast<std::size_t>(i - 1)];
    for (; j < len; ++j) cols[static_cast<std::size_t>(j)] = i;
    --i;
  }
}

inline Partition conjugate(const Partition& p) {
  std::vector<int> cols;
  column_lengths(p.rows(), cols);
  return Partition(std::move(cols), Partition::Unchecked{});
}

inline bool is_self_conjugate(const Partition& p) { return conjugate(p) == p; }

/// Positions where one cell can be added, in increasing row order. The last
/// entry always opens a new row.
inline std::vector<CellPos> addable_corners(const Partition& p) {
  std::vector<CellPos> out;
  const auto rows = p.rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == 0 || rows[i - 1] > rows[i]) out.push_back({static_cast<int>(i), rows[i]});
  }
  out.push_back({p.num_rows(), 0});
  return out;
}

/// Cells whose removal leaves a valid diagram, in increasing row order.
inline std::vector<CellPos> removable_corners(const Partition& p) {
  std::vector<CellPos> out;
  const auto rows = p.rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i + 1 == rows.size() || rows[i + 1] < rows[i])
      out.push_back({static_cast<int>(i), rows[i] - 1});
  }
  return out;
}

inline Partition add_cell(const Partition& p, CellPos c) {
  std::vector<int> rows = p.row_vector();
  if (c.i == p.num_rows() && c.j == 0) {
    rows.push_back(1);
  } else if (c.i >= 0 && c.i < p.num_rows() && c.j == rows[static_cast<std::size_t>(c.i)]) {
    ++rows[static_cast<std::size_t>(c.i)];
  } else {
    throw InvalidShape("cell is not at the end of a row");
  }
  return Partition::from_rows(std::move(rows));
}

/// Side of the largest square anchored at the origin: max{k : rows[k-1] >= k}.
inline int durfee_side(std::span<const int> rows) noexcept {
  int k = 0;
  while (static_cast<std::size_t>(k) < rows.size() && rows[static_cast<std::size_t>(k)] >= k + 1) ++k;
  return k;
}

inline int durfee_side(const Partition& p) noexcept { return durfee_side(p.rows()); }

/// Three-dimensional Young diagram as a height field h(i,j). Stored as rows
/// of positive heights: heights[i].size() is the support length of row i.
class PlanePartition {
 public:
  PlanePartition() = default;

  /// Accepts a rectangular or ragged grid with zeros allowed; trailing zeros
  /// are trimmed after validation.
  static PlanePartition from_grid(const std::vector<std::vector<int>>& grid) {
    const auto at = [&](std::size_t i, std::size_t j) -> int {
      return i < grid.size() && j < grid[i].size() ? grid[i][j] : 0;
    };
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = 0; j < grid[i].size(); ++j) {
        const int h = grid[i][j];
        const std::string where = " at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        if (h < 0) throw InvalidShape("negative height" + where);
        if (i > 0 && h > at(i - 1, j)) throw InvalidShape("heights increase along column" + where);
        if (j > 0 && h > grid[i][j - 1]) throw InvalidShape("heights increase along row" + where);
      }
    }
    PlanePartition out;
    for (const auto& row : grid) {
      std::vector<int> trimmed;
      for (int h : row) {
        if (h == 0) break;
        trimmed.push_back(h);
      }
      if (trimmed.empty()) break;
      for (int h : trimmed) out.n_ += h;
      out.heights_.push_back(std::move(trimmed));
    }
    return out;
  }

  struct Unchecked {};
  PlanePartition(std::vector<std::vector<int>> heights, Unchecked) : heights_(std::move(heights)) {
    for (const auto& r : heights_)
      for (int h : r) n_ += h;
  }

  [[nodiscard]] int height(int i, int j) const noexcept {
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= heights_.size()) return 0;
    const auto& r = heights_[static_cast<std::size_t>(i)];
    return static_cast<std::size_t>(j) < r.size() ? r[static_cast<std::size_t>(j)] : 0;
  }
  [[nodiscard]] long long size() const noexcept { return n_; }
  [[nodiscard]] int num_rows() const noexcept { return static_cast<int>(heights_.size()); }
  [[nodiscard]] int row_length(int i) const noexcept {
    return i >= 0 && i < num_rows() ? static_cast<int>(heights_[static_cast<std::size_t>(i)].size()) : 0;
  }
  [[nodiscard]] int max_height() const noexcept { return height(0, 0); }
  [[nodiscard]] const std::vector<std::vector<int>>& rows() const noexcept { return heights_; }

  /// Both monotonicity invariants and positivity of stored heights.
  [[nodiscard]] bool is_valid() const noexcept {
    for (int i = 0; i < num_rows(); ++i) {
      const auto& r = heights_[static_cast<std::size_t>(i)];
      if (r.empty()) return false;
      if (i > 0 && r.size() > heights_[static_cast<std::size_t>(i - 1)].size()) return false;
      for (int j = 0; j < static_cast<int>(r.size()); ++j) {
        const int h = r[static_cast<std::size_t>(j)];
        if (h <= 0) return false;
        if (j > 0 && h > height(i, j - 1)) return false;
        if (i > 0 && h > height(i - 1, j)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const PlanePartition&, const PlanePartition&) = default;

 private:
  std::vector<std::vector<int>> heights_;
  long long n_ = 0;
};

/// True iff h(i,j) can be incremented without breaking monotonicity; the
/// missing neighbours at i-1 < 0 or j-1 < 0 count as infinitely tall.
inline bool is_addable_3d(const PlanePartition& p, int i, int j) noexcept {
  constexpr int kInf = std::numeric_limits<int>::max();
  const int h = p.height(i, j);
  const int up = i == 0 ? kInf : p.height(i - 1, j);
  const int left = j == 0 ? kInf : p.height(i, j - 1);
  return h < up && h < left;
}

/// All addable cells, sorted by (i, j).
inline std::vector<CellPos> addable_cells_3d(const PlanePartition& p) {
  std::vector<CellPos> out;
  for (int i = 0; i <= p.num_rows(); ++i) {
    for (int j = 0; j <= p.row_length(i); ++j) {
      if (is_addable_3d(p, i, j)) out.push_back({i, j});
    }
  }
  return out;
}

inline PlanePartition add_cell_3d(const PlanePartition& p, CellPos c) {
  if (!is_addable_3d(p, c.i, c.j)) throw InvalidShape("cell is not addable");
  auto rows = p.rows();
  if (static_cast<std::size_t>(c.i) == rows.size()) rows.emplace_back();
  auto& r = rows[static_cast<std::size_t>(c.i)];
  if (static_cast<std::size_t>(c.j) == r.size()) {
    r.push_back(1);
  } else {
    ++r[static_cast<std::size_t>(c.j)];
  }
  return PlanePartition(std::move(rows), PlanePartition::Unchecked{});
}

}  // namespace young
