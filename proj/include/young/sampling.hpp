#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "young/dimension.hpp"
#include "young/numerics.hpp"
#include "young/partition.hpp"
#include "young/rng.hpp"

namespace young {

/// Uniform permutation of 1..n (Fisher-Yates with unbiased bounded draws).
inline std::vector<int> random_permutation(int n, RngStream& rng) {
  if (n < 0) throw std::invalid_argument("random_permutation: negative n");
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) perm[static_cast<std::size_t>(k)] = k + 1;
  for (std::size_t i = perm.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.bounded(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

/// Rows of the RSK insertion tableau P of a permutation of 1..n. The
/// recording tableau is never built.
inline std::vector<std::vector<int>> rsk_insertion_rows(std::span<const int> perm) {
  const auto n = perm.size();
  std::vector<char> seen(n + 1, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const int v = perm[k];
    if (v < 1 || static_cast<std::size_t>(v) > n)
      throw std::invalid_argument("rsk: entry out of range at index " + std::to_string(k));
    if (seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("rsk: duplicate entry at index " + std::to_string(k));
    seen[static_cast<std::size_t>(v)] = 1;
  }

  std::vector<std::vector<int>> tableau;
  for (int x : perm) {
    for (std::size_t r = 0;; ++r) {
      if (r == tableau.size()) {
        tableau.push_back({x});
        break;
      }
      auto& row = tableau[r];
      const auto it = std::upper_bound(row.begin(), row.end(), x);
      if (it == row.end()) {
        row.push_back(x);
        break;
      }
      std::swap(x, *it);
    }
  }
  return tableau;
}

inline Partition rsk_shape(std::span<const int> perm) {
  const auto tableau = rsk_insertion_rows(perm);
  std::vector<int> rows;
  rows.reserve(tableau.size());
  for (const auto& r : tableau) rows.push_back(static_cast<int>(r.size()));
  return Partition(std::move(rows), Partition::Unchecked{});
}

inline Partition sample_plancherel(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_plancherel: n must be positive");
  const auto perm = random_permutation(n, rng);
  return rsk_shape(perm);
}

struct GrowthCheckpoint {
  int n = 0;
  double c = 0.0;
  friend bool operator==(const GrowthCheckpoint&, const GrowthCheckpoint&) = default;
};

struct GrowthPath {
  std::vector<GrowthCheckpoint> checkpoints;
  Partition final_shape;
};

namespace detail {

// Mutable diagram with both row and column lengths, for growth processes.
class GrowingDiagram {
 public:
  GrowingDiagram() = default;
  explicit GrowingDiagram(const Partition& p) : rows_(p.row_vector()), n_(p.size()) {
    column_lengths(p.rows(), cols_);
  }

  [[nodiscard]] int size() const noexcept { return n_; }
  [[nodiscard]] const std::vector<int>& rows() const noexcept { return rows_; }
  [[nodiscard]] const std::vector<int>& cols() const noexcept { return cols_; }
  [[nodiscard]] int row(std::size_t i) const noexcept { return i < rows_.size() ? rows_[i] : 0; }
  [[nodiscard]] int col(std::size_t j) const noexcept { return j < cols_.size() ? cols_[j] : 0; }

  // Rows that can take one more cell, increasing; the last one is a new row.
  void addable_rows(std::vector<int>& out) const {
    out.clear();
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (i == 0 || rows_[i - 1] > rows_[i]) out.push_back(static_cast<int>(i));
    out.push_back(static_cast<int>(rows_.size()));
  }

  void add_to_row(int i) {
    const auto r = static_cast<std::size_t>(i);
    const int j = row(r);
    if (r == rows_.size()) {
      rows_.push_back(1);
    } else {
      ++rows_[r];
    }
    if (static_cast<std::size_t>(j) == cols_.size()) {
      cols_.push_back(1);
    } else {
      ++cols_[static_cast<std::size_t>(j)];
    }
    ++n_;
  }

  [[nodiscard]] Partition to_partition() const { return Partition(rows_, Partition::Unchecked{}); }

  // ln(dim(lambda + cell in row i) / dim(lambda)). Adding cell (i, j) raises
  // by one the hooks of the cells left of it in row i and below it in column
  // j, and n! gains the factor n+1; no other hook changes.
  [[nodiscard]] double extension_log_ratio(int i, std::span<const double> ln) const {
    const auto r = static_cast<std::size_t>(i);
    const int j = row(r);
    double d = ln[static_cast<std::size_t>(n_ + 1)];
    for (int jj = 0; jj < j; ++jj) {
      const int h = j - jj + col(static_cast<std::size_t>(jj)) - i - 1;
      d -= ln[static_cast<std::size_t>(h + 1)] - ln[static_cast<std::size_t>(h)];
    }
    for (int ii = 0; ii < i; ++ii) {
      const int h = row(static_cast<std::size_t>(ii)) - j + i - ii - 1;
      d -= ln[static_cast<std::size_t>(h + 1)] - ln[static_cast<std::size_t>(h)];
    }
    return d;
  }

 private:
  std::vector<int> rows_;
  std::vector<int> cols_;
  int n_ = 0;
};

// Tolerance of the growth-step normalization check.
inline constexpr double kGrowthNormTolerance = 1e-9;

// One Plancherel growth step on `d`; returns the chosen row. `logs` and
// `candidates` are scratch.
inline int plancherel_step_in_place(GrowingDiagram& d, RngStream& rng, std::vector<int>& candidates,
                                    std::vector<double>& logs) {
  const auto table = log_table(static_cast<std::size_t>(d.size()) + 2);
  const auto ln = table->ln_values();
  d.addable_rows(candidates);
  logs.resize(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) logs[k] = d.extension_log_ratio(candidates[k], ln);
  const double total = log_sum_exp(logs);
  // sum over extensions of dim(Lambda) = (n+1) dim(lambda)
  if (std::abs(total - ln[static_cast<std::size_t>(d.size() + 1)]) > kGrowthNormTolerance)
    throw std::logic_error("plancherel growth: transition weights do not sum to one");
  const double u = rng.uniform01();
  double cum = 0.0;
  std::size_t pick = candidates.size() - 1;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    cum += std::exp(logs[k] - total);
    if (u < cum) {
      pick = k;
      break;
    }
  }
  d.add_to_row(candidates[pick]);
  return candidates[pick];
}

}  // namespace detail

/// ln(dim(Lambda) / dim(p)) for every addable extension Lambda of p, in the
/// order of addable_corners(p). Incremental: O(rows + cols) per extension.
inline std::vector<double> extension_log_ratios(const Partition& p) {
  const detail::GrowingDiagram d(p);
  const auto table = log_table(static_cast<std::size_t>(p.size()) + 2);
  std::vector<int> candidates;
  d.addable_rows(candidates);
  std::vector<double> out;
  out.reserve(candidates.size());
  for (int i : candidates) out.push_back(d.extension_log_ratio(i, table->ln_values()));
  return out;
}

/// One step of the Plancherel Markov chain: extension Lambda of p is chosen
/// with probability dim(Lambda) / ((n+1) dim(p)).
inline Partition plancherel_growth_step(const Partition& p, RngStream& rng) {
  detail::GrowingDiagram d(p);
  std::vector<int> candidates;
  std::vector<double> logs;
  detail::plancherel_step_in_place(d, rng, candidates, logs);
  return d.to_partition();
}

namespace detail {

inline void check_path_args(int n_max, int stride) {
  if (n_max < 1) throw std::invalid_argument("growth path: n_max must be positive");
  if (stride < 1) throw std::invalid_argument("growth path: stride must be positive");
}

}  // namespace detail

/// Plancherel chain from the empty diagram to size n_max, recording the
/// normalized dimension at every multiple of `stride`.
inline GrowthPath plancherel_growth_path(int n_max, int stride, RngStream& rng) {
  detail::check_path_args(n_max, stride);
  detail::GrowingDiagram d;
  std::vector<int> candidates;
  std::vector<double> logs;
  GrowthPath path;
  for (int n = 1; n <= n_max; ++n) {
    detail::plancherel_step_in_place(d, rng, candidates, logs);
    if (n % stride == 0) path.checkpoints.push_back({n, normalized_c(d.to_partition())});
  }
  path.final_shape = d.to_partition();
  return path;
}

namespace detail {

// Fenwick tree over 0/1 flags with k-th set-bit search.
class FlagTree {
 public:
  explicit FlagTree(std::size_t size) : tree_(size + 1, 0), flags_(size, 0) {
    std::size_t p = 1;
    while (p * 2 <= size) p *= 2;
    top_ = p;
  }

  void set(std::size_t i, bool on) {
    if (static_cast<bool>(flags_[i]) == on) return;
    flags_[i] = on ? 1 : 0;
    const int delta = on ? 1 : -1;
    total_ += delta;
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
  }
  [[nodiscard]] bool get(std::size_t i) const noexcept { return flags_[i] != 0; }
  [[nodiscard]] int total() const noexcept { return total_; }

  // Index of the k-th (0-based) set flag in increasing index order.
  [[nodiscard]] std::size_t find(int k) const noexcept {
    std::size_t pos = 0;
    int rem = k + 1;
    for (std::size_t step = top_; step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] < rem) {
        pos = next;
        rem -= tree_[next];
      }
    }
    return pos;
  }

 private:
  std::vector<int> tree_;
  std::vector<char> flags_;
  std::size_t top_ = 1;
  int total_ = 0;
};

// Richardson growth in two dimensions. Addable corners are kept as flags over
// row indices (row i is addable iff i == 0 or rows[i-1] > rows[i], rows padded
// with zeros), so the k-th corner in increasing row order is one tree search.
class RichardsonDiagram2D {
 public:
  explicit RichardsonDiagram2D(int capacity)
      : rows_(static_cast<std::size_t>(capacity) + 2, 0), corners_(static_cast<std::size_t>(capacity) + 2) {
    corners_.set(0, true);
  }

  int step(RngStream& rng) {
    const auto k = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(corners_.total())));
    const std::size_t i = corners_.find(k);
    ++rows_[i];
    if (i + 1 > used_) used_ = i + 1;
    ++n_;
    corners_.set(i, i == 0 || rows_[i - 1] > rows_[i]);
    corners_.set(i + 1, true);
    return static_cast<int>(i);
  }

  [[nodiscard]] int size() const noexcept { return n_; }
  [[nodiscard]] std::span<const int> rows() const noexcept { return {rows_.data(), used_}; }
  [[nodiscard]] int corner_count() const noexcept { return corners_.total(); }
  [[nodiscard]] Partition to_partition() const {
    return Partition(std::vector<int>(rows_.begin(), rows_.begin() + static_cast<std::ptrdiff_t>(used_)),
                     Partition::Unchecked{});
  }

 private:
  std::vector<int> rows_;
  FlagTree corners_;
  std::size_t used_ = 0;
  int n_ = 0;
};

}  // namespace detail

/// Richardson corner growth: n times, add a cell at a uniformly chosen
/// addable corner.
inline Partition richardson_grow_2d(int n, RngStream& rng) {
  if (n < 0) throw std::invalid_argument("richardson_grow_2d: negative n");
  detail::RichardsonDiagram2D d(n);
  for (int k = 0; k < n; ++k) d.step(rng);
  return d.to_partition();
}

inline GrowthPath richardson_c_path(int n_max, int stride, RngStream& rng) {
  detail::check_path_args(n_max, stride);
  detail::RichardsonDiagram2D d(n_max);
  GrowthPath path;
  for (int n = 1; n <= n_max; ++n) {
    d.step(rng);
    if (n % stride == 0) path.checkpoints.push_back({n, normalized_c(d.to_partition())});
  }
  path.final_shape = d.to_partition();
  return path;
}

namespace detail {

// Richardson growth in three dimensions. The addable set is an indexable
// vector with swap-removal; the order is a deterministic function of the
// transcript.
class RichardsonDiagram3D {
 public:
  RichardsonDiagram3D() { insert({0, 0}); }

  void step(RngStream& rng) {
    const auto k = static_cast<std::size_t>(rng.bounded(addable_.size()));
    const CellPos c = addable_[k];
    auto& rows = heights_;
    if (static_cast<std::size_t>(c.i) == rows.size()) rows.emplace_back();
    auto& r = rows[static_cast<std::size_t>(c.i)];
    if (static_cast<std::size_t>(c.j) == r.size()) {
      r.push_back(1);
    } else {
      ++r[static_cast<std::size_t>(c.j)];
    }
    ++n_;
    refresh(c);
    refresh({c.i + 1, c.j});
    refresh({c.i, c.j + 1});
  }

  [[nodiscard]] PlanePartition to_plane_partition() const {
    return PlanePartition(heights_, PlanePartition::Unchecked{});
  }
  [[nodiscard]] std::size_t addable_count() const noexcept { return addable_.size(); }

 private:
  static std::uint64_t key(CellPos c) noexcept {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.i)) << 32) |
           static_cast<std::uint32_t>(c.j);
  }
  [[nodiscard]] int height(int i, int j) const noexcept {
    if (static_cast<std::size_t>(i) >= heights_.size()) return 0;
    const auto& r = heights_[static_cast<std::size_t>(i)];
    return static_cast<std::size_t>(j) < r.size() ? r[static_cast<std::size_t>(j)] : 0;
  }
  [[nodiscard]] bool addable(CellPos c) const noexcept {
    const int h = height(c.i, c.j);
    return (c.i == 0 || h < height(c.i - 1, c.j)) && (c.j == 0 || h < height(c.i, c.j - 1));
  }
  void insert(CellPos c) {
    slot_.emplace(key(c), addable_.size());
    addable_.push_back(c);
  }
  void refresh(CellPos c) {
    const bool want = addable(c);
    const auto it = slot_.find(key(c));
    const bool have = it != slot_.end();
    if (want == have) return;
    if (want) {
      insert(c);
      return;
    }
    const std::size_t pos = it->second;
    slot_.erase(it);
    if (pos + 1 != addable_.size()) {
      addable_[pos] = addable_.back();
      slot_[key(addable_[pos])] = pos;
    }
    addable_.pop_back();
  }

  std::vector<std::vector<int>> heights_;
  std::vector<CellPos> addable_;
  std::unordered_map<std::uint64_t, std::size_t> slot_;
  long long n_ = 0;
};

}  // namespace detail

/// Richardson growth of a plane partition: n times, increment a uniformly
/// chosen addable cell.
inline PlanePartition richardson_grow_3d(int n, RngStream& rng) {
  if (n < 0) throw std::invalid_argument("richardson_grow_3d: negative n");
  detail::RichardsonDiagram3D d;
  for (int k = 0; k < n; ++k) d.step(rng);
  return d.to_plane_partition();
}

}  // namespace young
