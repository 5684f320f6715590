#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "young/numerics.hpp"
#include "young/partition.hpp"

namespace young {

using BigInt = boost::multiprecision::cpp_int;

/// Natural logarithm of a diagram dimension.
struct LogDim {
  double value = 0.0;
  friend constexpr auto operator<=>(const LogDim&, const LogDim&) = default;
};

// Hook of cell (i,j): the cell, the cells to its right in row i, and the cells
// above it in column j (French drawing, rows stacked upward). With cols[j] the
// column length this is rows[i] - j + cols[j] - i - 1, the same number the
// English convention gets from arm + leg + 1.
inline int hook_length(const Partition& p, CellPos c) {
  if (!p.contains(c)) throw InvalidShape("hook_length: cell outside diagram");
  int leg = 0;
  for (int r = c.i + 1; r < p.num_rows() && p.row(r) > c.j; ++r) ++leg;
  return (p.row(c.i) - c.j - 1) + leg + 1;
}

/// Sum of ln(hook) over all cells. `cols` is scratch storage; `ln` must cover
/// indices up to rows.size() + rows[0].
inline double sum_log_hooks(std::span<const int> rows, std::span<const double> ln,
                            std::vector<int>& cols) {
  column_lengths(rows, cols);
  double s = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int len = rows[i];
    const int base = len - static_cast<int>(i) - 1;
    for (int j = 0; j < len; ++j) s += ln[static_cast<std::size_t>(base - j + cols[static_cast<std::size_t>(j)])];
  }
  return s;
}

inline double sum_log_hooks(const Partition& p) {
  const auto table = log_table(static_cast<std::size_t>(p.size()) + 1);
  std::vector<int> cols;
  return sum_log_hooks(p.rows(), table->ln_values(), cols);
}

inline LogDim log_dim(const Partition& p) {
  return LogDim{log_factorial(static_cast<std::size_t>(p.size())) - sum_log_hooks(p)};
}

/// Exact dimension n! / prod(hooks).
inline BigInt dim_exact(const Partition& p) {
  BigInt fact = 1;
  for (int k = 2; k <= p.size(); ++k) fact *= k;
  BigInt hooks = 1;
  std::vector<int> cols;
  column_lengths(p.rows(), cols);
  const auto rows = p.rows();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < rows[i]; ++j)
      hooks *= rows[i] - j + cols[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1;
  return fact / hooks;
}

/// c = -(2/sqrt n) ln(dim / sqrt(n!)) given ln dim.
inline double normalized_c_from_log_dim(double ln_dim, int n) {
  if (n <= 0) throw std::invalid_argument("normalized_c: empty diagram");
  return -2.0 / std::sqrt(static_cast<double>(n)) *
         (ln_dim - 0.5 * log_factorial(static_cast<std::size_t>(n)));
}

/// Normalized dimension, evaluated as (2/sqrt n)(sum ln hooks - ln(n!)/2).
inline double normalized_c(const Partition& p) {
  if (p.size() <= 0) throw std::invalid_argument("normalized_c: empty diagram");
  const double half_ln_fact = 0.5 * log_factorial(static_cast<std::size_t>(p.size()));
  return 2.0 / std::sqrt(static_cast<double>(p.size())) * (sum_log_hooks(p) - half_ln_fact);
}

}  // namespace young
