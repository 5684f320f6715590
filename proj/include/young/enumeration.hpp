#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iterator>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "young/dimension.hpp"
#include "young/numerics.hpp"
#include "young/parallel.hpp"
#include "young/partition.hpp"

namespace young {

/// In-place generator of the partitions of n in reverse-lexicographic order
/// ([4], [3,1], [2,2], [2,1,1], [1,1,1,1]). With `first_part` set, only
/// partitions whose largest part equals it are produced.
class PartitionCursor {
 public:
  explicit PartitionCursor(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("partitions: negative n");
    rows_.reserve(static_cast<std::size_t>(n));
    if (n > 0) rows_.push_back(n);
  }

  PartitionCursor(int n, int first_part) : n_(n), fixed_(1) {
    if (first_part < 1 || first_part > n) throw std::invalid_argument("partitions: bad first part");
    rows_.reserve(static_cast<std::size_t>(n));
    rows_.push_back(first_part);
    fill(n - first_part, first_part);
  }

  [[nodiscard]] bool done() const noexcept { return done_; }
  [[nodiscard]] std::span<const int> rows() const noexcept { return rows_; }
  [[nodiscard]] int n() const noexcept { return n_; }

  void advance() {
    std::size_t ones = 0;
    while (ones < rows_.size() && rows_[rows_.size() - 1 - ones] == 1) ++ones;
    if (rows_.size() - ones <= fixed_) {
      done_ = true;
      return;
    }
    const std::size_t i = rows_.size() - ones - 1;
    const int v = rows_[i] - 1;
    rows_.resize(i + 1);
    rows_[i] = v;
    fill(static_cast<int>(ones) + 1, v);
  }

 private:
  void fill(int rem, int max_part) {
    while (rem > 0) {
      const int part = std::min(rem, max_part);
      rows_.push_back(part);
      rem -= part;
    }
  }

  std::vector<int> rows_;
  int n_ = 0;
  std::size_t fixed_ = 0;
  bool done_ = false;
};

/// Range adaptor: `for (std::span<const int> rows : partitions(n))`. The span
/// refers to the generator's buffer and is overwritten by the next step.
class PartitionRange {
 public:
  explicit PartitionRange(int n) : cursor_(n) {}

  class iterator {
   public:
    using value_type = std::span<const int>;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    explicit iterator(PartitionCursor* c) : c_(c) {}
    value_type operator*() const { return c_->rows(); }
    iterator& operator++() {
      c_->advance();
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.c_->done(); }

   private:
    PartitionCursor* c_ = nullptr;
  };

  iterator begin() { return iterator(&cursor_); }
  std::default_sentinel_t end() { return {}; }

 private:
  PartitionCursor cursor_;
};

inline PartitionRange partitions(int n) { return PartitionRange(n); }

/// Number of partitions of n (floating, for cost estimates).
inline double partition_count_approx(int n) {
  std::vector<long double> p(static_cast<std::size_t>(std::max(n, 0)) + 1, 0.0L);
  p[0] = 1.0L;
  for (int part = 1; part <= n; ++part)
    for (int m = part; m <= n; ++m) p[static_cast<std::size_t>(m)] += p[static_cast<std::size_t>(m - part)];
  return static_cast<double>(p[static_cast<std::size_t>(std::max(n, 0))]);
}

/// Diagram with Frobenius coordinates (a | a), a strictly decreasing: the
/// nested-hooks image of the distinct odd parts 2a_k + 1.
inline Partition partition_from_symmetric_hooks(std::span<const int> arms) {
  const int d = static_cast<int>(arms.size());
  std::vector<int> rows;
  for (int i = 0; i < d; ++i) rows.push_back(i + 1 + arms[static_cast<std::size_t>(i)]);
  for (int i = d;; ++i) {
    int len = 0;
    while (len < d && len + arms[static_cast<std::size_t>(len)] >= i) ++len;
    if (len == 0) break;
    rows.push_back(len);
  }
  return Partition(std::move(rows), Partition::Unchecked{});
}

/// All self-conjugate partitions of n, via partitions of n into distinct odd
/// parts. Ordered by the odd-part sets, largest parts first.
inline std::vector<Partition> self_conjugate_partitions(int n) {
  if (n < 0) throw std::invalid_argument("self_conjugate_partitions: negative n");
  std::vector<Partition> out;
  std::vector<int> arms;
  std::function<void(int, int)> rec = [&](int rem, int max_odd) {
    if (rem == 0) {
      out.push_back(partition_from_symmetric_hooks(arms));
      return;
    }
    int q = std::min(max_odd, rem);
    if (q % 2 == 0) --q;
    for (; q >= 1; q -= 2) {
      arms.push_back((q - 1) / 2);
      rec(rem - q, q - 2);
      arms.pop_back();
    }
  };
  rec(n, n % 2 == 0 ? n - 1 : n);
  return out;
}

/// Refusal to run an exhaustive scan past its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultExpectationCap = 70;
inline constexpr int kDefaultMaxDimCap = 75;

struct EnumerationOptions {
  std::optional<int> cap;  // overrides the per-operation default
  int threads = 1;
  // Called with the running scanned count each time it crosses a multiple of
  // progress_every.
  std::function<void(std::uint64_t)> progress;
  std::uint64_t progress_every = 1'000'000;
};

struct ExactExpectation {
  int n = 0;
  double c_n = 0.0;
  std::uint64_t partitions_count = 0;
  double weight_sum = 0.0;
};

struct MaxDimResult {
  int n = 0;
  Partition best_shape;
  LogDim log_dim;
  double c_bar = 0.0;
  std::uint64_t diagrams_scanned = 0;
  bool restricted = false;
};

namespace detail {

inline void enforce_cap(const char* what, int n, int default_cap, const EnumerationOptions& opt) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be positive");
  const int cap = opt.cap.value_or(default_cap);
  if (n <= cap) return;
  const double count = partition_count_approx(n);
  std::ostringstream msg;
  msg << what << ": n=" << n << " exceeds the cap " << cap << "; this scans about " << count
      << " partitions (roughly " << count * n * 1e-8 << " s single-core). Raise the cap to run it.";
  throw CapExceeded(msg.str());
}

class ProgressCounter {
 public:
  explicit ProgressCounter(const EnumerationOptions& opt) : opt_(opt) {}
  void add(std::uint64_t k) {
    if (!opt_.progress || k == 0) return;
    const std::uint64_t before = total_.fetch_add(k);
    const std::uint64_t every = std::max<std::uint64_t>(1, opt_.progress_every);
    if ((before + k) / every != before / every) {
      std::lock_guard lock(mu_);
      opt_.progress(before + k);
    }
  }

 private:
  const EnumerationOptions& opt_;
  std::atomic<std::uint64_t> total_{0};
  std::mutex mu_;
};

// Runs fn(cursor) once per largest-part sub-stream (n, n-1, ..., 1); results
// are returned in that order, which concatenates to reverse-lex order.
template <class Fn>
auto scan_by_first_part(int n, int threads, Fn&& fn) {
  return parallel_tasks(static_cast<std::size_t>(n), threads, [&](std::size_t t) {
    PartitionCursor cursor(n, n - static_cast<int>(t));
    return fn(cursor);
  });
}

// Near-ties in the floating log dimension are settled with exact integers.
inline constexpr double kTieWindow = 1e-9;

struct Best {
  bool has = false;
  double ln_dim = 0.0;
  std::vector<int> rows;

  // Offer a candidate that comes later in the scan order; earlier wins ties.
  void offer(double ln_dim_candidate, std::span<const int> candidate) {
    if (has && ln_dim_candidate < ln_dim - kTieWindow) return;
    if (has && ln_dim_candidate <= ln_dim + kTieWindow) {
      const BigInt a = dim_exact(Partition(std::vector<int>(candidate.begin(), candidate.end()),
                                           Partition::Unchecked{}));
      const BigInt b = dim_exact(Partition(rows, Partition::Unchecked{}));
      if (a <= b) return;
    }
    has = true;
    ln_dim = ln_dim_candidate;
    rows.assign(candidate.begin(), candidate.end());
  }
};

inline MaxDimResult make_max_result(int n, const Best& best, std::uint64_t scanned, bool restricted) {
  MaxDimResult r;
  r.n = n;
  r.best_shape = Partition(best.rows, Partition::Unchecked{});
  r.log_dim = LogDim{best.ln_dim};
  r.c_bar = normalized_c(r.best_shape);
  r.diagrams_scanned = scanned;
  r.restricted = restricted;
  return r;
}

}  // namespace detail

/// Plancherel expectation of the normalized dimension by a full scan:
/// c_n = sum over diagrams of c(L) dim(L)^2 / n!.
inline ExactExpectation exact_expected_c(int n, const EnumerationOptions& opt = {}) {
  detail::enforce_cap("exact_expected_c", n, kDefaultExpectationCap, opt);
  const auto table = log_table(static_cast<std::size_t>(n) + 1);
  const double ln_fact = table->ln_factorial(static_cast<std::size_t>(n));
  const double scale = 2.0 / std::sqrt(static_cast<double>(n));
  detail::ProgressCounter progress(opt);

  struct Partial {
    CompensatedSum c;
    CompensatedSum w;
    std::uint64_t count = 0;
  };
  auto parts = detail::scan_by_first_part(n, opt.threads, [&](PartitionCursor& cur) {
    Partial acc;
    std::vector<int> cols;
    std::uint64_t pending = 0;
    for (; !cur.done(); cur.advance()) {
      const double s = sum_log_hooks(cur.rows(), table->ln_values(), cols);
      const double weight = std::exp(ln_fact - 2.0 * s);  // dim^2 / n!
      acc.w.add(weight);
      acc.c.add(weight * scale * (s - 0.5 * ln_fact));
      ++acc.count;
      if (++pending == 4096) {
        progress.add(pending);
        pending = 0;
      }
    }
    progress.add(pending);
    return acc;
  });

  Partial total;
  for (const auto& p : parts) {
    total.c.merge(p.c);
    total.w.merge(p.w);
    total.count += p.count;
  }
  return ExactExpectation{n, total.c.value(), total.count, total.w.value()};
}

/// Maximum-dimension diagram of size n by a full scan. Ties go to the
/// reverse-lexicographically first shape.
inline MaxDimResult max_dim_exact(int n, const EnumerationOptions& opt = {}) {
  detail::enforce_cap("max_dim_exact", n, kDefaultMaxDimCap, opt);
  const auto table = log_table(static_cast<std::size_t>(n) + 1);
  const double ln_fact = table->ln_factorial(static_cast<std::size_t>(n));
  detail::ProgressCounter progress(opt);

  struct Partial {
    detail::Best best;
    std::uint64_t count = 0;
  };
  auto parts = detail::scan_by_first_part(n, opt.threads, [&](PartitionCursor& cur) {
    Partial acc;
    std::vector<int> cols;
    std::uint64_t pending = 0;
    for (; !cur.done(); cur.advance()) {
      acc.best.offer(ln_fact - sum_log_hooks(cur.rows(), table->ln_values(), cols), cur.rows());
      ++acc.count;
      if (++pending == 4096) {
        progress.add(pending);
        pending = 0;
      }
    }
    progress.add(pending);
    return acc;
  });

  detail::Best best;
  std::uint64_t scanned = 0;
  for (const auto& p : parts) {
    if (p.best.has) best.offer(p.best.ln_dim, p.best.rows);
    scanned += p.count;
  }
  return detail::make_max_result(n, best, scanned, false);
}

/// Maximum over the restricted family: self-conjugate diagrams of size n and
/// one-cell extensions of self-conjugate diagrams of size n-1.
inline MaxDimResult max_dim_restricted(int n) {
  if (n < 1) throw std::invalid_argument("max_dim_restricted: n must be positive");
  std::vector<std::vector<int>> family;
  for (const auto& p : self_conjugate_partitions(n)) family.push_back(p.row_vector());
  for (const auto& p : self_conjugate_partitions(n - 1))
    for (const auto& c : addable_corners(p)) family.push_back(add_cell(p, c).row_vector());
  std::sort(family.begin(), family.end(), std::greater<>());
  family.erase(std::unique(family.begin(), family.end()), family.end());

  const auto table = log_table(static_cast<std::size_t>(n) + 1);
  const double ln_fact = table->ln_factorial(static_cast<std::size_t>(n));
  detail::Best best;
  std::vector<int> cols;
  for (const auto& rows : family) best.offer(ln_fact - sum_log_hooks(rows, table->ln_values(), cols), rows);
  return detail::make_max_result(n, best, family.size(), true);
}

/// max dim / sqrt(n!), to compare with McKay's conjectured bound 1/n.
inline double mckay_ratio(int n, const EnumerationOptions& opt = {}) {
  const auto r = max_dim_exact(n, opt);
  return std::exp(r.log_dim.value - 0.5 * log_factorial(static_cast<std::size_t>(n)));
}

/// Exact check of sum over diagrams of dim^2 = n!.
inline bool verify_burnside(int n) {
  if (n < 0 || n > 20) throw std::invalid_argument("verify_burnside: n must be in [0, 20]");
  BigInt sum = 0;
  for (auto rows : partitions(n)) {
    const BigInt d = dim_exact(Partition(std::vector<int>(rows.begin(), rows.end()), Partition::Unchecked{}));
    sum += d * d;
  }
  BigInt fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  return sum == fact;
}

}  // namespace young
