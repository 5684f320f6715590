#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace young {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  constexpr void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  constexpr void merge(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }
  [[nodiscard]] constexpr double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Streaming count / mean / sum of squared deviations (Welford), with the
/// pairwise merge of Chan et al. for parallel reductions.
class SampleStats {
 public:
  void push(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("SampleStats::push: non-finite value");
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  void merge(const SampleStats& other) noexcept {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double n = na + nb;
    const double delta = other.mean_ - mean_;
    mean_ += delta * (nb / n);
    m2_ += other.m2_ + delta * delta * (na * nb / n);
    count_ += other.count_;
  }

  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }
  [[nodiscard]] double mean() const noexcept { return mean_; }
  [[nodiscard]] double m2() const noexcept { return m2_; }

  // Unbiased (n-1) variance; undefined below two samples.
  [[nodiscard]] std::optional<double> variance() const noexcept {
    if (count_ < 2) return std::nullopt;
    return std::max(0.0, m2_) / static_cast<double>(count_ - 1);
  }
  [[nodiscard]] std::optional<double> stddev() const noexcept {
    if (auto v = variance()) return std::sqrt(*v);
    return std::nullopt;
  }
  [[nodiscard]] std::optional<double> standard_error() const noexcept {
    if (auto s = stddev()) return *s / std::sqrt(static_cast<double>(count_));
    return std::nullopt;
  }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// ln(sum(exp(xs))) without overflow. Throws on an empty input.
inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("log_sum_exp: empty input");
  if (xs.size() == 1) return xs[0];
  const double m = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

/// Table of ln k and ln k! for k = 0..limit. ln k! is a compensated running
/// sum of ln k, so its digits do not depend on a platform lgamma.
class LogTable {
 public:
  explicit LogTable(std::size_t limit) : ln_(limit + 1, 0.0), ln_fact_(limit + 1, 0.0) {
    CompensatedSum acc;
    for (std::size_t k = 1; k <= limit; ++k) {
      ln_[k] = std::log(static_cast<double>(k));
      acc.add(ln_[k]);
      ln_fact_[k] = acc.value();
    }
    ln_[0] = -std::numeric_limits<double>::infinity();
  }

  [[nodiscard]] std::size_t limit() const noexcept { return ln_.size() - 1; }
  [[nodiscard]] double ln(std::size_t k) const noexcept { return ln_[k]; }
  [[nodiscard]] double ln_factorial(std::size_t k) const noexcept { return ln_fact_[k]; }
  [[nodiscard]] std::span<const double> ln_values() const noexcept { return ln_; }

 private:
  std::vector<double> ln_;
  std::vector<double> ln_fact_;
};

/// Process-wide shared table covering at least `limit`. Growth replaces the
/// table; holders of an older pointer keep a valid (smaller) table.
inline std::shared_ptr<const LogTable> log_table(std::size_t limit) {
  static std::mutex mu;
  static std::shared_ptr<const LogTable> table = std::make_shared<const LogTable>(1024);
  std::lock_guard lock(mu);
  if (table->limit() < limit) {
    std::size_t cap = table->limit();
    while (cap < limit) cap *= 2;
    table = std::make_shared<const LogTable>(cap);
  }
  return table;
}

inline double log_factorial(std::size_t n) { return log_table(n)->ln_factorial(n); }

}  // namespace young
