#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "young/dimension.hpp"
#include "young/enumeration.hpp"

using namespace young;

namespace {

Partition P(std::vector<int> rows) { return Partition::from_rows(std::move(rows)); }

// Standard tableaux counted through the branching rule: the cell holding n
// is a removable corner. Memoized, independent of hook lengths.
BigInt count_tableaux(const std::vector<int>& rows, std::map<std::vector<int>, BigInt>& memo) {
  if (rows.empty()) return 1;
  if (auto it = memo.find(rows); it != memo.end()) return it->second;
  BigInt total = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i + 1 < rows.size() && rows[i + 1] == rows[i]) continue;
    auto smaller = rows;
    if (--smaller[i] == 0) smaller.pop_back();
    total += count_tableaux(smaller, memo);
  }
  memo.emplace(rows, total);
  return total;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

TEST(HookLengthTest, MatchesDrawnHooks) {
  const auto p = P({5, 4, 1});
  const std::vector<std::vector<int>> expected{{7, 5, 4, 3, 1}, {5, 3, 2, 1}, {1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < p.row(i); ++j)
      EXPECT_EQ(hook_length(p, {i, j}), expected[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
          << "cell " << i << "," << j;
  EXPECT_EQ(hook_length(P({1}), {0, 0}), 1);
}

TEST(HookLengthTest, RejectsCellOutside) {
  EXPECT_THROW(hook_length(P({5, 4, 1}), {2, 1}), InvalidShape);
  EXPECT_THROW(hook_length(P({}), {0, 0}), InvalidShape);
}

TEST(LogDimTest, Examples) {
  EXPECT_NEAR(log_dim(P({5, 4, 1})).value, std::log(288.0), 1e-12);
  EXPECT_NEAR(log_dim(P({1, 1, 1, 1})).value, 0.0, 1e-12);
  EXPECT_NEAR(log_dim(P({2, 1})).value, std::log(2.0), 1e-12);
}

TEST(DimExactTest, Examples) {
  EXPECT_EQ(dim_exact(P({5, 4, 1})), 288);
  EXPECT_EQ(dim_exact(P({4, 3, 2, 1})), 768);
  EXPECT_EQ(dim_exact(P({7})), 1);
  EXPECT_EQ(dim_exact(P({})), 1);
}

TEST(NormalizedCTest, Examples) {
  // Table value for the n = 10 maximum.
  EXPECT_NEAR(normalized_c(P({4, 3, 2, 1})), 0.57453286, 1e-6);
  EXPECT_DOUBLE_EQ(normalized_c(P({1})), 0.0);
  const double expected = 2.0 / std::sqrt(5.0) * (std::log(120.0) / 2.0 - std::log(6.0));
  EXPECT_NEAR(normalized_c(P({3, 1, 1})), expected, 1e-12);
  EXPECT_NEAR(normalized_c(P({3, 1, 1})), 0.5384, 1e-4);
  EXPECT_THROW(normalized_c(P({})), std::invalid_argument);
}

TEST(NormalizedCTest, MatchesLogDimRoute) {
  for (auto rows : partitions(20)) {
    const auto p = Partition::from_rows(rows);
    EXPECT_NEAR(normalized_c(p), normalized_c_from_log_dim(log_dim(p).value, 20), 1e-12);
    EXPECT_GE(normalized_c(p), 0.0);
  }
}

TEST(DimensionPropertyTest, HookFormulaMatchesTableauCount) {
  std::map<std::vector<int>, BigInt> memo;
  for (int n = 0; n <= 12; ++n)
    for (auto rows : partitions(n)) {
      const auto p = Partition::from_rows(rows);
      EXPECT_EQ(dim_exact(p), count_tableaux(p.row_vector(), memo)) << p;
    }
}

TEST(DimensionPropertyTest, SquaresSumToFactorial) {
  for (int n = 0; n <= 12; ++n) {
    BigInt sum = 0;
    for (auto rows : partitions(n)) {
      const BigInt d = dim_exact(Partition::from_rows(rows));
      sum += d * d;
    }
    EXPECT_EQ(sum, factorial(n)) << "n=" << n;
  }
}

TEST(DimensionPropertyTest, ConjugationInvariance) {
  for (int n = 1; n <= 12; ++n)
    for (auto rows : partitions(n)) {
      const auto p = Partition::from_rows(rows);
      EXPECT_EQ(dim_exact(p), dim_exact(conjugate(p))) << p;
    }
}

TEST(DimensionPropertyTest, LogDomainAgreesWithExact) {
  for (int n = 1; n <= 40; ++n) {
    for (auto rows : partitions(n)) {
      const auto p = Partition::from_rows(rows);
      const double exact = std::log(static_cast<long double>(dim_exact(p)));
      ASSERT_NEAR(log_dim(p).value, exact, 1e-9) << p;
    }
  }
}
