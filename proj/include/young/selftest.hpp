#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "young/dimension.hpp"
#include "young/enumeration.hpp"
#include "young/parallel.hpp"
#include "young/partition.hpp"
#include "young/rng.hpp"
#include "young/sampling.hpp"

namespace young {

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 0.0;
};

/// Pearson goodness-of-fit of `observed` counts against probabilities.
inline ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<double>& probs) {
  if (observed.size() != probs.size() || observed.size() < 2)
    throw std::invalid_argument("chi_square_gof: size mismatch");
  std::uint64_t total = 0;
  for (auto o : observed) total += o;
  ChiSquareResult r;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    const double e = probs[k] * static_cast<double>(total);
    const double d = static_cast<double>(observed[k]) - e;
    r.statistic += d * d / e;
  }
  r.dof = static_cast<int>(observed.size()) - 1;
  const boost::math::chi_squared dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

/// Number of standard tableaux of shape p, by placing 1..n one at a time into
/// addable cells and counting completed fillings. Independent of the hook
/// formula; exponential, meant for n <= 12.
inline std::uint64_t count_tableaux_backtracking(const Partition& p) {
  std::vector<int> filled(static_cast<std::size_t>(p.num_rows()), 0);
  const auto target = p.rows();
  std::function<std::uint64_t(int)> place = [&](int remaining) -> std::uint64_t {
    if (remaining == 0) return 1;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < filled.size(); ++i) {
      const bool room = filled[i] < target[i];
      const bool supported = i == 0 || filled[i - 1] > filled[i];
      if (room && supported) {
        ++filled[i];
        total += place(remaining - 1);
        --filled[i];
      }
    }
    return total;
  };
  return place(p.size());
}

/// Exact Plancherel law on the partitions of n, in reverse-lex order.
inline std::vector<double> plancherel_law(int n, std::vector<Partition>& shapes) {
  shapes.clear();
  std::vector<double> probs;
  BigInt fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  for (auto rows : partitions(n)) {
    Partition p(std::vector<int>(rows.begin(), rows.end()), Partition::Unchecked{});
    const BigInt d = dim_exact(p);
    probs.push_back(static_cast<double>(d * d) / static_cast<double>(fact));
    shapes.push_back(std::move(p));
  }
  return probs;
}

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  std::uint64_t chi_square_samples = 200'000;
  double significance = 1e-3;
  // Dimension routine under test; replaceable to run negative controls.
  std::function<BigInt(const Partition&)> dim = [](const Partition& p) { return dim_exact(p); };
};

namespace detail {

template <class Sampler>
std::vector<std::uint64_t> tally_shapes(const std::vector<Partition>& shapes, std::uint64_t samples,
                                        std::uint64_t seed, int threads, Sampler&& sample) {
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t k = 0; k < shapes.size(); ++k) index.emplace(shapes[k].row_vector(), k);
  return parallel_chunked_reduce(
      samples, 4096, threads,
      [&](std::size_t begin, std::size_t end) {
        std::vector<std::uint64_t> counts(shapes.size(), 0);
        for (std::size_t k = begin; k < end; ++k) {
          auto rng = rng_derive(seed, k);
          ++counts[index.at(sample(rng).row_vector())];
        }
        return counts;
      },
      [](std::vector<std::uint64_t>& acc, const std::vector<std::uint64_t>& part) {
        if (acc.empty()) acc.assign(part.size(), 0);
        for (std::size_t k = 0; k < part.size(); ++k) acc[k] += part[k];
      });
}

}  // namespace detail

inline std::vector<SelftestCheck> run_selftest(const SelftestOptions& opt = {}) {
  std::vector<SelftestCheck> out;

  {
    SelftestCheck c{"burnside_n_le_12", true, "sum dim^2 = n! for n = 0..12"};
    for (int n = 0; n <= 12 && c.passed; ++n) {
      BigInt sum = 0, fact = 1;
      for (int k = 2; k <= n; ++k) fact *= k;
      for (auto rows : partitions(n)) {
        const BigInt d = opt.dim(Partition(std::vector<int>(rows.begin(), rows.end()), Partition::Unchecked{}));
        sum += d * d;
      }
      if (sum != fact) {
        c.passed = false;
        c.detail = "fails at n=" + std::to_string(n);
      }
    }
    out.push_back(c);
  }

  {
    SelftestCheck c{"hook_vs_backtracking_n_le_12", true, "all partitions of n <= 12"};
    for (int n = 1; n <= 12 && c.passed; ++n) {
      for (auto rows : partitions(n)) {
        const Partition p(std::vector<int>(rows.begin(), rows.end()), Partition::Unchecked{});
        if (opt.dim(p) != count_tableaux_backtracking(p)) {
          c.passed = false;
          c.detail = "mismatch at [" + to_string(p) + "]";
          break;
        }
      }
    }
    out.push_back(c);
  }

  {
    SelftestCheck c{"conjugation_invariance_n_le_12", true, "dim(p) = dim(p')"};
    for (int n = 1; n <= 12 && c.passed; ++n) {
      for (auto rows : partitions(n)) {
        const Partition p(std::vector<int>(rows.begin(), rows.end()), Partition::Unchecked{});
        if (opt.dim(p) != opt.dim(conjugate(p))) {
          c.passed = false;
          c.detail = "mismatch at [" + to_string(p) + "]";
          break;
        }
      }
    }
    out.push_back(c);
  }

  std::vector<Partition> shapes;
  const auto law = plancherel_law(6, shapes);
  auto chi_check = [&](const std::string& name, std::uint64_t seed, auto&& sampler) {
    const auto counts = detail::tally_shapes(shapes, opt.chi_square_samples, seed, opt.threads, sampler);
    const auto r = chi_square_gof(counts, law);
    out.push_back({name, r.p_value > opt.significance,
                   "chi2=" + std::to_string(r.statistic) + " dof=" + std::to_string(r.dof) +
                       " p=" + std::to_string(r.p_value)});
  };
  chi_check("rsk_sampler_chi_square_n6", opt.seed, [](RngStream& rng) { return sample_plancherel(6, rng); });
  chi_check("growth_chain_chi_square_n6", splitmix64_mix(opt.seed + 1),
            [](RngStream& rng) { return plancherel_growth_path(6, 6, rng).final_shape; });

  {
    SelftestCheck c{"growth_normalization", true, "incremental vs full log-dim ratios and step normalization"};
    try {
      auto rng = rng_derive(opt.seed, 0xC0FFEE);
      const auto path = plancherel_growth_path(300, 300, rng);
      const Partition& p = path.final_shape;
      const auto ratios = extension_log_ratios(p);
      const auto corners = addable_corners(p);
      const double base = log_dim(p).value;
      for (std::size_t k = 0; k < corners.size(); ++k) {
        const double full = log_dim(add_cell(p, corners[k])).value - base;
        if (std::abs(full - ratios[k]) > 1e-9) {
          c.passed = false;
          c.detail = "ratio mismatch at corner " + std::to_string(k);
        }
      }
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = e.what();
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace young
