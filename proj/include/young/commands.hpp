#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "young/dimension.hpp"
#include "young/enumeration.hpp"
#include "young/numerics.hpp"
#include "young/parallel.hpp"
#include "young/rng.hpp"
#include "young/sampling.hpp"
#include "young/selftest.hpp"
#include "young/shape.hpp"
#include "young/table.hpp"

namespace young {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { PlancherelMc, ExactExpectation, MaxDim, GrowthPath, Shape, Diagonal, Selftest };
enum class Format { Csv, Json };
enum class Measure { Plancherel, Richardson };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kConfig = 1;
inline constexpr int kRefused = 2;
inline constexpr int kIo = 3;
inline constexpr int kSelftest = 4;
}  // namespace exit_code

inline constexpr std::uint64_t kDefaultSeed = 20100125;

struct RunConfig {
  Command command = Command::Selftest;
  std::vector<int> n;
  int n_max = 0;
  // One sample size for every n, or one per n.
  std::vector<std::uint64_t> samples;
  int stride = 1;
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
  std::string output_path;  // empty: standard output, companions skipped
  Format format = Format::Csv;
  Measure measure = Measure::Plancherel;
  int dim = 2;
  bool scaled = false;
  bool restricted = false;
  std::optional<int> cap_override;
};

/// Grid step of shape profiles in raw cell units (0.5 / sqrt(n) after the
/// 1/sqrt(n) scaling in 2D).
inline constexpr double kShapeGridStep = 0.5;

struct Companion {
  std::string suffix;
  Table table;
};

struct CommandResult {
  Table table;
  std::vector<Companion> companions;
  int exit_code = exit_code::kOk;
};

namespace detail {

inline std::uint64_t samples_for(const RunConfig& cfg, std::size_t index) {
  if (cfg.samples.size() == 1) return cfg.samples[0];
  return cfg.samples.at(index);
}

inline void require_n_list(const RunConfig& cfg, bool samples_needed, std::uint64_t min_samples) {
  if (cfg.n.empty()) throw ConfigError("--n is required");
  for (int n : cfg.n)
    if (n < 1) throw ConfigError("--n values must be positive");
  if (!samples_needed) return;
  if (cfg.samples.empty()) throw ConfigError("--samples is required");
  if (cfg.samples.size() != 1 && cfg.samples.size() != cfg.n.size())
    throw ConfigError("--samples takes one value or one value per --n");
  for (auto s : cfg.samples)
    if (s < min_samples) throw ConfigError("--samples must be at least " + std::to_string(min_samples));
}

}  // namespace detail

/// Rejects configurations before any compute starts.
inline void validate(const RunConfig& cfg) {
  if (cfg.threads < 0) throw ConfigError("--threads must be non-negative");
  if (cfg.cap_override && *cfg.cap_override < 1) throw ConfigError("--cap-override must be positive");
  switch (cfg.command) {
    case Command::PlancherelMc:
      detail::require_n_list(cfg, true, 1);
      break;
    case Command::ExactExpectation:
    case Command::MaxDim:
      detail::require_n_list(cfg, false, 0);
      break;
    case Command::GrowthPath:
      if (cfg.n_max < 1) throw ConfigError("--n-max must be positive");
      if (cfg.stride < 1) throw ConfigError("--stride must be positive");
      break;
    case Command::Shape:
      detail::require_n_list(cfg, true, 1);
      if (cfg.n.size() != 1) throw ConfigError("shape takes a single --n");
      if (cfg.dim != 2 && cfg.dim != 3) throw ConfigError("--dim must be 2 or 3");
      break;
    case Command::Diagonal:
      detail::require_n_list(cfg, true, 2);
      break;
    case Command::Selftest:
      break;
  }
}

inline CommandResult cmd_plancherel_mc(const RunConfig& cfg) {
  CommandResult out;
  out.table.header = {"n", "sample_size", "c_mean", "c_std"};
  for (std::size_t idx = 0; idx < cfg.n.size(); ++idx) {
    const int n = cfg.n[idx];
    const std::uint64_t m = detail::samples_for(cfg, idx);
    const auto stats = parallel_chunked_reduce(
        m, 64, cfg.threads,
        [&](std::size_t begin, std::size_t end) {
          SampleStats s;
          for (std::size_t k = begin; k < end; ++k) {
            auto rng = rng_derive(cfg.seed, sample_stream_id(static_cast<std::uint64_t>(n), k));
            s.push(normalized_c(sample_plancherel(n, rng)));
          }
          return s;
        },
        [](SampleStats& acc, const SampleStats& part) { acc.merge(part); });
    out.table.add_row({std::int64_t{n}, static_cast<std::int64_t>(m), stats.mean(),
                       stats.stddev().value_or(std::nan(""))});
  }
  return out;
}

namespace detail {

inline EnumerationOptions enumeration_options(const RunConfig& cfg, std::ostream& log) {
  EnumerationOptions opt;
  opt.cap = cfg.cap_override;
  opt.threads = cfg.threads;
  opt.progress = [&log](std::uint64_t scanned) { log << "scanned " << scanned << " partitions\n"; };
  return opt;
}

}  // namespace detail

inline CommandResult cmd_exact_expectation(const RunConfig& cfg, std::ostream& log = std::cerr) {
  CommandResult out;
  out.table.header = {"n", "partitions", "c_n"};
  const auto opt = detail::enumeration_options(cfg, log);
  for (int n : cfg.n) {
    const auto e = exact_expected_c(n, opt);
    if (std::abs(e.weight_sum - 1.0) > 1e-9)
      log << "warning: n=" << n << " Plancherel weights sum to " << format_double(e.weight_sum) << "\n";
    out.table.add_row({std::int64_t{n}, static_cast<std::int64_t>(e.partitions_count), e.c_n});
  }
  return out;
}

inline CommandResult cmd_maxdim(const RunConfig& cfg, std::ostream& log = std::cerr) {
  CommandResult out;
  out.table.header = {"n", "c_bar", "best_shape", "scanned", "restricted"};
  const auto opt = detail::enumeration_options(cfg, log);
  for (int n : cfg.n) {
    const auto r = cfg.restricted ? max_dim_restricted(n) : max_dim_exact(n, opt);
    out.table.add_row({std::int64_t{n}, r.c_bar, to_string(r.best_shape),
                       static_cast<std::int64_t>(r.diagrams_scanned), std::int64_t{r.restricted ? 1 : 0}});
  }
  return out;
}

inline CommandResult cmd_growth_path(const RunConfig& cfg, std::ostream& log = std::cerr) {
  CommandResult out;
  out.table.header = {"n", "c"};
  if (cfg.n_max < cfg.stride) log << "warning: --n-max is below --stride; no checkpoints\n";
  auto rng = rng_derive(cfg.seed, 0);
  const auto path = cfg.measure == Measure::Plancherel ? plancherel_growth_path(cfg.n_max, cfg.stride, rng)
                                                       : richardson_c_path(cfg.n_max, cfg.stride, rng);
  for (const auto& cp : path.checkpoints) out.table.add_row({std::int64_t{cp.n}, cp.c});
  return out;
}

namespace detail {

inline Grid1D shape_grid_2d(int n) {
  // The Rost support has half-width sqrt(3 n); leave a 25% margin, and cover
  // every possible diagram when n is small.
  const double half = std::min(n / kSqrt2, 1.25 * kSqrt3 * std::sqrt(static_cast<double>(n)));
  return Grid1D::symmetric(half, kShapeGridStep);
}

inline Grid2D shape_grid_3d(int n) {
  // Richardson solids at n = 10^4 reach about 4.5 n^(1/3) along an axis.
  const double extent = std::min(static_cast<double>(n), 5.5 * std::cbrt(static_cast<double>(n)));
  const auto g = Grid1D::symmetric(plane_half_width(extent), kShapeGridStep);
  return Grid2D{g, g};
}

template <class Profile, class MakeProfile>
ShapeAccumulator<Profile> accumulate_shapes(const RunConfig& cfg, int n, std::uint64_t samples,
                                            MakeProfile&& make) {
  return parallel_chunked_reduce(
      samples, 4, cfg.threads,
      [&](std::size_t begin, std::size_t end) {
        ShapeAccumulator<Profile> acc;
        for (std::size_t k = begin; k < end; ++k) {
          auto rng = rng_derive(cfg.seed, sample_stream_id(static_cast<std::uint64_t>(n), k));
          acc.add(make(rng));
        }
        return acc;
      },
      [](ShapeAccumulator<Profile>& acc, const ShapeAccumulator<Profile>& part) { acc.merge(part); });
}

struct Shape2DSummary {
  double area = 0.0;
  Residual residual;
  LineFit sqrt_fit;
};

// Diagnostics of a 1/sqrt(n)-scaled mean profile against the unit-area
// Rost curve; the line fit uses the same central window as the residual.
// Diagnostics that are undefined for tiny diagrams come out as NaN.
inline Shape2DSummary summarize_shape_2d(const Profile2D& scaled_mean) {
  const auto ref = RostCurve::unit_area();
  const double nan = std::nan("");
  Shape2DSummary s{profile_area(scaled_mean), {nan, nan}, {nan, nan, nan}};
  try {
    s.residual = shape_residual(scaled_mean, ref);
    const auto win = residual_window(scaled_mean, ref);
    std::vector<Point2> pts;
    for (const auto& p : cartesian_boundary(scaled_mean)) {
      const double u = (p.x - p.y) / kSqrt2;
      if (u >= win.lo && u <= win.hi) pts.push_back(p);
    }
    s.sqrt_fit = fit_line(sqrt_coords(pts));
  } catch (const std::invalid_argument&) {
  }
  return s;
}

}  // namespace detail

inline CommandResult cmd_shape(const RunConfig& cfg) {
  CommandResult out;
  const int n = cfg.n.front();
  const std::uint64_t samples = detail::samples_for(cfg, 0);

  if (cfg.dim == 2) {
    const auto grid = detail::shape_grid_2d(n);
    const auto acc = detail::accumulate_shapes<Profile2D>(
        cfg, n, samples, [&](RngStream& rng) { return profile_2d(richardson_grow_2d(n, rng), grid); });
    const double factor = cfg.scaled ? 1.0 / std::sqrt(static_cast<double>(n)) : 1.0;
    const auto mean = scale_profile(acc.mean(), factor);
    const auto sd = acc.stddev();

    out.table.header = {"u", "mean_f", "std_f"};
    for (std::size_t k = 0; k < mean.f.size(); ++k)
      out.table.add_row({mean.grid.at(k), mean.f[k], sd[k] * factor});

    Table cart{{"x", "y"}, {}};
    const auto boundary = cartesian_boundary(mean);
    for (const auto& p : boundary) cart.add_row({p.x, p.y});
    Table root{{"sqrt_x", "sqrt_y"}, {}};
    for (const auto& p : sqrt_coords(boundary)) root.add_row({p.x, p.y});

    const auto s = detail::summarize_shape_2d(scale_profile(acc.mean(), 1.0 / std::sqrt(static_cast<double>(n))));
    Table summary{{"n", "samples", "area_normalized", "sup_residual", "l2_residual", "sqrt_line_r2",
                   "sqrt_line_slope", "sqrt_line_intercept"},
                  {}};
    summary.add_row({std::int64_t{n}, static_cast<std::int64_t>(samples), s.area, s.residual.sup, s.residual.l2,
                     s.sqrt_fit.r_squared, s.sqrt_fit.slope, s.sqrt_fit.intercept});
    out.companions = {{"cartesian", std::move(cart)}, {"sqrt", std::move(root)}, {"summary", std::move(summary)}};
    return out;
  }

  const auto grid = detail::shape_grid_3d(n);
  const auto acc = detail::accumulate_shapes<Profile3D>(
      cfg, n, samples, [&](RngStream& rng) { return profile_3d(richardson_grow_3d(n, rng), grid); });
  const double norm = 1.0 / std::cbrt(static_cast<double>(n));
  const double factor = cfg.scaled ? norm : 1.0;
  const auto raw_mean = acc.mean();
  const auto mean = scale_profile(raw_mean, factor);
  const auto sd = acc.stddev();

  out.table.header = {"a", "b", "mean_f", "std_f"};
  for (std::size_t ia = 0; ia < mean.grid.a.count; ++ia)
    for (std::size_t ib = 0; ib < mean.grid.b.count; ++ib)
      out.table.add_row({mean.grid.a.at(ia), mean.grid.b.at(ib), mean.at(ia, ib),
                         sd[ia * mean.grid.b.count + ib] * factor});

  Table surface{{"x", "y", "z"}, {}};
  const auto pts = surface_points(mean);
  for (const auto& p : pts) surface.add_row({p.x, p.y, p.z});
  Table root{{"sqrt_x", "sqrt_y", "sqrt_z"}, {}};
  for (const auto& p : sqrt_coords(pts)) root.add_row({p.x, p.y, p.z});

  const auto raw = diagonal_intercept_3d(raw_mean);
  const auto scaled = diagonal_intercept_3d(scale_profile(raw_mean, norm));
  Table summary{{"n", "samples", "x_diag", "h3", "x_diag_normalized", "h3_normalized"}, {}};
  summary.add_row({std::int64_t{n}, static_cast<std::int64_t>(samples), raw.x_diag, raw.h3, scaled.x_diag, scaled.h3});
  out.companions = {{"surface", std::move(surface)}, {"sqrt", std::move(root)}, {"summary", std::move(summary)}};
  return out;
}

inline CommandResult cmd_diagonal(const RunConfig& cfg) {
  CommandResult out;
  out.table.header = {"n", "sample_size", "d_n", "d_n_normalized"};
  for (std::size_t idx = 0; idx < cfg.n.size(); ++idx) {
    const auto d = diagonal_deviation(cfg.n[idx], detail::samples_for(cfg, idx), cfg.seed, cfg.threads);
    out.table.add_row({std::int64_t{d.n}, static_cast<std::int64_t>(d.sample_size), d.d_n, d.d_n_normalized});
  }
  return out;
}

inline CommandResult cmd_selftest(const RunConfig& cfg) {
  CommandResult out;
  out.table.header = {"check", "status", "detail"};
  SelftestOptions opt;
  opt.seed = cfg.seed;
  opt.threads = cfg.threads;
  bool ok = true;
  for (const auto& c : run_selftest(opt)) {
    ok = ok && c.passed;
    out.table.add_row({c.name, std::string(c.passed ? "pass" : "fail"), c.detail});
  }
  out.exit_code = ok ? exit_code::kOk : exit_code::kSelftest;
  return out;
}

inline CommandResult run_command(const RunConfig& cfg, std::ostream& log = std::cerr) {
  validate(cfg);
  switch (cfg.command) {
    case Command::PlancherelMc: return cmd_plancherel_mc(cfg);
    case Command::ExactExpectation: return cmd_exact_expectation(cfg, log);
    case Command::MaxDim: return cmd_maxdim(cfg, log);
    case Command::GrowthPath: return cmd_growth_path(cfg, log);
    case Command::Shape: return cmd_shape(cfg);
    case Command::Diagonal: return cmd_diagonal(cfg);
    case Command::Selftest: return cmd_selftest(cfg);
  }
  throw ConfigError("unknown command");
}

inline std::string render(const Table& t, Format f) { return f == Format::Csv ? to_csv(t) : to_json(t); }

/// "out/shape.csv" + "sqrt" -> "out/shape.sqrt.csv".
inline std::string companion_path(const std::string& main_path, const std::string& suffix) {
  const std::filesystem::path p(main_path);
  auto name = p.stem().string() + "." + suffix + p.extension().string();
  return (p.parent_path() / name).string();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  f.close();
  if (!f) throw IoError("write failed for " + path);
}

/// Writes the main table (to `stdout_sink` when no path is configured) and
/// any companion files.
inline void write_result(const CommandResult& r, const RunConfig& cfg, std::ostream& stdout_sink,
                         std::ostream& log = std::cerr) {
  if (cfg.output_path.empty()) {
    stdout_sink << render(r.table, cfg.format);
    if (!r.companions.empty()) log << "note: companion tables are only written with --out\n";
    return;
  }
  write_file(cfg.output_path, render(r.table, cfg.format));
  for (const auto& c : r.companions) write_file(companion_path(cfg.output_path, c.suffix), render(c.table, cfg.format));
}

}  // namespace young
