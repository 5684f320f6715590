#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "young/numerics.hpp"
#include "young/parallel.hpp"
#include "young/partition.hpp"
#include "young/rng.hpp"
#include "young/sampling.hpp"

namespace young {

inline constexpr double kSqrt2 = std::numbers::sqrt2;
inline constexpr double kSqrt3 = std::numbers::sqrt3;
inline const double kSqrt6 = std::sqrt(6.0);

/// Uniform grid origin + k * step, k = 0..count-1.
struct Grid1D {
  double origin = 0.0;
  double step = 1.0;
  std::size_t count = 0;

  [[nodiscard]] double at(std::size_t k) const noexcept { return origin + static_cast<double>(k) * step; }

  // Points at integer multiples of step covering [-half_width, half_width].
  static Grid1D symmetric(double half_width, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
    const auto k = static_cast<std::size_t>(std::ceil(std::max(0.0, half_width) / step));
    return Grid1D{-static_cast<double>(k) * step, step, 2 * k + 1};
  }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

struct Grid2D {
  Grid1D a;
  Grid1D b;
  [[nodiscard]] std::size_t size() const noexcept { return a.count * b.count; }
  friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

/// Diagram in rotated coordinates u = (x - y)/sqrt2, v = (x + y)/sqrt2. f(u)
/// is the length of the diagonal-direction span inside the diagram, i.e.
/// phi(u) - |u| where v = phi(u) is the rotated boundary; 0 off the support.
struct Profile2D {
  Grid1D grid;
  std::vector<double> f;
};

/// Three-dimensional analogue on the plane x + y + z = 0 with orthonormal
/// axes e1 = (1,-1,0)/sqrt2, e2 = (1,1,-2)/sqrt6; f is the length of the
/// span of the ray q + s (1,1,1)/sqrt3 inside the solid. Row-major in a.
struct Profile3D {
  Grid2D grid;
  std::vector<double> f;
  [[nodiscard]] double at(std::size_t ia, std::size_t ib) const { return f[ia * grid.b.count + ib]; }
};

// ---------------------------------------------------------------------------
// 2D profiles

namespace detail {

struct Vertex {
  double u;
  double v;
};

// Staircase boundary from (0, rows) to (rows[0], 0); u strictly increases.
inline std::vector<Vertex> boundary_vertices(std::span<const int> rows) {
  std::vector<Vertex> out;
  auto push = [&](int x, int y) {
    const Vertex w{(x - y) / kSqrt2, (x + y) / kSqrt2};
    if (out.empty() || w.u > out.back().u) out.push_back(w);
  };
  int x = 0;
  int y = static_cast<int>(rows.size());
  push(x, y);
  for (std::size_t i = rows.size(); i-- > 0;) {
    x = rows[i];
    push(x, y);
    y = static_cast<int>(i);
    push(x, y);
  }
  return out;
}

}  // namespace detail

inline Profile2D profile_2d(const Partition& p, const Grid1D& grid) {
  Profile2D out{grid, std::vector<double>(grid.count, 0.0)};
  if (p.empty()) return out;
  const auto vs = detail::boundary_vertices(p.rows());
  std::size_t seg = 0;
  for (std::size_t k = 0; k < grid.count; ++k) {
    const double u = grid.at(k);
    if (u < vs.front().u || u > vs.back().u) continue;
    while (seg + 2 < vs.size() && vs[seg + 1].u < u) ++seg;
    const auto& a = vs[seg];
    const auto& b = vs[seg + 1];
    const double t = (u - a.u) / (b.u - a.u);
    const double phi = a.v + t * (b.v - a.v);
    out.f[k] = std::max(0.0, phi - std::abs(u));
  }
  return out;
}

/// Profile on a symmetric grid just covering the support.
inline Profile2D profile_2d(const Partition& p, double grid_step) {
  const double half = std::max(p.num_rows(), p.row(0)) / kSqrt2;
  return profile_2d(p, Grid1D::symmetric(half, grid_step));
}

/// Trapezoid integral of f.
inline double profile_area(const Profile2D& prof) {
  if (prof.f.size() < 2) return 0.0;
  CompensatedSum s;
  for (double v : prof.f) s.add(v);
  return prof.grid.step * (s.value() - 0.5 * (prof.f.front() + prof.f.back()));
}

// ---------------------------------------------------------------------------
// 3D profiles

namespace detail {

struct RaySpan {
  double t_in = 0.0;   // parameter where the ray enters the positive octant
  double t_out = 0.0;  // parameter where it leaves the solid (== t_in if never inside)
};

inline void plane_point(double a, double b, double& x, double& y, double& z) noexcept {
  x = a / kSqrt2 + b / kSqrt6;
  y = -a / kSqrt2 + b / kSqrt6;
  z = -2.0 * b / kSqrt6;
}

// Walks the ray q + t (1,1,1) voxel by voxel. Face crossings are computed from
// integer voxel indices, t = (index + 1) - origin coordinate, so no step size
// or drift is involved. With `verify`, the walk continues to the bounding box
// and throws if the ray re-enters the solid.
inline RaySpan trace_diagonal_ray(const PlanePartition& p, double x0, double y0, double z0, bool verify) {
  RaySpan span;
  span.t_in = -std::min({x0, y0, z0});
  auto cell = [](double c) { return std::max(0LL, static_cast<long long>(std::floor(c))); };
  long long ix = cell(x0 + span.t_in);
  long long iy = cell(y0 + span.t_in);
  long long iz = cell(z0 + span.t_in);
  const long long lim_x = p.num_rows();
  const long long lim_y = p.row_length(0);
  const long long lim_z = p.max_height();
  auto inside = [&] {
    return ix < lim_x && iy < lim_y && iz < p.height(static_cast<int>(ix), static_cast<int>(iy));
  };

  double t = span.t_in;
  bool in = inside();
  while (in) {
    const double tx = static_cast<double>(ix + 1) - x0;
    const double ty = static_cast<double>(iy + 1) - y0;
    const double tz = static_cast<double>(iz + 1) - z0;
    t = std::min({tx, ty, tz});
    if (tx == t) ++ix;
    if (ty == t) ++iy;
    if (tz == t) ++iz;
    in = inside();
  }
  span.t_out = t;

  if (verify) {
    while (ix < lim_x && iy < lim_y && iz < lim_z) {
      const double tx = static_cast<double>(ix + 1) - x0;
      const double ty = static_cast<double>(iy + 1) - y0;
      const double tz = static_cast<double>(iz + 1) - z0;
      const double tn = std::min({tx, ty, tz});
      if (tx == tn) ++ix;
      if (ty == tn) ++iy;
      if (tz == tn) ++iz;
      if (inside()) throw std::logic_error("diagonal ray re-entered the solid");
    }
  }
  return span;
}

}  // namespace detail

inline Profile3D profile_3d(const PlanePartition& p, const Grid2D& grid, bool verify_interval = true) {
  Profile3D out{grid, std::vector<double>(grid.size(), 0.0)};
  if (p.size() == 0) return out;
  for (std::size_t ia = 0; ia < grid.a.count; ++ia) {
    for (std::size_t ib = 0; ib < grid.b.count; ++ib) {
      double x0, y0, z0;
      detail::plane_point(grid.a.at(ia), grid.b.at(ib), x0, y0, z0);
      const auto span = detail::trace_diagonal_ray(p, x0, y0, z0, verify_interval);
      out.f[ia * grid.b.count + ib] = (span.t_out - span.t_in) * kSqrt3;
    }
  }
  return out;
}

/// Half-width of a symmetric plane grid covering the projection of a solid
/// with extents at most `extent` along every axis.
inline double plane_half_width(double extent) { return extent * 2.0 / kSqrt6; }

inline Profile3D profile_3d(const PlanePartition& p, double grid_step) {
  const double extent = std::max({p.num_rows(), p.row_length(0), p.max_height()});
  const auto g = Grid1D::symmetric(plane_half_width(extent), grid_step);
  return profile_3d(p, Grid2D{g, g});
}

/// Riemann sum of f over the plane; equals the cell count up to grid error.
inline double profile_volume(const Profile3D& prof) {
  CompensatedSum s;
  for (double v : prof.f) s.add(v);
  return s.value() * prof.grid.a.step * prof.grid.b.step;
}

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Boundary points of a (mean) 3D profile back in Cartesian coordinates.
inline std::vector<Point3> surface_points(const Profile3D& prof) {
  std::vector<Point3> out;
  for (std::size_t ia = 0; ia < prof.grid.a.count; ++ia) {
    for (std::size_t ib = 0; ib < prof.grid.b.count; ++ib) {
      const double f = prof.at(ia, ib);
      if (f <= 0.0) continue;
      double x0, y0, z0;
      detail::plane_point(prof.grid.a.at(ia), prof.grid.b.at(ib), x0, y0, z0);
      const double t = -std::min({x0, y0, z0}) + f / kSqrt3;
      out.push_back({std::max(0.0, x0 + t), std::max(0.0, y0 + t), std::max(0.0, z0 + t)});
    }
  }
  return out;
}

/// Where a 3D mean shape meets the main diagonal, and the constant h3 of a
/// surface sqrt(x) + sqrt(y) + sqrt(z) = h3 through that point.
struct DiagonalIntercept3D {
  double x_diag = 0.0;
  double h3 = 0.0;
};

inline DiagonalIntercept3D diagonal_intercept_3d(const Profile3D& prof) {
  auto centre = [](const Grid1D& g) {
    const double k = std::round(-g.origin / g.step);
    if (k < 0 || k >= static_cast<double>(g.count) || std::abs(g.at(static_cast<std::size_t>(k))) > 1e-9 * g.step)
      throw std::invalid_argument("3D grid does not contain the origin");
    return static_cast<std::size_t>(k);
  };
  const double f = prof.at(centre(prof.grid.a), centre(prof.grid.b));
  const double x = f / kSqrt3;
  return {x, 3.0 * std::sqrt(x)};
}

// ---------------------------------------------------------------------------
// Averaging and scaling

template <class Profile>
class ShapeAccumulator {
 public:
  using GridType = decltype(Profile::grid);

  void add(const Profile& prof) {
    adopt(prof.grid);
    for (std::size_t k = 0; k < prof.f.size(); ++k) {
      sum_[k] += prof.f[k];
      sum_sq_[k] += prof.f[k] * prof.f[k];
    }
    ++count_;
  }

  void merge(const ShapeAccumulator& other) {
    if (other.count_ == 0) return;
    adopt(*other.grid_);
    for (std::size_t k = 0; k < sum_.size(); ++k) {
      sum_[k] += other.sum_[k];
      sum_sq_[k] += other.sum_sq_[k];
    }
    count_ += other.count_;
  }

  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }
  [[nodiscard]] const std::optional<GridType>& grid() const noexcept { return grid_; }

  [[nodiscard]] Profile mean() const {
    if (count_ == 0) throw std::logic_error("ShapeAccumulator: no samples");
    Profile out{*grid_, sum_};
    for (double& v : out.f) v /= static_cast<double>(count_);
    return out;
  }

  // Pointwise sample standard deviation; zero with fewer than two samples.
  [[nodiscard]] std::vector<double> stddev() const {
    std::vector<double> out(sum_.size(), 0.0);
    if (count_ < 2) return out;
    const auto n = static_cast<double>(count_);
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double var = (sum_sq_[k] - sum_[k] * sum_[k] / n) / (n - 1.0);
      out[k] = std::sqrt(std::max(0.0, var));
    }
    return out;
  }

 private:
  void adopt(const GridType& g) {
    if (!grid_) {
      grid_ = g;
      sum_.assign(size_of(g), 0.0);
      sum_sq_.assign(size_of(g), 0.0);
    } else if (!(*grid_ == g)) {
      throw std::invalid_argument("ShapeAccumulator: grid mismatch");
    }
  }
  static std::size_t size_of(const Grid1D& g) { return g.count; }
  static std::size_t size_of(const Grid2D& g) { return g.size(); }

  std::optional<GridType> grid_;
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
  std::uint64_t count_ = 0;
};

/// Similarity by `factor`: coordinates and values both scale.
inline Profile2D scale_profile(const Profile2D& prof, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("scale_profile: factor must be positive");
  Profile2D out = prof;
  out.grid.origin *= factor;
  out.grid.step *= factor;
  for (double& v : out.f) v *= factor;
  return out;
}

inline Profile3D scale_profile(const Profile3D& prof, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("scale_profile: factor must be positive");
  Profile3D out = prof;
  for (Grid1D* g : {&out.grid.a, &out.grid.b}) {
    g->origin *= factor;
    g->step *= factor;
  }
  for (double& v : out.f) v *= factor;
  return out;
}

// ---------------------------------------------------------------------------
// Rost limit curve sqrt(x) + sqrt(y) = h

class RostCurve {
 public:
  explicit RostCurve(double h) : h_(h) {
    if (!(h > 0.0)) throw std::invalid_argument("RostCurve: h must be positive");
  }
  /// The unit-area normalization h = 6^(1/4).
  static RostCurve unit_area() { return RostCurve(std::pow(6.0, 0.25)); }

  [[nodiscard]] double h() const noexcept { return h_; }
  [[nodiscard]] double y_of_x(double x) const noexcept {
    if (x <= 0.0) return h_ * h_;
    if (x >= h_ * h_) return 0.0;
    const double r = h_ - std::sqrt(x);
    return r * r;
  }
  [[nodiscard]] double area() const noexcept { return h_ * h_ * h_ * h_ / 6.0; }
  [[nodiscard]] double support_half_width() const noexcept { return h_ * h_ / kSqrt2; }

  /// Rotated boundary v = phi(u) on |u| <= h^2/sqrt2.
  [[nodiscard]] double phi(double u) const noexcept {
    const double w = support_half_width();
    if (u <= -w || u >= w) return std::abs(u);
    // The curve point (s^2, (h - s)^2) has x - y = 2hs - h^2.
    const double s = (kSqrt2 * u + h_ * h_) / (2.0 * h_);
    const double x = s * s;
    const double y = (h_ - s) * (h_ - s);
    return (x + y) / kSqrt2;
  }
  /// Diagonal span length, the analogue of Profile2D::f.
  [[nodiscard]] double span(double u) const noexcept { return std::max(0.0, phi(u) - std::abs(u)); }

 private:
  double h_;
};

inline Profile2D sample_reference(const RostCurve& ref, const Grid1D& grid) {
  Profile2D out{grid, std::vector<double>(grid.count)};
  for (std::size_t k = 0; k < grid.count; ++k) out.f[k] = ref.span(grid.at(k));
  return out;
}

struct Residual {
  double sup = 0.0;
  double l2 = 0.0;  // root mean square over the window
};

// Fraction of the common support dropped at each edge by shape_residual.
inline constexpr double kResidualEdgeFraction = 0.05;

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

/// Central part of the common support of a profile and the curve.
inline Window residual_window(const Profile2D& prof, const RostCurve& ref) {
  std::optional<double> first, last;
  for (std::size_t k = 0; k < prof.f.size(); ++k) {
    if (prof.f[k] > 0.0) {
      if (!first) first = prof.grid.at(k);
      last = prof.grid.at(k);
    }
  }
  const double w = ref.support_half_width();
  if (!first) throw std::invalid_argument("shape_residual: profile has empty support");
  const double lo = std::max(*first, -w);
  const double hi = std::min(*last, w);
  if (!(lo < hi)) throw std::invalid_argument("shape_residual: disjoint supports");
  const double trim = kResidualEdgeFraction * (hi - lo);
  return {lo + trim, hi - trim};
}

inline Residual shape_residual(const Profile2D& prof, const RostCurve& ref) {
  const auto win = residual_window(prof, ref);
  Residual r;
  CompensatedSum sq;
  std::size_t m = 0;
  for (std::size_t k = 0; k < prof.f.size(); ++k) {
    const double u = prof.grid.at(k);
    if (u < win.lo || u > win.hi) continue;
    const double d = std::abs(prof.f[k] - ref.span(u));
    r.sup = std::max(r.sup, d);
    sq.add(d * d);
    ++m;
  }
  if (m == 0) throw std::invalid_argument("shape_residual: window contains no grid points");
  r.l2 = std::sqrt(sq.value() / static_cast<double>(m));
  return r;
}

// ---------------------------------------------------------------------------
// Cartesian views

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Boundary points (x, y) of a 2D profile, for grid points with f > 0.
inline std::vector<Point2> cartesian_boundary(const Profile2D& prof) {
  std::vector<Point2> out;
  for (std::size_t k = 0; k < prof.f.size(); ++k) {
    if (prof.f[k] <= 0.0) continue;
    const double u = prof.grid.at(k);
    const double v = prof.f[k] + std::abs(u);
    out.push_back({std::max(0.0, (v + u) / kSqrt2), std::max(0.0, (v - u) / kSqrt2)});
  }
  return out;
}

inline std::vector<Point2> sqrt_coords(std::span<const Point2> pts) {
  std::vector<Point2> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    if (p.x < 0.0 || p.y < 0.0) throw std::invalid_argument("sqrt_coords: negative coordinate");
    out.push_back({std::sqrt(p.x), std::sqrt(p.y)});
  }
  return out;
}

inline std::vector<Point3> sqrt_coords(std::span<const Point3> pts) {
  std::vector<Point3> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    if (p.x < 0.0 || p.y < 0.0 || p.z < 0.0) throw std::invalid_argument("sqrt_coords: negative coordinate");
    out.push_back({std::sqrt(p.x), std::sqrt(p.y), std::sqrt(p.z)});
  }
  return out;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
inline LineFit fit_line(std::span<const Point2> pts) {
  if (pts.size() < 2) throw std::invalid_argument("fit_line: need at least two points");
  double mx = 0.0, my = 0.0;
  for (const auto& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : pts) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
    syy += (p.y - my) * (p.y - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate x");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

// ---------------------------------------------------------------------------
// Main diagonal

/// Length of the ray x = y inside the diagram: it leaves through the corner
/// of the Durfee square.
inline double diagonal_segment(const Partition& p) { return kSqrt2 * durfee_side(p); }

struct DiagonalStats {
  int n = 0;
  std::uint64_t sample_size = 0;
  double d_n = 0.0;  // stddev of the segment, in units of the cell diagonal
  double d_n_normalized = 0.0;
};

/// Spread of the main diagonal segment over Richardson diagrams of size n.
/// Sample k uses stream (rng_seed, sample_stream_id(n, k)).
inline DiagonalStats diagonal_deviation(int n, std::uint64_t sample_size, std::uint64_t rng_seed, int threads = 1) {
  if (n < 1) throw std::invalid_argument("diagonal_deviation: n must be positive");
  if (sample_size < 2) throw std::invalid_argument("diagonal_deviation: need at least two samples");
  const auto stats = parallel_chunked_reduce(
      sample_size, 16, threads,
      [&](std::size_t begin, std::size_t end) {
        SampleStats s;
        for (std::size_t k = begin; k < end; ++k) {
          auto rng = rng_derive(rng_seed, sample_stream_id(static_cast<std::uint64_t>(n), k));
          s.push(diagonal_segment(richardson_grow_2d(n, rng)) / kSqrt2);
        }
        return s;
      },
      [](SampleStats& acc, const SampleStats& part) { acc.merge(part); });
  DiagonalStats out;
  out.n = n;
  out.sample_size = sample_size;
  out.d_n = stats.stddev().value_or(0.0);
  out.d_n_normalized = out.d_n / std::sqrt(static_cast<double>(n));
  return out;
}

}  // namespace young
