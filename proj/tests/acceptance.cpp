// Acceptance suite. `acceptance` runs every criterion; `acceptance K` runs
// criterion K only. One PASS/FAIL line per criterion, with indented detail
// lines; the exit status is non-zero if any selected criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "young/young.hpp"

using namespace young;
namespace fs = std::filesystem;

namespace {

struct Report {
  bool ok = true;
  std::vector<std::string> lines;

  void check(bool cond, const std::string& what) {
    ok = ok && cond;
    lines.push_back(std::string(cond ? "ok   " : "MISS ") + what);
  }
};

std::string fmt(double v, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::ostringstream g_log;  // progress chatter from the commands is discarded

RunConfig make(Command c, std::vector<int> n = {}, std::vector<std::uint64_t> samples = {}) {
  RunConfig cfg;
  cfg.command = c;
  cfg.n = std::move(n);
  cfg.samples = std::move(samples);
  return cfg;
}

double num(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return static_cast<double>(std::get<std::int64_t>(c));
}

const Table& companion(const CommandResult& r, const std::string& suffix) {
  for (const auto& c : r.companions)
    if (c.suffix == suffix) return c.table;
  throw std::runtime_error("missing companion " + suffix);
}

// 1. Exact Plancherel expectation against the printed table.
Report criterion_1() {
  Report r;
  const std::map<int, double> printed{{10, 0.9348365}, {20, 1.1238908}, {30, 1.2205664},
                                      {40, 1.283057},  {50, 1.3281072}, {60, 1.3622344}};
  auto cfg = make(Command::ExactExpectation, {10, 20, 30, 40, 50, 60});
  const auto res = run_command(cfg, g_log);
  for (std::size_t k = 0; k < res.table.rows.size(); ++k) {
    const int n = static_cast<int>(num(res.table.rows[k][0]));
    const double got = num(res.table.rows[k][2]);
    const double want = printed.at(n);
    r.check(std::abs(got - want) <= 1e-6, "c_" + std::to_string(n) + " = " + fmt(got) + ", printed " +
                                              fmt(want) + ", |diff| = " + fmt(std::abs(got - want), 3));
  }
  return r;
}

// 2. Maximum dimension against the printed table, plus the restricted family.
Report criterion_2() {
  Report r;
  const std::map<int, double> printed{{10, 0.57453286}, {20, 0.8198125},  {30, 0.7912792}, {40, 0.86301332},
                                      {50, 0.90097636}, {60, 0.94780416}, {70, 0.98343194}};
  const auto res = run_command(make(Command::MaxDim, {10, 20, 30, 40, 50, 60, 70}), g_log);
  std::string shape70;
  for (const auto& row : res.table.rows) {
    const int n = static_cast<int>(num(row[0]));
    const double got = num(row[1]);
    const double want = printed.at(n);
    r.check(std::abs(got - want) <= 1e-6, "cbar_" + std::to_string(n) + " = " + fmt(got) + ", printed " +
                                              fmt(want) + ", |diff| = " + fmt(std::abs(got - want), 3) +
                                              "  [" + std::get<std::string>(row[2]) + "]");
    if (n == 70) shape70 = std::get<std::string>(row[2]);
  }
  auto restricted = make(Command::MaxDim, {14, 70});
  restricted.restricted = true;
  const auto rr = run_command(restricted, g_log);
  const auto full14 = run_command(make(Command::MaxDim, {14}), g_log);
  const auto& s14 = std::get<std::string>(full14.table.rows[0][2]);
  const auto& r14 = std::get<std::string>(rr.table.rows[0][2]);
  const auto& r70 = std::get<std::string>(rr.table.rows[1][2]);
  r.check(s14 != r14, "n=14: exact optimum [" + s14 + "] differs from restricted [" + r14 + "]");
  r.check(shape70 == r70, "n=70: exact optimum [" + shape70 + "] agrees with restricted [" + r70 + "]");
  return r;
}

// 3. Monte-Carlo expectation and spread.
Report criterion_3() {
  Report r;
  const auto res = run_command(make(Command::PlancherelMc, {1000, 2000}, {2000}), g_log);
  const double mean1000 = num(res.table.rows[0][2]);
  const double sd1000 = num(res.table.rows[0][3]);
  const double mean2000 = num(res.table.rows[1][2]);
  r.check(std::abs(mean1000 - 1.6984) <= 0.01, "n=1000 c_mean = " + fmt(mean1000) + " (target 1.6984 +- 0.01)");
  r.check(std::abs(sd1000 - 0.1043) <= 0.01, "n=1000 c_std = " + fmt(sd1000) + " (target 0.1043 +- 0.01)");
  r.check(std::abs(mean2000 - 1.7466) <= 0.01, "n=2000 c_mean = " + fmt(mean2000) + " (target 1.7466 +- 0.01)");
  return r;
}

// 4. Chi-square fit of the RSK sampler and the growth chain at n = 6.
Report criterion_4() {
  Report r;
  SelftestOptions opt;
  opt.seed = kDefaultSeed;
  opt.chi_square_samples = 1'000'000;
  opt.significance = 1e-3;
  for (const auto& c : run_selftest(opt)) {
    if (c.name == "rsk_sampler_chi_square_n6" || c.name == "growth_chain_chi_square_n6")
      r.check(c.passed, c.name + ": " + c.detail + " (10^6 samples, alpha 1e-3)");
  }
  if (r.lines.size() != 2) r.check(false, "chi-square checks not found");
  return r;
}

// 5. Exact identities for n <= 12.
Report criterion_5() {
  Report r;
  bool burnside = true;
  for (int n = 0; n <= 12; ++n) burnside = burnside && verify_burnside(n);
  r.check(burnside, "sum dim^2 = n! for n = 0..12");
  std::size_t count = 0;
  bool hooks = true, conj = true;
  for (int n = 1; n <= 12; ++n) {
    for (auto rows : partitions(n)) {
      const auto p = Partition::from_rows(rows);
      const BigInt d = dim_exact(p);
      hooks = hooks && d == count_tableaux_backtracking(p);
      conj = conj && d == dim_exact(conjugate(p));
      ++count;
    }
  }
  r.check(hooks, "hook formula = backtracking count on " + std::to_string(count) + " diagrams");
  r.check(conj, "dim(p) = dim(p') on " + std::to_string(count) + " diagrams");
  return r;
}

// 6. Richardson 2D limit shape.
Report criterion_6() {
  Report r;
  auto cfg = make(Command::Shape, {100'000}, {200});
  cfg.scaled = true;
  const auto res = run_command(cfg, g_log);
  const auto& s = companion(res, "summary").rows.at(0);
  const double area = num(s[2]), sup = num(s[3]), l2 = num(s[4]), r2 = num(s[5]);
  r.check(std::abs(area - 1.0) <= 0.02, "scaled area = " + fmt(area) + " (target 1 +- 0.02)");
  r.check(sup < 0.02, "sup residual vs sqrt(x)+sqrt(y)=6^(1/4) = " + fmt(sup) + " (< 0.02), rms " + fmt(l2));
  r.check(r2 > 0.999, "(sqrt x, sqrt y) line fit R^2 = " + fmt(r2) + " (> 0.999), slope " + fmt(num(s[6])) +
                          ", intercept " + fmt(num(s[7])) + " vs " + fmt(std::pow(6.0, 0.25)));
  return r;
}

// 7. Spread of the main diagonal.
Report criterion_7() {
  Report r;
  const auto res = run_command(make(Command::Diagonal, {10'000, 20'000, 40'000}, {2000, 3000, 3000}), g_log);
  const double d10 = num(res.table.rows[0][2]);
  const double z20 = num(res.table.rows[1][3]);
  std::vector<double> norm;
  for (const auto& row : res.table.rows) norm.push_back(num(row[3]));
  r.check(std::abs(d10 - 1.83) <= 0.15, "n=10000 d = " + fmt(d10) + " (target 1.83 +- 0.15)");
  r.check(std::abs(z20 - 0.0146) <= 0.0015, "n=20000 d/sqrt(n) = " + fmt(z20) + " (target 0.0146 +- 0.0015)");
  r.check(norm[0] > norm[1] && norm[1] > norm[2],
          "d/sqrt(n) decreasing: " + fmt(norm[0]) + " > " + fmt(norm[1]) + " > " + fmt(norm[2]));
  return r;
}

// 8. The 3D pipeline.
Report criterion_8() {
  Report r;
  const int n = 10'000;
  const auto dir = fs::temp_directory_path() / "youngstat_acceptance_3d";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto cfg = make(Command::Shape, {n}, {400});
  cfg.dim = 3;
  cfg.output_path = (dir / "shape3d.csv").string();
  // profile_3d verifies the single-interval property on every ray and
  // throws if it fails, so a completed run establishes it.
  CommandResult res;
  try {
    res = run_command(cfg, g_log);
    r.check(true, "400 samples profiled with the ray-interval check enabled");
  } catch (const std::exception& e) {
    r.check(false, std::string("profiling failed: ") + e.what());
    return r;
  }
  std::ostringstream sink;
  write_result(res, cfg, sink, g_log);

  bool nonneg = true;
  double volume = 0.0;
  for (const auto& row : res.table.rows) {
    nonneg = nonneg && num(row[2]) >= 0.0;
    volume += num(row[2]);
  }
  volume *= kShapeGridStep * kShapeGridStep;
  r.check(nonneg, "mean profile is non-negative");
  r.check(std::abs(volume - n) <= 0.01 * n, "mean profile volume = " + fmt(volume) + " (n = " + std::to_string(n) + ")");

  // Monotonicity closure on fresh samples from the same streams.
  bool closed = true;
  for (std::uint64_t k = 0; k < 20; ++k) {
    auto rng = rng_derive(cfg.seed, sample_stream_id(n, k));
    const auto p = richardson_grow_3d(n, rng);
    closed = closed && p.is_valid() && p.size() == n;
  }
  r.check(closed, "sampled plane partitions are monotone with n cells");

  const auto& s = companion(res, "summary").rows.at(0);
  const double x_diag = num(s[2]), h3 = num(s[3]), h3n = num(s[5]);
  r.check(std::isfinite(h3) && h3 > 0.0, "h3 estimate emitted: x_diag = " + fmt(x_diag) + ", h3 = " + fmt(h3) +
                                             ", h3 at n^(1/3) scale = " + fmt(h3n));
  bool files = true;
  for (const char* f : {"shape3d.csv", "shape3d.surface.csv", "shape3d.sqrt.csv", "shape3d.summary.csv"})
    files = files && fs::exists(dir / f) && fs::file_size(dir / f) > 0;
  r.check(files, "main, surface, sqrt and summary files written to " + dir.string());
  return r;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(YOUNGSTAT_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// 9. Byte-identical output across reruns and thread counts.
Report criterion_9() {
  Report r;
  const auto dir = fs::temp_directory_path() / "youngstat_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"plancherel_mc", "plancherel-mc --n 500,1000 --samples 400"},
      {"exact_expectation", "exact-expectation --n 30,45"},
      {"maxdim", "maxdim --n 30,45"},
      {"maxdim_restricted", "maxdim --n 40 --restricted"},
      {"growth_path", "growth-path --n-max 3000 --stride 100"},
      {"shape2d", "shape --n 2000 --samples 40 --scaled"},
      {"shape3d", "shape --n 1000 --samples 20 --dim 3"},
      {"diagonal", "diagonal --n 1000,2000 --samples 200"},
      {"selftest", "selftest"},
  };
  for (const auto& [name, args] : commands) {
    for (const char* format : {"csv", "json"}) {
      std::map<std::string, std::string> reference;
      bool same = true, ran = true;
      std::string runs;
      for (int threads : {1, 4, 8, 1}) {
        const auto sub = dir / (name + "_" + format + "_" + std::to_string(threads) + "_" + std::to_string(runs.size()));
        fs::create_directories(sub);
        const auto out = sub / (std::string("out.") + format);
        const int code = run_cli(args + " --threads " + std::to_string(threads) + " --format " + format + " --out " +
                                 out.string());
        ran = ran && code == 0;
        std::map<std::string, std::string> files;
        for (const auto& e : fs::directory_iterator(sub)) files[e.path().filename().string()] = slurp(e.path());
        if (reference.empty()) {
          reference = files;
        } else {
          same = same && files == reference;
        }
        runs += std::to_string(threads) + " ";
      }
      r.check(ran && same, name + " (" + format + "): " + std::to_string(reference.size()) +
                               " file(s) identical across threads 1,4,8 and a rerun");
    }
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Report()>>> criteria{
      {"exact Plancherel expectation c_n, n = 10..60, within 1e-6", criterion_1},
      {"maximum dimension cbar_n, n = 10..70, within 1e-6; restricted family", criterion_2},
      {"Monte-Carlo c_n and spread at n = 1000, 2000", criterion_3},
      {"sampler chi-square at n = 6", criterion_4},
      {"exact identities for n <= 12", criterion_5},
      {"Richardson 2D limit shape at n = 10^5", criterion_6},
      {"diagonal deviation at n = 10^4, 2*10^4, 4*10^4", criterion_7},
      {"3D pipeline at n = 10^4", criterion_8},
      {"determinism across threads and reruns", criterion_9},
  };

  std::vector<std::size_t> selected;
  if (argc > 1) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::cerr << "usage: acceptance [1-" << criteria.size() << "]\n";
      return 2;
    }
    selected.push_back(static_cast<std::size_t>(k - 1));
  } else {
    for (std::size_t k = 0; k < criteria.size(); ++k) selected.push_back(k);
  }

  bool all = true;
  for (std::size_t k : selected) {
    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    try {
      rep = criteria[k].second();
    } catch (const std::exception& e) {
      rep.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && rep.ok;
    std::cout << (rep.ok ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first << " ("
              << fmt(secs, 3) << " s)\n";
    for (const auto& line : rep.lines) std::cout << "    " << line << "\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
