// youngstat: command-line front end for the Young diagram experiments.

#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "young/commands.hpp"

namespace {

using young::Command;
using young::RunConfig;

struct Flags {
  RunConfig cfg;
  int cap_override = 0;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--seed", f.cfg.seed, "Master seed (fixed default for reproducibility)");
  sub->add_option("--threads", f.cfg.threads, "Worker threads; 0 = all cores. Results do not depend on it")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--out", f.cfg.output_path, "Output file (default: standard output)");
  const std::map<std::string, young::Format> formats{{"csv", young::Format::Csv}, {"json", young::Format::Json}};
  sub->add_option("--format", f.cfg.format, "csv or json")->transform(CLI::CheckedTransformer(formats));
}

void add_n_list(CLI::App* sub, Flags& f) {
  sub->add_option("--n", f.cfg.n, "Diagram size(s), comma separated")->delimiter(',')->required();
}

void add_samples(CLI::App* sub, Flags& f) {
  sub->add_option("--samples", f.cfg.samples, "Sample size, or one per --n")->delimiter(',')->required();
}

void add_cap(CLI::App* sub, Flags& f) {
  sub->add_option("--cap-override", f.cap_override, "Raise the exhaustive-scan size cap")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte-Carlo statistics of Young diagrams"};
  app.require_subcommand(1);
  Flags f;

  auto* mc = app.add_subcommand("plancherel-mc", "Monte-Carlo mean/stddev of c under Plancherel measure");
  add_n_list(mc, f);
  add_samples(mc, f);
  add_common(mc, f);

  auto* exact = app.add_subcommand("exact-expectation", "Exact Plancherel expectation of c by full scan");
  add_n_list(exact, f);
  add_cap(exact, f);
  add_common(exact, f);

  auto* maxdim = app.add_subcommand("maxdim", "Maximum-dimension diagram and its c");
  add_n_list(maxdim, f);
  add_cap(maxdim, f);
  maxdim->add_flag("--restricted", f.cfg.restricted, "Scan symmetric diagrams and their one-cell extensions");
  add_common(maxdim, f);

  auto* growth = app.add_subcommand("growth-path", "c along one random growth sequence");
  growth->add_option("--n-max", f.cfg.n_max, "Final size")->required();
  growth->add_option("--stride", f.cfg.stride, "Checkpoint spacing");
  const std::map<std::string, young::Measure> measures{{"plancherel", young::Measure::Plancherel},
                                                       {"richardson", young::Measure::Richardson}};
  growth->add_option("--measure", f.cfg.measure, "plancherel or richardson")
      ->transform(CLI::CheckedTransformer(measures));
  add_common(growth, f);

  auto* shape = app.add_subcommand("shape", "Average Richardson shape in 2D or 3D");
  add_n_list(shape, f);
  add_samples(shape, f);
  shape->add_option("--dim", f.cfg.dim, "2 or 3")->check(CLI::IsMember({2, 3}));
  shape->add_flag("--scaled", f.cfg.scaled, "Scale by n^(-1/2) (2D) or n^(-1/3) (3D)");
  add_common(shape, f);

  auto* diag = app.add_subcommand("diagonal", "Stddev of the main diagonal segment of Richardson diagrams");
  add_n_list(diag, f);
  add_samples(diag, f);
  add_common(diag, f);

  auto* self = app.add_subcommand("selftest", "Small-n oracle checks");
  add_common(self, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? young::exit_code::kOk : young::exit_code::kConfig;
  }

  const std::map<CLI::App*, Command> commands{
      {mc, Command::PlancherelMc}, {exact, Command::ExactExpectation}, {maxdim, Command::MaxDim},
      {growth, Command::GrowthPath}, {shape, Command::Shape},          {diag, Command::Diagonal},
      {self, Command::Selftest}};
  for (const auto& [sub, cmd] : commands)
    if (sub->parsed()) f.cfg.command = cmd;
  if (f.cap_override > 0) f.cfg.cap_override = f.cap_override;

  try {
    const auto result = young::run_command(f.cfg, std::cerr);
    young::write_result(result, f.cfg, std::cout, std::cerr);
    std::cout.flush();
    if (!std::cout) throw young::IoError("failed writing standard output");
    return result.exit_code;
  } catch (const young::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return young::exit_code::kConfig;
  } catch (const young::CapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return young::exit_code::kRefused;
  } catch (const young::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return young::exit_code::kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return young::exit_code::kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return young::exit_code::kConfig;
  }
}
