#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "clin_cli/commands.hpp"

namespace cli = clin::cli;

int main(int argc, char** argv) {
  CLI::App app{"Check linearizability of second-order ODE systems obtained from complex scalar equations"};
  app.require_subcommand(1);

  cli::GlobalOptions g;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double tol = 0, step = 0;
  app.add_flag("--json", g.json, "Machine-readable report on stdout");
  auto* seed_opt = app.add_option("--seed", seed, "Seed of the randomized zero tests");
  auto* samples_opt = app.add_option("--samples", samples, "Sample points per identity")->check(CLI::PositiveNumber);
  auto* tol_opt = app.add_option("--tol", tol, "Relative tolerance of the zero tests")->check(CLI::PositiveNumber);
  auto* step_opt = app.add_option("--step", step, "RK4 step size")->check(CLI::PositiveNumber);

  std::string file;
  std::string out_path;
  bool numeric_only = false;

  auto* check = app.add_subcommand("check", "Test the linearization conditions");
  check->add_option("FILE", file, "Problem file")->required();
  auto* split = app.add_subcommand("split", "Split a complex scalar equation into a real system");
  split->add_option("FILE", file, "Problem file with kind = complex-scalar")->required();
  auto* out_opt = split->add_option("-o,--output", out_path, "Write the system problem file here");
  split->add_flag("--numeric-only", numeric_only, "Check analyticity numerically when no symbolic split exists");
  auto* verify = app.add_subcommand("verify", "Verify a candidate linearizing transformation");
  verify->add_option("FILE", file, "Problem file with a [transformation] section")->required();
  auto* simulate = app.add_subcommand("simulate", "Integrate and measure straightness after the transformation");
  simulate->add_option("FILE", file, "Problem file with [transformation] and [initial]")->required();
  auto* derive = app.add_subcommand("derive-conditions", "Derive the four compatibility conditions");

  for (auto* sub : {check, split, verify, simulate, derive}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  if (*seed_opt) g.seed = seed;
  if (*samples_opt) g.samples = samples;
  if (*tol_opt) g.tol = tol;
  if (*step_opt) g.step = step;

  std::ios::sync_with_stdio(false);
  if (*check) return cli::run_check(file, g, std::cout, std::cerr);
  if (*split) {
    std::optional<std::string> out;
    if (*out_opt) out = out_path;
    return cli::run_split(file, out, numeric_only, g, std::cout, std::cerr);
  }
  if (*verify) return cli::run_verify(file, g, std::cout, std::cerr);
  if (*simulate) return cli::run_simulate(file, g, std::cout, std::cerr);
  return cli::run_derive_conditions(g, std::cout, std::cerr);
}
