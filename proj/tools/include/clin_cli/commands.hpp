#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace clin::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,             // Linearizable / Verified / all checks passed
  kExitNegative = 1,       // NotLinearizable / verification failed
  kExitIndeterminate = 2,  // inconclusive zero tests
  kExitInputError = 3,     // unreadable or malformed problem file, unsupported shape
  kExitUsage = 4,          // bad command line
};

/// Command-line overrides; unset fields fall back to the problem file's
/// [numeric] section and then to the built-in defaults.
struct GlobalOptions {
  bool json = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> tol;
  std::optional<double> step;
};

int run_check(const std::string& path, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int run_split(const std::string& path, const std::optional<std::string>& out_path, bool numeric_only,
              const GlobalOptions& g, std::ostream& out, std::ostream& err);
int run_verify(const std::string& path, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int run_simulate(const std::string& path, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int run_derive_conditions(const GlobalOptions& g, std::ostream& out, std::ostream& err);

}  // namespace clin::cli
