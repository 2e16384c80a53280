#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "clin/complexify.hpp"
#include "clin/scalar_lin.hpp"
#include "clin/system_types.hpp"
#include "clin/transform_lab.hpp"
#include "clin/zero_test.hpp"

namespace clin::cli {

enum class ProblemKind { System, Scalar, ComplexScalar };

const char* to_string(ProblemKind k);

/// Malformed problem file. `line` is 1-based, 0 when not tied to a line.
class ProblemError : public std::runtime_error {
 public:
  ProblemError(const std::string& source, std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct NumericSettings {
  std::optional<double> step;
  std::optional<std::size_t> samples;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<double> x_end;
};

/// One complex-scalar coefficient: either f(x, u) or an explicit (re, im)
/// pair over (x, y, z).
struct ComplexInput {
  std::optional<Expr> in_u;
  ComplexCoefficient pair{lit(0), lit(0)};
};

struct ProblemFile {
  std::string source;
  ProblemKind kind = ProblemKind::System;

  /// Missing coefficients are 0.
  SystemCoefficients system{lit(0), lit(0), lit(0), lit(0), lit(0), lit(0)};
  ScalarCoefficients scalar{lit(0), lit(0), lit(0)};
  std::array<ComplexInput, 3> complex;

  /// phi, psi1, psi2 (system) or phi, psi (scalar; psi is stored in psi1).
  std::optional<PointTransformation> transformation;

  Domain domain = Domain::standard();
  NumericSettings numeric;
  std::vector<State> initial;

  /// Raw `key = value` text of [domain] and [numeric], kept for split output.
  std::vector<std::string> domain_lines;
  std::vector<std::string> numeric_lines;
};

/// Parses the INI-like format:
///
///   [problem]         kind = system | scalar | complex-scalar
///   [coefficients]    a1 = ... (system), a = ... (scalar kinds),
///                     a_re = ..., a_im = ... (complex-scalar pairs)
///   [transformation]  phi = ..., psi1 = ..., psi2 = ... (psi for scalar)
///   [domain]          x = lo..hi, exclude = expression > epsilon
///   [numeric]         step, samples, tol, seed, x_end
///   [initial]         x0 y0 z0 yp0 zp0 per line
///
/// '#' starts a comment. `source` names the input in error messages.
ProblemFile parse_problem(std::string_view text, const std::string& source);

/// Reads and parses a file; I/O failures raise ProblemError.
ProblemFile load_problem(const std::string& path);

/// Text of a system problem file for `s` (used by split).
std::string write_system_file(const SystemCoefficients& s, const ProblemFile& origin);

}  // namespace clin::cli
