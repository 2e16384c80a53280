#pragma once

#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "clin/expr.hpp"

namespace clin {

using Bindings = std::map<std::string, double, std::less<>>;
using ComplexBindings = std::map<std::string, std::complex<double>, std::less<>>;

/// Evaluation failure. `subtree()` is the formatted offending node.
class EvalError : public std::runtime_error {
 public:
  enum class Kind { Unbound, DivisionByZero, Domain, NonFinite, NearPole };

  EvalError(Kind kind, const std::string& what, std::string subtree)
      : std::runtime_error(what + " in " + subtree), kind_(kind), subtree_(std::move(subtree)) {}

  Kind kind() const { return kind_; }
  const std::string& subtree() const { return subtree_; }

 private:
  Kind kind_;
  std::string subtree_;
};

struct EvalOptions {
  /// Denominators with magnitude below this raise EvalError::NearPole.
  double pole_guard = 0.0;
};

double evaluate(const Expr& e, const Bindings& bindings);

/// Evaluates and, when `max_abs_subterm` is non-null, records the largest
/// magnitude of any intermediate node value.
double evaluate(const Expr& e, const Bindings& bindings, const EvalOptions& options,
                double* max_abs_subterm);

/// Complex evaluation with principal branches for ln, sqrt and non-integer
/// powers. Integer literal exponents use exact repeated multiplication.
std::complex<double> evaluate_complex(const Expr& e, const ComplexBindings& bindings);

}  // namespace clin
