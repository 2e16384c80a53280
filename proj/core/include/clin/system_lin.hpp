#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clin/complexify.hpp"
#include "clin/conditions.hpp"
#include "clin/expr.hpp"
#include "clin/system_types.hpp"
#include "clin/zero_test.hpp"

namespace clin {

/// Coefficients of the system a general (not necessarily CR) restricted
/// transformation maps onto u'' = 0, v'' = 0:
///   y'' + al1 y'^2 - 2 al2 y'z' + al3 z'^2 + be1 y' - be2 z' + ga1 = 0
///   z'' + al4 y'^2 + 2 al5 y'z' + al6 z'^2 + be3 y' + be4 z' + ga2 = 0
/// alpha[0] is al1 and so on.
struct GeneralSystemCoefficients {
  std::array<Expr, 6> alpha;
  std::array<Expr, 4> beta;
  std::array<Expr, 2> gamma;
};

/// Second-order jet of a candidate solution.
struct JetPoint {
  double x = 0, y = 0, z = 0, yp = 0, zp = 0, ypp = 0, zpp = 0;
};

/// psi fails the Cauchy-Riemann equations; `report` lists both residuals.
class NotCrTransformation : public std::runtime_error {
 public:
  NotCrTransformation(const std::string& what, ConditionReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const ConditionReport& report() const { return report_; }

 private:
  ConditionReport report_;
};

/// Jacobian phi_x (psi1,y psi2,z - psi1,z psi2,y).
Expr jacobian(const PointTransformation& t);

/// Throws DegenerateTransformation if the Jacobian is literally 0 and
/// std::invalid_argument if phi depends on anything but x.
GeneralSystemCoefficients induced_general_coefficients(const PointTransformation& t);

/// The two first-order CR residuals psi1,y - psi2,z and psi1,z + psi2,y.
std::array<Expr, 2> cr_first_order(const PointTransformation& t);

/// The CR-reduced coefficient formulas without checking CR. For CR psi they
/// agree with induced_general_coefficients (a1 = al1, b1 = be1, c1 = ga1, ...).
SystemCoefficients cr_coefficient_formulas(const PointTransformation& t);

/// cr_coefficient_formulas after checking CR on `dom`. Throws
/// NotCrTransformation unless both CR residuals pass is_zero.
SystemCoefficients induced_cr_coefficients(const PointTransformation& t, const Domain& dom = Domain::standard(),
                                           const ZeroTestOptions& options = {});

/// al1 + al3, al1 - al5, al2 - al4, al2 + al6, be1 - be4, be2 - be3. Together
/// with ga1 = c1, ga2 = c2 (checked by coefficient matching) these reduce
/// the twelve coefficients to the six of the canonical system.
struct Theorem1Residuals {
  std::array<Expr, 6> values;
  static const std::array<const char*, 6>& names();
};

Theorem1Residuals theorem1_residuals(const GeneralSystemCoefficients& g);

/// One printed form of a compatibility condition and whether it equals the
/// oracle condition for every CR coefficient set.
struct PrintedVariant {
  std::string label;
  std::string formula;
  bool matches = false;
  /// +1 or -1: the printed form equals sign * oracle. Meaningful only when
  /// `matches`.
  int sign = 1;
};

struct ConditionDerivation {
  std::string name;
  /// The oracle condition on generic coefficients, CR-canonicalized.
  Expr oracle;
  std::string oracle_source;
  std::vector<PrintedVariant> variants;
  /// Index into `variants` of the form system_conditions() uses.
  std::size_t selected = 0;
};

/// Runs the generic-symbol derivation once and caches the result: the
/// complex split of the scalar criteria against each printed variant.
const std::vector<ConditionDerivation>& derive_conditions();

/// The four compatibility conditions in the printed forms selected by
/// derive_conditions().
std::array<Expr, 4> system_conditions(const SystemCoefficients& s);

/// The same four conditions computed from the complex split of the scalar
/// criteria, signed to match system_conditions() on CR inputs.
std::array<Expr, 4> oracle_conditions(const SystemCoefficients& s);

/// Six CR identities and the four conditions of system_conditions().
ConditionReport check_system(const SystemCoefficients& s, const Domain& dom, const ZeroTestOptions& options = {});

/// Like check_system with the oracle conditions in place of the printed ones.
ConditionReport check_system_oracle(const SystemCoefficients& s, const Domain& dom,
                                    const ZeroTestOptions& options = {});

/// Left-hand sides of both canonical equations at `p`. EvalError propagates.
std::pair<double, double> residual(const SystemCoefficients& s, const JetPoint& p);

}  // namespace clin
