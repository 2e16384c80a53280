#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "clin/expr.hpp"
#include "clin/system_types.hpp"
#include "clin/zero_test.hpp"

namespace clin {

/// f(x, u) = re + i im with u = y + iz; both parts are over (x, y, z).
struct ComplexCoefficient {
  Expr re, im;
};

/// The input is outside the symbolically splittable class.
class UnsupportedShape : public std::runtime_error {
 public:
  UnsupportedShape(const std::string& what, std::string subtree)
      : std::runtime_error(what + ": " + subtree), subtree_(std::move(subtree)) {}
  const std::string& subtree() const { return subtree_; }

 private:
  std::string subtree_;
};

/// Cauchy-Riemann residuals of the three coefficient pairs, in the order
/// a1,y - a2,z; a1,z + a2,y; b1,y - b2,z; b1,z + b2,y; c1,y - c2,z; c1,z + c2,y.
struct CrResiduals {
  std::array<Expr, 6> values;
  static const std::array<const char*, 6>& names();
};

/// Splits f over (x, u) into real and imaginary parts. Handles rational
/// operations, integer powers, and sin/cos/sinh/cosh/exp of complex
/// arguments; other functions are accepted only on u-free arguments.
/// Throws UnsupportedShape otherwise (tan u, ln u, sqrt u, u^(1/2), ...).
ComplexCoefficient split_expression(const Expr& f);

/// Assembles (a1, a2, b1, b2, c1, c2) from the three pairs.
SystemCoefficients split_scalar_ode(const ComplexCoefficient& a, const ComplexCoefficient& b,
                                    const ComplexCoefficient& c);

/// Real and imaginary parts of the scalar criteria
///   E1 = b_u - 2 a_x,  E2 = c_uu - a_xx - a_x b + a_u c + c_u a,
/// returned as {Re E1, Im E1, Re E2, Im E2}. The u-derivative of a pair is
/// taken as f_u = f1,y + i f2,y, which is exact for CR pairs.
std::array<Expr, 4> split_scalar_conditions(const ComplexCoefficient& a, const ComplexCoefficient& b,
                                            const ComplexCoefficient& c);

CrResiduals cr_residuals(const SystemCoefficients& s);

/// Generic coefficients a1(x,y,z), ..., c2(x,y,z) as symbols.
SystemCoefficients generic_system();

/// Rewrites derivatives of the generic symbols using the CR equations and
/// harmonicity so that derivatives of the imaginary parts only appear
/// differentiated in x, and real parts are differentiated at most once in y.
/// Two conditions that agree for every CR pair become equal after this and
/// simplify().
Expr cr_canonicalize(const Expr& e);

/// Numeric analyticity check for shapes split_expression rejects: samples
/// (x, y, z) from `dom`, evaluates f at u = y + iz in complex arithmetic and
/// tests f_z = i f_y with central differences. The residual is relative to
/// 1 + |f_y|; the default tolerance should be loose (finite differences).
ZeroVerdict numeric_analyticity(const Expr& f, const Domain& dom, const ZeroTestOptions& options);

}  // namespace clin
