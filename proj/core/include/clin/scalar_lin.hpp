#pragma once

#include <utility>

#include "clin/conditions.hpp"
#include "clin/expr.hpp"
#include "clin/system_types.hpp"
#include "clin/zero_test.hpp"

namespace clin {

/// u'' + a u'^2 + b u' + c = 0 with a, b, c over (x, u).
struct ScalarCoefficients {
  Expr a, b, c;
};

/// (x, u) -> (phi(x), psi(x, u)).
struct ScalarTransformation {
  Expr phi, psi;
};

/// Coefficients of the equation that (phi, psi) maps onto U'' = 0:
///   a = psi_uu/psi_u, b = (2 phi_x psi_xu - psi_u phi_xx)/(phi_x psi_u),
///   c = (phi_x psi_xx - psi_x phi_xx)/(phi_x psi_u).
/// Throws DegenerateTransformation if phi_x or psi_u is the literal 0, and
/// std::invalid_argument if phi mentions anything but x.
ScalarCoefficients induced_scalar_coefficients(const ScalarTransformation& t);

/// {b_u - 2 a_x, c_uu - a_xx - a_x b + a_u c + c_u a}.
std::pair<Expr, Expr> scalar_conditions(const ScalarCoefficients& s);

ConditionReport check_scalar(const ScalarCoefficients& s, const Domain& dom, const ZeroTestOptions& options = {});

}  // namespace clin
