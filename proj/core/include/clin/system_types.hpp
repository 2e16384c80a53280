#pragma once

#include <stdexcept>
#include <string>

#include "clin/expr.hpp"

namespace clin {

/// Coefficients of the canonical real system
///   y'' + a1 y'^2 - 2 a2 y'z' - a1 z'^2 + b1 y' - b2 z' + c1 = 0
///   z'' + a2 y'^2 + 2 a1 y'z' - a2 z'^2 + b2 y' + b1 z' + c2 = 0
/// over (x, y, z). This is the real/imaginary split of
/// u'' + a u'^2 + b u' + c = 0 with u = y + iz and a = a1 + i a2, etc.
struct SystemCoefficients {
  Expr a1, a2, b1, b2, c1, c2;
};

/// Restricted fibre-preserving point transformation
/// (x, y, z) -> (phi(x), psi1(x, y, z), psi2(x, y, z)).
struct PointTransformation {
  Expr phi, psi1, psi2;
};

/// A transformation whose Jacobian (or psi_u, phi_x) is the literal 0.
class DegenerateTransformation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace clin
