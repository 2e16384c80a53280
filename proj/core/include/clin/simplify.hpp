#pragma once

#include "clin/expr.hpp"

namespace clin {

/// Value-preserving rewrite. Folds exact constants and 0/1 identities, then
/// tries a rational normal form: the expression is read as a quotient of
/// polynomials with exact rational coefficients over opaque atoms
/// (variables, symbols, function calls, non-integer powers), like terms are
/// collected and sums of quotients are put over a common denominator with
/// exact cancellation of common polynomial factors. The smaller of the folded
/// and normalized forms is returned.
///
/// A literal 0 result proves the input is identically zero. The converse
/// does not hold: identities between atoms (sin^2 + cos^2 = 1) are not used.
Expr simplify(const Expr& e);

}  // namespace clin
