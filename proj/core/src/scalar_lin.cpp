#include "clin/scalar_lin.hpp"

#include <stdexcept>

#include "clin/simplify.hpp"

namespace clin {

namespace {

Expr d(const Expr& e, std::string_view v) { return differentiate(e, v); }

}  // namespace

ScalarCoefficients induced_scalar_coefficients(const ScalarTransformation& t) {
  for (const auto& v : free_variables(t.phi))
    if (v != "x") throw std::invalid_argument("phi may depend on x only, found '" + v + "'");
  const Expr phi_x = simplify(d(t.phi, "x"));
  const Expr psi_u = simplify(d(t.psi, "u"));
  if (phi_x.is_zero()) throw DegenerateTransformation("phi_x is identically zero");
  if (psi_u.is_zero()) throw DegenerateTransformation("psi_u is identically zero");
  const Expr phi_xx = d(phi_x, "x");
  const Expr psi_x = d(t.psi, "x");
  return {
      simplify(d(psi_u, "u") / psi_u),
      simplify((lit(2) * phi_x * d(psi_x, "u") - psi_u * phi_xx) / (phi_x * psi_u)),
      simplify((phi_x * d(psi_x, "x") - psi_x * phi_xx) / (phi_x * psi_u)),
  };
}

std::pair<Expr, Expr> scalar_conditions(const ScalarCoefficients& s) {
  const Expr a_x = d(s.a, "x");
  const Expr first = d(s.b, "u") - lit(2) * a_x;
  const Expr second = d(d(s.c, "u"), "u") - d(a_x, "x") - a_x * s.b + d(s.a, "u") * s.c + d(s.c, "u") * s.a;
  return {first, second};
}

ConditionReport check_scalar(const ScalarCoefficients& s, const Domain& dom, const ZeroTestOptions& options) {
  const auto [first, second] = scalar_conditions(s);
  ConditionReport r;
  r.identities.push_back(check_identity("b_u - 2 a_x", "scalar criterion", first, dom, options));
  r.identities.push_back(check_identity("c_uu - a_xx - a_x b + a_u c + c_u a", "scalar criterion", second, dom, options));
  r.verdict = combine(r.identities);
  return r;
}

}  // namespace clin
