#include "clin/system_lin.hpp"

#include <functional>

#include "clin/evaluate.hpp"
#include "clin/simplify.hpp"

namespace clin {

namespace {

Expr d(const Expr& e, std::string_view v) { return differentiate(e, v); }
Expr d(const Expr& e, std::string_view v, std::string_view w) { return differentiate(differentiate(e, v), w); }

void require_phi_of_x(const PointTransformation& t) {
  for (const auto& v : free_variables(t.phi))
    if (v != "x") throw std::invalid_argument("phi may depend on x only, found '" + v + "'");
}

// Jacobian after simplification, rejecting the literal-zero case.
Expr checked_jacobian(const PointTransformation& t) {
  require_phi_of_x(t);
  const Expr delta = simplify(jacobian(t));
  if (delta.is_zero()) throw DegenerateTransformation("Jacobian is identically zero");
  return delta;
}

using Builder = std::function<Expr(const SystemCoefficients&)>;

struct Candidate {
  std::string label;
  Builder build;
};

const std::vector<std::vector<Candidate>>& candidates() {
  static const std::vector<std::vector<Candidate>> table = [] {
    const Builder c1 = [](const SystemCoefficients& s) { return lit(2) * d(s.a1, "x") - d(s.b1, "y"); };
    const Builder c2 = [](const SystemCoefficients& s) { return lit(2) * d(s.a2, "x") + d(s.b1, "z"); };
    const Builder c3 = [](const SystemCoefficients& s) {
      return d(s.c1, "z", "z") + d(s.a1, "x", "x") + d(s.a1, "x") * s.b1 - d(s.a2, "x") * s.b2 - d(s.a2 * s.c1, "z") -
             d(s.a1 * s.c2, "z");
    };
    const Builder c4a = [](const SystemCoefficients& s) {
      return d(s.c2, "y", "y") - d(s.a2, "x", "x") - d(s.a2, "x") * s.b1 - d(s.a1, "x") * s.b2 + d(s.a2 * s.c1, "y") +
             d(s.a1 * s.c2, "y");
    };
    const Builder c4b = [](const SystemCoefficients& s) {
      return d(s.c2, "y", "y") - d(s.a2, "x", "x") - d(s.a2, "x") * s.b1 - d(s.a1, "x") * s.b2 + d(s.a1 * s.c2, "y") -
             d(s.a2 * s.c1, "y");
    };
    const std::string both = "both printings (identical)";
    return std::vector<std::vector<Candidate>>{
        {{both, c1}},
        {{both, c2}},
        {{both, c3}},
        {{"first printing, +(a2 c1)_y", c4a}, {"second printing, -(a2 c1)_y", c4b}},
    };
  }();
  return table;
}

std::vector<ConditionDerivation> run_derivation() {
  const SystemCoefficients g = generic_system();
  const auto oracle = split_scalar_conditions({g.a1, g.a2}, {g.b1, g.b2}, {g.c1, g.c2});
  const char* sources[4] = {"Re(b_u - 2 a_x)", "Im(b_u - 2 a_x)", "Re(c_uu - a_xx - a_x b + a_u c + c_u a)",
                            "Im(c_uu - a_xx - a_x b + a_u c + c_u a)"};
  std::vector<ConditionDerivation> out;
  for (std::size_t k = 0; k < 4; ++k) {
    ConditionDerivation cd;
    cd.name = "condition " + std::to_string(k + 1);
    cd.oracle = simplify(cr_canonicalize(oracle[k]));
    cd.oracle_source = sources[k];
    cd.selected = candidates()[k].size();
    for (const auto& cand : candidates()[k]) {
      PrintedVariant pv;
      pv.label = cand.label;
      const Expr printed = cand.build(g);
      pv.formula = format(printed);
      const Expr canon = cr_canonicalize(printed);
      if (simplify(canon - cd.oracle).is_zero()) {
        pv.matches = true;
        pv.sign = 1;
      } else if (simplify(canon + cd.oracle).is_zero()) {
        pv.matches = true;
        pv.sign = -1;
      }
      if (pv.matches && cd.selected == candidates()[k].size()) cd.selected = cd.variants.size();
      cd.variants.push_back(std::move(pv));
    }
    out.push_back(std::move(cd));
  }
  return out;
}

std::vector<IdentityCheck> cr_identities(const SystemCoefficients& s, const Domain& dom, const ZeroTestOptions& options) {
  std::vector<IdentityCheck> out;
  const CrResiduals cr = cr_residuals(s);
  for (std::size_t i = 0; i < 6; ++i)
    out.push_back(check_identity(CrResiduals::names()[i], "cauchy-riemann", cr.values[i], dom, options));
  return out;
}

}  // namespace

Expr jacobian(const PointTransformation& t) {
  return d(t.phi, "x") * (d(t.psi1, "y") * d(t.psi2, "z") - d(t.psi1, "z") * d(t.psi2, "y"));
}

GeneralSystemCoefficients induced_general_coefficients(const PointTransformation& t) {
  const Expr delta = checked_jacobian(t);
  const Expr& p1 = t.psi1;
  const Expr& p2 = t.psi2;
  const Expr phi_x = d(t.phi, "x");
  const Expr phi_xx = d(phi_x, "x");
  const Expr k = phi_x / delta;
  const Expr p1y = d(p1, "y"), p1z = d(p1, "z"), p2y = d(p2, "y"), p2z = d(p2, "z");
  const Expr p1x = d(p1, "x"), p2x = d(p2, "x");
  const Expr r = phi_xx / phi_x;
  GeneralSystemCoefficients g;
  g.alpha[0] = k * (p2z * d(p1, "y", "y") - p1z * d(p2, "y", "y"));
  g.alpha[1] = k * (p1z * d(p2, "y", "z") - p2z * d(p1, "y", "z"));
  g.alpha[2] = k * (p2z * d(p1, "z", "z") - p1z * d(p2, "z", "z"));
  g.alpha[3] = k * (p1y * d(p2, "y", "y") - p2y * d(p1, "y", "y"));
  g.alpha[4] = k * (p1y * d(p2, "y", "z") - p2y * d(p1, "y", "z"));
  g.alpha[5] = k * (p1y * d(p2, "z", "z") - p2y * d(p1, "z", "z"));
  g.beta[0] = lit(2) * k * (p2z * d(p1, "x", "y") - p1z * d(p2, "x", "y")) - r;
  g.beta[1] = lit(2) * k * (p1z * d(p2, "x", "z") - p2z * d(p1, "x", "z"));
  g.beta[2] = lit(2) * k * (p1y * d(p2, "x", "y") - p2y * d(p1, "x", "y"));
  g.beta[3] = lit(2) * k * (p1y * d(p2, "x", "z") - p2y * d(p1, "x", "z")) - r;
  // Solving D^2 psi_j - (phi_xx/phi_x) D psi_j = 0 for y'', z'' without CR.
  g.gamma[0] = k * (p2z * d(p1, "x", "x") - p1z * d(p2, "x", "x")) - phi_xx * (p2z * p1x - p1z * p2x) / delta;
  g.gamma[1] = k * (p1y * d(p2, "x", "x") - p2y * d(p1, "x", "x")) - phi_xx * (p1y * p2x - p2y * p1x) / delta;
  for (auto& e : g.alpha) e = simplify(e);
  for (auto& e : g.beta) e = simplify(e);
  for (auto& e : g.gamma) e = simplify(e);
  return g;
}

std::array<Expr, 2> cr_first_order(const PointTransformation& t) {
  return {d(t.psi1, "y") - d(t.psi2, "z"), d(t.psi1, "z") + d(t.psi2, "y")};
}

SystemCoefficients cr_coefficient_formulas(const PointTransformation& t) {
  const Expr delta = checked_jacobian(t);
  const Expr& p1 = t.psi1;
  const Expr& p2 = t.psi2;
  const Expr phi_x = d(t.phi, "x");
  const Expr phi_xx = d(phi_x, "x");
  const Expr k = phi_x / delta;
  const Expr p1y = d(p1, "y"), p1z = d(p1, "z"), p1x = d(p1, "x"), p2x = d(p2, "x");
  const Expr p1yy = d(p1, "y", "y"), p1yz = d(p1, "y", "z"), p1xy = d(p1, "x", "y"), p1xz = d(p1, "x", "z");
  const Expr p1xx = d(p1, "x", "x"), p2xx = d(p2, "x", "x");
  SystemCoefficients s{
      k * (p1y * p1yy + p1z * p1yz),
      k * (p1z * p1yy - p1y * p1yz),
      lit(2) * k * (p1y * p1xy + p1z * p1xz) - phi_xx / phi_x,
      lit(2) * k * (p1z * p1xy - p1y * p1xz),
      (phi_x * p1y * p1xx - p1x * p1y * phi_xx - phi_x * p1z * p2xx + p1z * p2x * phi_xx) / delta,
      (phi_x * p1z * p1xx - p1x * p1z * phi_xx + phi_x * p1y * p2xx - p1y * p2x * phi_xx) / delta,
  };
  for (Expr* e : {&s.a1, &s.a2, &s.b1, &s.b2, &s.c1, &s.c2}) *e = simplify(*e);
  return s;
}

SystemCoefficients induced_cr_coefficients(const PointTransformation& t, const Domain& dom,
                                           const ZeroTestOptions& options) {
  checked_jacobian(t);
  const auto cr = cr_first_order(t);
  ConditionReport report;
  report.identities.push_back(check_identity("psi1_y - psi2_z", "cauchy-riemann", cr[0], dom, options));
  report.identities.push_back(check_identity("psi1_z + psi2_y", "cauchy-riemann", cr[1], dom, options));
  report.verdict = combine(report.identities);
  if (report.verdict != Verdict::Linearizable) throw NotCrTransformation("psi does not satisfy the CR equations", report);
  return cr_coefficient_formulas(t);
}

const std::array<const char*, 6>& Theorem1Residuals::names() {
  static const std::array<const char*, 6> n{"alpha1 + alpha3", "alpha1 - alpha5", "alpha2 - alpha4",
                                            "alpha2 + alpha6", "beta1 - beta4",   "beta2 - beta3"};
  return n;
}

Theorem1Residuals theorem1_residuals(const GeneralSystemCoefficients& g) {
  const auto& a = g.alpha;
  const auto& b = g.beta;
  return Theorem1Residuals{{a[0] + a[2], a[0] - a[4], a[1] - a[3], a[1] + a[5], b[0] - b[3], b[1] - b[2]}};
}

const std::vector<ConditionDerivation>& derive_conditions() {
  static const std::vector<ConditionDerivation> cached = run_derivation();
  return cached;
}

std::array<Expr, 4> system_conditions(const SystemCoefficients& s) {
  const auto& der = derive_conditions();
  const auto oracle = oracle_conditions(s);
  std::array<Expr, 4> out;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& cands = candidates()[k];
    // No printed form matched: fall back to the oracle itself.
    out[k] = der[k].selected < cands.size() ? cands[der[k].selected].build(s) : oracle[k];
  }
  return out;
}

std::array<Expr, 4> oracle_conditions(const SystemCoefficients& s) {
  const auto& der = derive_conditions();
  const auto raw = split_scalar_conditions({s.a1, s.a2}, {s.b1, s.b2}, {s.c1, s.c2});
  std::array<Expr, 4> out;
  for (std::size_t k = 0; k < 4; ++k) {
    const bool has = der[k].selected < der[k].variants.size();
    out[k] = has && der[k].variants[der[k].selected].sign < 0 ? -raw[k] : raw[k];
  }
  return out;
}

namespace {

ConditionReport check_with(const SystemCoefficients& s, const std::array<Expr, 4>& conds, const Domain& dom,
                           const ZeroTestOptions& options, const std::string& tag) {
  ConditionReport r;
  r.identities = cr_identities(s, dom, options);
  const auto& der = derive_conditions();
  for (std::size_t k = 0; k < 4; ++k) r.identities.push_back(check_identity(der[k].name, tag, conds[k], dom, options));
  r.verdict = combine(r.identities);
  return r;
}

}  // namespace

ConditionReport check_system(const SystemCoefficients& s, const Domain& dom, const ZeroTestOptions& options) {
  ConditionReport r = check_with(s, system_conditions(s), dom, options, "compatibility");
  const auto& der = derive_conditions();
  const auto& fourth = der[3];
  if (fourth.selected < fourth.variants.size()) r.note = "fourth condition: " + fourth.variants[fourth.selected].label;
  return r;
}

ConditionReport check_system_oracle(const SystemCoefficients& s, const Domain& dom, const ZeroTestOptions& options) {
  ConditionReport r = check_with(s, oracle_conditions(s), dom, options, "complex split");
  r.note = "conditions from the complex split of the scalar criteria";
  return r;
}

std::pair<double, double> residual(const SystemCoefficients& s, const JetPoint& p) {
  const Bindings b{{"x", p.x}, {"y", p.y}, {"z", p.z}};
  const double a1 = evaluate(s.a1, b), a2 = evaluate(s.a2, b);
  const double b1 = evaluate(s.b1, b), b2 = evaluate(s.b2, b);
  const double c1 = evaluate(s.c1, b), c2 = evaluate(s.c2, b);
  const double yp = p.yp, zp = p.zp;
  const double first = p.ypp + a1 * yp * yp - 2 * a2 * yp * zp - a1 * zp * zp + b1 * yp - b2 * zp + c1;
  const double second = p.zpp + a2 * yp * yp + 2 * a1 * yp * zp - a2 * zp * zp + b2 * yp + b1 * zp + c2;
  return {first, second};
}

}  // namespace clin
