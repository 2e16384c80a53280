#include <doctest.h>

#include <random>

#include "clin/scalar_lin.hpp"
#include "clin/simplify.hpp"
#include "support/support.hpp"

using namespace clin;
using support::P;

namespace {

bool same_value(const Expr& a, const Expr& b) { return is_zero(a - b, Domain::standard()).passed(); }

}  // namespace

TEST_SUITE("scalar-lin") {
  TEST_CASE("induced coefficients") {
    const ScalarCoefficients id = induced_scalar_coefficients({P("x"), P("u")});
    CHECK(id.a.is_zero());
    CHECK(id.b.is_zero());
    CHECK(id.c.is_zero());

    const ScalarCoefficients sq = induced_scalar_coefficients({P("x"), P("u^2")});
    CHECK(same_value(sq.a, P("1/u")));
    CHECK(sq.b.is_zero());
    CHECK(sq.c.is_zero());

    const ScalarCoefficients ex1 = induced_scalar_coefficients({P("x"), P("1/(x*u)")});
    CHECK(same_value(ex1.a, P("-2/u")));
    CHECK(same_value(ex1.b, P("-2/x")));
    CHECK(same_value(ex1.c, P("-2*u/x^2")));
  }

  TEST_CASE("degenerate and malformed transformations") {
    CHECK_THROWS_AS(induced_scalar_coefficients({P("x"), P("x^2")}), DegenerateTransformation);
    CHECK_THROWS_AS(induced_scalar_coefficients({P("3"), P("u")}), DegenerateTransformation);
    CHECK_THROWS_AS(induced_scalar_coefficients({P("x*u"), P("u")}), std::invalid_argument);
  }

  TEST_CASE("condition examples") {
    auto [c1, c2] = scalar_conditions({lit(1), lit(0), lit(0)});
    CHECK(simplify(c1).is_zero());
    CHECK(simplify(c2).is_zero());
    auto [d1, d2] = scalar_conditions({P("1/u"), lit(0), lit(0)});
    CHECK(simplify(d1).is_zero());
    CHECK(simplify(d2).is_zero());
    auto [e1, e2] = scalar_conditions({lit(0), lit(0), P("u^2")});
    CHECK(simplify(e1).is_zero());
    CHECK(simplify(e2) == lit(2));
  }

  TEST_CASE("check_scalar verdicts") {
    const Domain dom = Domain::standard();
    CHECK(check_scalar({P("1/u"), lit(0), lit(0)}, dom).verdict == Verdict::Linearizable);
    CHECK(check_scalar({lit(0), lit(0), lit(0)}, dom).verdict == Verdict::Linearizable);
    const ConditionReport neg = check_scalar({lit(0), lit(0), P("u^2")}, dom);
    CHECK(neg.verdict == Verdict::NotLinearizable);
    REQUIRE(neg.identities.size() == 2);
    REQUIRE(neg.identities[1].verdict.witness);
    CHECK(neg.identities[1].verdict.witness->value == doctest::Approx(2.0));
  }

  TEST_CASE("round trip over random transformations") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 30; ++i) {
      const ScalarTransformation t = support::random_scalar_transformation(rng);
      CAPTURE(format(t.phi));
      CAPTURE(format(t.psi));
      const ScalarCoefficients s = induced_scalar_coefficients(t);
      const ConditionReport r = check_scalar(s, Domain::standard());
      CHECK(r.verdict == Verdict::Linearizable);
    }
  }

  TEST_CASE("first criterion is the psi_xuu mixed-derivative compatibility") {
    // a = psi_uu/psi_u and b = 2 psi_xu/psi_u - phi_xx/phi_x give
    // b_u - 2 a_x = 2 (psi_xu/psi_u)_u - 2 (psi_uu/psi_u)_x, which vanishes
    // because psi_xuu = psi_uux.
    const ScalarTransformation t{P("x^2 + x"), P("x*u^3 + exp(x)*u + sin(x)")};
    const ScalarCoefficients s = induced_scalar_coefficients(t);
    const Expr psi_u = differentiate(t.psi, "u");
    const Expr lhs = differentiate(differentiate(differentiate(t.psi, "x"), "u") / psi_u, "u");
    const Expr rhs = differentiate(differentiate(psi_u, "u") / psi_u, "x");
    CHECK(is_zero(lhs - rhs, Domain::standard()).passed());
    CHECK(is_zero(scalar_conditions(s).first, Domain::standard()).passed());
  }
}
