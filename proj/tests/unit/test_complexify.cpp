#include <doctest.h>

#include <complex>
#include <random>

#include "clin/complexify.hpp"
#include "clin/evaluate.hpp"
#include "clin/simplify.hpp"
#include "support/support.hpp"

using namespace clin;
using support::P;

namespace {

bool same_value(const Expr& a, const Expr& b) { return is_zero(a - b, Domain::standard()).passed(); }

const std::vector<std::string>& splittable() {
  static const std::vector<std::string> c{
      "u", "-2/u", "-2/x", "-2*u/x^2", "u^2", "u^3 - 2*x*u + 1", "1/(u^2 + x)", "x/(u - 3)",
      "sin(u)", "cos(2*u + x)", "sinh(u)*cosh(u)", "exp(u/x)", "u^-2", "(u + 1)/(u - 2)",
  };
  return c;
}

}  // namespace

TEST_SUITE("complexify") {
  TEST_CASE("split examples") {
    const ComplexCoefficient id = split_expression(P("u"));
    CHECK(id.re == var("y"));
    CHECK(id.im == var("z"));
    const ComplexCoefficient a = split_expression(P("-2/u"));
    CHECK(same_value(a.re, P("-2*y/(y^2+z^2)")));
    CHECK(same_value(a.im, P("2*z/(y^2+z^2)")));
    const ComplexCoefficient b = split_expression(P("-2/x"));
    CHECK(same_value(b.re, P("-2/x")));
    CHECK(b.im.is_zero());
  }

  TEST_CASE("unsupported shapes are rejected") {
    CHECK_THROWS_AS(split_expression(P("tan(u)")), UnsupportedShape);
    CHECK_THROWS_AS(split_expression(P("ln(u)")), UnsupportedShape);
    CHECK_THROWS_AS(split_expression(P("sqrt(u)")), UnsupportedShape);
    CHECK_THROWS_AS(split_expression(P("u^(1/2)")), UnsupportedShape);
    CHECK_THROWS_AS(split_expression(P("y + u")), UnsupportedShape);
  }

  TEST_CASE("split agrees with complex evaluation") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> xd(1.0, 2.0), yz(0.5, 1.5);
    for (const auto& s : splittable()) {
      const Expr f = P(s);
      const ComplexCoefficient c = split_expression(f);
      for (int i = 0; i < 100; ++i) {
        const double x = xd(rng), y = yz(rng), z = yz(rng);
        const std::complex<double> w = evaluate_complex(f, {{"x", x}, {"u", {y, z}}});
        const Bindings p{{"x", x}, {"y", y}, {"z", z}};
        CAPTURE(s);
        CHECK(support::close(evaluate(c.re, p), w.real(), 1e-10));
        CHECK(support::close(evaluate(c.im, p), w.imag(), 1e-10));
      }
    }
  }

  TEST_CASE("split pairs satisfy Cauchy-Riemann") {
    for (const auto& s : splittable()) {
      const ComplexCoefficient c = split_expression(P(s));
      const SystemCoefficients sys = split_scalar_ode(c, c, c);
      const CrResiduals r = cr_residuals(sys);
      for (const auto& e : r.values) {
        CAPTURE(s);
        CHECK(is_zero(e, Domain::standard()).passed());
      }
      CHECK(numeric_analyticity(P(s), Domain::standard(), {200, 1e-6, 42}).passed());
    }
    CHECK(numeric_analyticity(P("tan(u)"), Domain::standard(), {200, 1e-6, 42}).passed());
  }

  TEST_CASE("split_scalar_ode collects the i-parts") {
    const ComplexCoefficient zero{lit(0), lit(0)};
    const SystemCoefficients s = split_scalar_ode({lit(1), lit(0)}, zero, zero);
    CHECK(s.a1 == lit(1));
    CHECK(s.a2.is_zero());
    // y'' + y'^2 - z'^2 = 0 and z'' + 2 y' z' = 0 at a jet.
    const JetPoint p{1.0, 0.7, 0.9, 0.3, -0.4, -(0.09 - 0.16), -(2 * 0.3 * -0.4)};
    const auto [r1, r2] = residual(s, p);
    CHECK(r1 == doctest::Approx(0.0));
    CHECK(r2 == doctest::Approx(0.0));
    const SystemCoefficients free = split_scalar_ode(zero, zero, zero);
    for (const Expr* e : {&free.a1, &free.a2, &free.b1, &free.b2, &free.c1, &free.c2}) CHECK(e->is_zero());
  }

  TEST_CASE("Example 1 split coefficients") {
    const SystemCoefficients s = split_scalar_ode(split_expression(P("-2/u")), split_expression(P("-2/x")),
                                                  split_expression(P("-2*u/x^2")));
    const SystemCoefficients ref = support::example1_system();
    CHECK(same_value(s.a1, ref.a1));
    CHECK(same_value(s.a2, ref.a2));
    CHECK(same_value(s.b1, ref.b1));
    CHECK(same_value(s.b2, ref.b2));
    CHECK(same_value(s.c1, ref.c1));
    CHECK(same_value(s.c2, ref.c2));
    for (const auto& e : cr_residuals(ref).values) CHECK(is_zero(e, Domain::standard()).status == ZeroStatus::SymbolicZero);
  }

  TEST_CASE("split scalar conditions") {
    const ComplexCoefficient k{lit(3), lit(-1)};
    for (const auto& e : split_scalar_conditions(k, {lit(2), lit(0)}, {lit(0), lit(5)})) CHECK(e.is_zero());

    const auto ex1 = split_scalar_conditions(split_expression(P("-2/u")), split_expression(P("-2/x")),
                                             split_expression(P("-2*u/x^2")));
    for (const auto& e : ex1) CHECK(is_zero(e, Domain::standard()).passed());

    // c = u^2: c_uu = 2, so the second criterion splits to (2, 0).
    const ComplexCoefficient zero{lit(0), lit(0)};
    const auto u2 = split_scalar_conditions(zero, zero, split_expression(P("u^2")));
    CHECK(simplify(u2[0]).is_zero());
    CHECK(simplify(u2[1]).is_zero());
    CHECK(simplify(u2[2]) == lit(2));
    CHECK(simplify(u2[3]).is_zero());
  }

  TEST_CASE("CR residual examples") {
    SystemCoefficients s{lit(0), lit(0), lit(0), lit(0), P("y"), P("2*z")};
    const CrResiduals r = cr_residuals(s);
    CHECK(simplify(r.values[4]) == lit(-1));
    CHECK(CrResiduals::names()[4] == std::string("c1_y - c2_z"));
    const SystemCoefficients zero{lit(0), lit(0), lit(0), lit(0), lit(0), lit(0)};
    for (const auto& e : cr_residuals(zero).values) CHECK(simplify(e).is_zero());
  }

  TEST_CASE("CR canonicalization of generic symbols") {
    const SystemCoefficients g = generic_system();
    // For CR pairs c2,z = c1,y and c2,y = -c1,z.
    CHECK(cr_canonicalize(differentiate(g.c2, "z") - differentiate(g.c1, "y")).is_zero());
    CHECK(cr_canonicalize(differentiate(g.c2, "y") + differentiate(g.c1, "z")).is_zero());
    // Harmonicity: c1,yy + c1,zz = 0.
    CHECK(cr_canonicalize(differentiate(differentiate(g.c1, "y"), "y") + differentiate(differentiate(g.c1, "z"), "z"))
              .is_zero());
  }
}
