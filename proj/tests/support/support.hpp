// Helpers shared by the unit tests and the acceptance binary: random
// transformation families, an expression corpus and independent numeric
// oracles (finite differences, closed-form solutions).
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "clin/complexify.hpp"
#include "clin/evaluate.hpp"
#include "clin/parser.hpp"
#include "clin/scalar_lin.hpp"
#include "clin/system_lin.hpp"
#include "clin/transform_lab.hpp"

namespace support {

using clin::Bindings;
using clin::Expr;

inline Expr P(const std::string& s) { return clin::parse(s); }

/// Expressions over x, y, z, u that are smooth on the standard domain.
inline const std::vector<std::string>& corpus() {
  static const std::vector<std::string> c{
      "x + y*z",
      "-2*y/(y^2+z^2)",
      "2*z/(y^2+z^2)",
      "-2/x",
      "-2*y/x^2",
      "y/(x*(y^2+z^2))",
      "-z/(x*(y^2+z^2))",
      "sin(y)*cosh(z)",
      "sin(y)*cos(y)/(sin(y)^2*cosh(z)^2 + cos(y)^2*sinh(z)^2)",
      "-sinh(z)*cosh(z)/(sin(y)^2*cosh(z)^2 + cos(y)^2*sinh(z)^2)",
      "x*cos(y)*cosh(z)",
      "-x*sin(y)*sinh(z)",
      "exp(x*y) - ln(x + z)",
      "sqrt(x^2 + y^2) * tanh(z)",
      "tan(y/2) + x^(1/2)",
      "x^y + y^x",
      "(x + 1)^3 - 3*x*u + u^-2",
      "1/(u^2 + x) - u/x^3",
      "2.5*x - 0.125*y^2*z",
      "cos(u)/sin(u)",
  };
  return c;
}

/// Central difference of `e` in `v` at `p`.
inline double central_difference(const Expr& e, const std::string& v, Bindings p, double h = 1e-5) {
  const double v0 = p[v];
  p[v] = v0 + h;
  const double fp = clin::evaluate(e, p);
  p[v] = v0 - h;
  const double fm = clin::evaluate(e, p);
  return (fp - fm) / (2 * h);
}

inline std::string small_int(std::mt19937_64& rng, int lo, int hi) {
  return std::to_string(std::uniform_int_distribution<int>(lo, hi)(rng));
}

/// Monic phi(x) of degree 1..3 with nonnegative coefficients: phi_x > 0 for
/// x > 0.
inline std::string random_phi(std::mt19937_64& rng) {
  const int deg = std::uniform_int_distribution<int>(1, 3)(rng);
  std::string s = deg == 1 ? "x" : "x^" + std::to_string(deg);
  for (int k = deg - 1; k >= 1; --k) s += " + " + small_int(rng, 0, 3) + "*x^" + std::to_string(k);
  return s + " + " + small_int(rng, -2, 2);
}

/// psi(x, u) = sum_k (p_k + q_k x + i (r_k + s_k x)) u^k, degree 1..4, with
/// a nonzero linear term.
inline std::string random_holomorphic(std::mt19937_64& rng) {
  const int deg = std::uniform_int_distribution<int>(1, 4)(rng);
  std::string s = "0";
  for (int k = 0; k <= deg; ++k) {
    std::string re = small_int(rng, -2, 2), im = small_int(rng, -2, 2);
    if (k == 1 && re == "0" && im == "0") re = "1";
    // (re + im i) u^k; the term im*(i u^k) is marked IUk and split later.
    s += " + (" + re + " + " + small_int(rng, -1, 1) + "*x)*u^" + std::to_string(k);
    if (im != "0") s += " + (" + im + ")*IU" + std::to_string(k);
  }
  return s;
}

/// Splits a polynomial built by random_holomorphic: IUk stands for i*u^k.
inline clin::PointTransformation split_holomorphic(const std::string& phi, const std::string& psi) {
  // Real part: drop the IUk terms; imaginary part from them is i*(u^k split).
  Expr re_part = clin::lit(0);
  Expr im_part = clin::lit(0);
  std::string plain;
  std::vector<std::pair<std::string, int>> imag_terms;
  std::size_t pos = 0;
  while (pos < psi.size()) {
    const auto next = psi.find(" + ", pos);
    const std::string term = psi.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    const auto iu = term.find("IU");
    if (iu != std::string::npos) {
      const std::string coeff = term.substr(0, term.find(")*IU") + 1);
      const int k = std::stoi(term.substr(iu + 2));
      imag_terms.emplace_back(coeff, k);
    } else {
      plain += (plain.empty() ? "" : " + ") + term;
    }
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  const clin::ComplexCoefficient base = clin::split_expression(P(plain));
  re_part = base.re;
  im_part = base.im;
  for (const auto& [coeff, k] : imag_terms) {
    // (c) * i * u^k: real part -c*Im(u^k), imaginary part c*Re(u^k).
    const clin::ComplexCoefficient uk = clin::split_expression(P("u^" + std::to_string(k)));
    const Expr c = P(coeff);
    re_part = re_part - c * uk.im;
    im_part = im_part + c * uk.re;
  }
  return {P(phi), re_part, im_part};
}

inline clin::PointTransformation random_cr_transformation(std::mt19937_64& rng) {
  const std::string phi = random_phi(rng);
  return split_holomorphic(phi, random_holomorphic(rng));
}

/// phi(x) and psi(x, u) polynomial with psi_u not identically zero: the
/// random terms never touch the leading k*u.
inline clin::ScalarTransformation random_scalar_transformation(std::mt19937_64& rng) {
  const std::string phi = random_phi(rng);
  std::string psi = "(" + small_int(rng, 1, 3) + ")*u";
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 3; ++j) {
      if ((i == 0 && j == 1) || std::uniform_int_distribution<int>(0, 2)(rng) != 0) continue;
      psi += " + (" + small_int(rng, -2, 2) + ")*x^" + std::to_string(i) + "*u^" + std::to_string(j);
    }
  return {P(phi), P(psi)};
}

/// The canonical system's second derivatives at (x, y, z, y', z') obtained
/// independently of the coefficient formulas: the transformation must map
/// solutions to straight lines, i.e. D^2 psi_j - (phi_xx/phi_x) D psi_j = 0.
/// All partial derivatives of phi, psi come from central differences.
inline std::array<double, 2> second_derivatives_oracle(const clin::PointTransformation& t, double x, double y,
                                                       double z, double yp, double zp) {
  const double h = 1e-4;
  auto f = [&](const Expr& e, double dx, double dy, double dz) {
    return clin::evaluate(e, Bindings{{"x", x + dx}, {"y", y + dy}, {"z", z + dz}});
  };
  struct Partials {
    double x, y, z, xx, yy, zz, xy, xz, yz;
  };
  auto partials = [&](const Expr& e) {
    Partials p{};
    const double c = f(e, 0, 0, 0);
    p.x = (f(e, h, 0, 0) - f(e, -h, 0, 0)) / (2 * h);
    p.y = (f(e, 0, h, 0) - f(e, 0, -h, 0)) / (2 * h);
    p.z = (f(e, 0, 0, h) - f(e, 0, 0, -h)) / (2 * h);
    p.xx = (f(e, h, 0, 0) - 2 * c + f(e, -h, 0, 0)) / (h * h);
    p.yy = (f(e, 0, h, 0) - 2 * c + f(e, 0, -h, 0)) / (h * h);
    p.zz = (f(e, 0, 0, h) - 2 * c + f(e, 0, 0, -h)) / (h * h);
    p.xy = (f(e, h, h, 0) - f(e, h, -h, 0) - f(e, -h, h, 0) + f(e, -h, -h, 0)) / (4 * h * h);
    p.xz = (f(e, h, 0, h) - f(e, h, 0, -h) - f(e, -h, 0, h) + f(e, -h, 0, -h)) / (4 * h * h);
    p.yz = (f(e, 0, h, h) - f(e, 0, h, -h) - f(e, 0, -h, h) + f(e, 0, -h, -h)) / (4 * h * h);
    return p;
  };
  const Partials ph = partials(t.phi);
  const double r = ph.xx / ph.x;
  const Partials p1 = partials(t.psi1);
  const Partials p2 = partials(t.psi2);
  // R_j = everything in D^2 psi_j - r D psi_j except psi_j,y y'' + psi_j,z z''.
  auto rest = [&](const Partials& p) {
    return p.xx + 2 * p.xy * yp + 2 * p.xz * zp + p.yy * yp * yp + 2 * p.yz * yp * zp + p.zz * zp * zp -
           r * (p.x + p.y * yp + p.z * zp);
  };
  const double r1 = rest(p1), r2 = rest(p2);
  const double det = p1.y * p2.z - p1.z * p2.y;
  return {-(p2.z * r1 - p1.z * r2) / det, -(p1.y * r2 - p2.y * r1) / det};
}

/// Example 1 source ODE u'' - (2/u) u'^2 - (2/x) u' - 2u/x^2 = 0 has the
/// exact solutions u = 1/(A x^2 + B x). Returns (y, z, y', z', y'', z'') at
/// x from the initial state.
inline std::array<double, 6> example1_exact(const clin::State& init, double x) {
  using cd = std::complex<double>;
  const cd u0(init.y, init.z), up0(init.yp, init.zp);
  const cd w0 = 1.0 / u0;
  const cd wp0 = -up0 / (u0 * u0);
  const double x0 = init.x;
  const cd a = (wp0 * x0 - w0) / (x0 * x0);
  const cd b = wp0 - 2.0 * a * x0;
  const cd w = a * x * x + b * x;
  const cd wp = 2.0 * a * x + b;
  const cd u = 1.0 / w;
  const cd up = -wp / (w * w);
  const cd upp = -2.0 * a / (w * w) + 2.0 * wp * wp / (w * w * w);
  return {u.real(), u.imag(), up.real(), up.imag(), upp.real(), upp.imag()};
}

inline clin::SystemCoefficients example1_system() {
  return {P("-2*y/(y^2+z^2)"), P("2*z/(y^2+z^2)"), P("-2/x"), P("0"), P("-2*y/x^2"), P("-2*z/x^2")};
}

inline clin::PointTransformation example1_transformation() {
  return {P("x"), P("y/(x*(y^2+z^2))"), P("-z/(x*(y^2+z^2))")};
}

inline clin::SystemCoefficients example2_system(bool f_in_z = true) {
  const std::string f = f_in_z ? "(sin(y)^2*cosh(z)^2 + cos(y)^2*sinh(z)^2)" : "(sin(y)^2*cosh(z)^2 + cos(y)^2*sinh(y)^2)";
  return {P("sin(y)*cos(y)/" + f), P("-sinh(z)*cosh(z)/" + f), P("2/x"), P("0"), P("0"), P("0")};
}

inline clin::PointTransformation example2_transformation() {
  return {P("x"), P("x*cos(y)*cosh(z)"), P("-x*sin(y)*sinh(z)")};
}

inline clin::SystemCoefficients example3_system(const std::string& f, const std::string& g) {
  return {P("0"), P("0"), P("0"), P("0"), P("(" + f + ")*y"), P("(" + g + ")*z")};
}

/// Relative agreement |a - b| <= tol (1 + max(|a|, |b|)).
inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace support
