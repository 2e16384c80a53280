#include "clin/complexify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include "clin/simplify.hpp"

namespace clin {

namespace {

using Pair = ComplexCoefficient;

constexpr std::int64_t kMaxSplitPower = 16;

bool is_real(const Pair& p) { return p.im.is_zero(); }

Pair add(const Pair& a, const Pair& b) { return {a.re + b.re, a.im + b.im}; }
Pair sub(const Pair& a, const Pair& b) { return {a.re - b.re, a.im - b.im}; }
Pair neg(const Pair& a) { return {-a.re, -a.im}; }
Pair scale(const Expr& k, const Pair& a) { return {k * a.re, k * a.im}; }

Pair mul(const Pair& a, const Pair& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// (p + iq)/(r + is) = ((pr + qs) + i(qr - ps)) / (r^2 + s^2)
Pair div(const Pair& a, const Pair& b) {
  if (is_real(b)) return {a.re / b.re, a.im / b.re};
  const Expr d = pow(b.re, 2) + pow(b.im, 2);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

// Binomial expansion of (p + iq)^n, n >= 0.
Pair binomial(const Pair& a, std::int64_t n) {
  Pair out{lit(0), lit(0)};
  std::int64_t coeff = 1;
  for (std::int64_t k = 0; k <= n; ++k) {
    const Expr term = lit(coeff) * pow(a.re, n - k) * pow(a.im, k);
    switch (k % 4) {
      case 0: out.re = out.re + term; break;
      case 1: out.im = out.im + term; break;
      case 2: out.re = out.re - term; break;
      default: out.im = out.im - term; break;
    }
    coeff = coeff * (n - k) / (k + 1);
  }
  return out;
}

Pair split_pow(const Expr& e, const Pair& base, const Pair& exponent) {
  if (is_real(base) && is_real(exponent)) return {pow(base.re, exponent.re), lit(0)};
  std::int64_t n = 0;
  if (!is_real(exponent) || !e.rhs().is_integer(n)) throw UnsupportedShape("non-integer power of a complex value", format(e));
  if (n > kMaxSplitPower || n < -kMaxSplitPower) throw UnsupportedShape("exponent too large to expand", format(e));
  if (n >= 0) return binomial(base, n);
  // (p + iq)^-n = (p - iq)^n / (p^2 + q^2)^n
  const Pair num = binomial(Pair{base.re, -base.im}, -n);
  const Expr den = pow(pow(base.re, 2) + pow(base.im, 2), -n);
  return {num.re / den, num.im / den};
}

Pair split_unary(const Expr& e, const Pair& a) {
  const UnaryFn fn = e.unary_fn();
  if (fn == UnaryFn::Neg) return neg(a);
  if (is_real(a)) return {apply(fn, a.re), lit(0)};
  const Expr& p = a.re;
  const Expr& q = a.im;
  switch (fn) {
    case UnaryFn::Sin: return {sin(p) * cosh(q), cos(p) * sinh(q)};
    case UnaryFn::Cos: return {cos(p) * cosh(q), -(sin(p) * sinh(q))};
    case UnaryFn::Sinh: return {sinh(p) * cos(q), cosh(p) * sin(q)};
    case UnaryFn::Cosh: return {cosh(p) * cos(q), sinh(p) * sin(q)};
    case UnaryFn::Exp: return {exp(p) * cos(q), exp(p) * sin(q)};
    default: break;
  }
  throw UnsupportedShape(std::string(unary_name(fn)) + " of a complex argument", format(e));
}

Pair split(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Number: return {e, lit(0)};
    case NodeKind::Variable:
      if (e.name() == "u") return {var("y"), var("z")};
      if (e.name() == "x") return {e, lit(0)};
      throw UnsupportedShape("complex coefficients are functions of x and u only", e.name());
    case NodeKind::Symbol: throw UnsupportedShape("cannot split a symbol", format(e));
    case NodeKind::Unary: return split_unary(e, split(e.arg()));
    case NodeKind::Binary: {
      const Pair l = split(e.lhs());
      const Pair r = split(e.rhs());
      switch (e.binary_op()) {
        case BinaryOp::Add: return add(l, r);
        case BinaryOp::Sub: return sub(l, r);
        case BinaryOp::Mul: return mul(l, r);
        case BinaryOp::Div: return div(l, r);
        case BinaryOp::Pow: return split_pow(e, l, r);
      }
    }
  }
  throw UnsupportedShape("unexpected node", format(e));
}

Expr d(const Expr& e, std::string_view v) { return differentiate(e, v); }

// f_u = f1,y + i f2,y; f_x componentwise.
Pair du(const Pair& f) { return {d(f.re, "y"), d(f.im, "y")}; }
Pair dx(const Pair& f) { return {d(f.re, "x"), d(f.im, "x")}; }

bool is_generic_name(const std::string& n) {
  return n.size() == 2 && (n[0] == 'a' || n[0] == 'b' || n[0] == 'c') && (n[1] == '1' || n[1] == '2');
}

const std::vector<std::string> kXyz{"x", "y", "z"};

Expr generic(const std::string& name, int ox, int oy, int oz) { return Expr::symbol(name, kXyz, {ox, oy, oz}); }

Expr canonical_symbol(const std::string& name, int ox, int oy, int oz) {
  if (name[1] == '2') {
    const std::string real{name[0], '1'};
    if (oz >= 1) return canonical_symbol(real, ox, oy + 1, oz - 1);  // f2,z = f1,y
    if (oy >= 1) return -canonical_symbol(real, ox, oy - 1, oz + 1);  // f2,y = -f1,z
    return generic(name, ox, oy, oz);
  }
  if (oy >= 2) return -canonical_symbol(name, ox, oy - 2, oz + 2);  // f1,yy = -f1,zz
  return generic(name, ox, oy, oz);
}

Expr rebuild_binary(BinaryOp op, const Expr& l, const Expr& r) {
  switch (op) {
    case BinaryOp::Add: return l + r;
    case BinaryOp::Sub: return l - r;
    case BinaryOp::Mul: return l * r;
    case BinaryOp::Div: return l / r;
    case BinaryOp::Pow: return pow(l, r);
  }
  return l;
}

}  // namespace

const std::array<const char*, 6>& CrResiduals::names() {
  static const std::array<const char*, 6> n{"a1_y - a2_z", "a1_z + a2_y", "b1_y - b2_z",
                                            "b1_z + b2_y", "c1_y - c2_z", "c1_z + c2_y"};
  return n;
}

ComplexCoefficient split_expression(const Expr& f) {
  const Pair p = split(fold(f));
  return {simplify(p.re), simplify(p.im)};
}

SystemCoefficients split_scalar_ode(const ComplexCoefficient& a, const ComplexCoefficient& b,
                                    const ComplexCoefficient& c) {
  return {a.re, a.im, b.re, b.im, c.re, c.im};
}

std::array<Expr, 4> split_scalar_conditions(const ComplexCoefficient& a, const ComplexCoefficient& b,
                                            const ComplexCoefficient& c) {
  const Pair ax = dx(a);
  const Pair e1 = sub(du(b), scale(lit(2), ax));
  const Pair e2 = add(add(sub(sub(du(du(c)), dx(ax)), mul(ax, b)), mul(du(a), c)), mul(du(c), a));
  return {e1.re, e1.im, e2.re, e2.im};
}

CrResiduals cr_residuals(const SystemCoefficients& s) {
  return CrResiduals{{d(s.a1, "y") - d(s.a2, "z"), d(s.a1, "z") + d(s.a2, "y"), d(s.b1, "y") - d(s.b2, "z"),
                      d(s.b1, "z") + d(s.b2, "y"), d(s.c1, "y") - d(s.c2, "z"), d(s.c1, "z") + d(s.c2, "y")}};
}

SystemCoefficients generic_system() {
  return {generic("a1", 0, 0, 0), generic("a2", 0, 0, 0), generic("b1", 0, 0, 0),
          generic("b2", 0, 0, 0), generic("c1", 0, 0, 0), generic("c2", 0, 0, 0)};
}

Expr cr_canonicalize(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Number:
    case NodeKind::Variable: return e;
    case NodeKind::Symbol: {
      if (!is_generic_name(e.name()) || e.symbol_depends() != kXyz) return e;
      const auto& o = e.symbol_orders();
      return canonical_symbol(e.name(), o[0], o[1], o[2]);
    }
    case NodeKind::Unary: return apply(e.unary_fn(), cr_canonicalize(e.arg()));
    case NodeKind::Binary: return rebuild_binary(e.binary_op(), cr_canonicalize(e.lhs()), cr_canonicalize(e.rhs()));
  }
  return e;
}

ZeroVerdict numeric_analyticity(const Expr& f, const Domain& dom, const ZeroTestOptions& options) {
  using cd = std::complex<double>;
  ZeroVerdict v;
  DomainSampler sampler(dom, options.seed);
  for (std::size_t i = 0; i < options.samples; ++i) {
    auto p = sampler.draw();
    if (!p) break;
    const double x = p->count("x") ? p->at("x") : 0.0;
    const double y = p->at("y");
    const double z = p->at("z");
    const double h = 1e-5 * (1.0 + std::abs(y) + std::abs(z));
    auto at = [&](double yy, double zz) { return evaluate_complex(f, ComplexBindings{{"x", x}, {"u", cd(yy, zz)}}); };
    try {
      const cd fy = (at(y + h, z) - at(y - h, z)) / (2.0 * h);
      const cd fz = (at(y, z + h) - at(y, z - h)) / (2.0 * h);
      const cd diff = fz - cd(0.0, 1.0) * fy;
      const double rel = std::abs(diff) / (1.0 + std::abs(fy));
      ++v.samples_used;
      v.max_abs_residual = std::max(v.max_abs_residual, std::abs(diff));
      v.max_rel_residual = std::max(v.max_rel_residual, rel);
      if (rel > options.tol && (!v.witness || rel > v.witness->relative)) v.witness = Witness{*p, std::abs(diff), rel};
    } catch (const EvalError&) {
    }
  }
  if (v.witness) {
    v.status = ZeroStatus::Violated;
  } else if (2 * v.samples_used < options.samples) {
    v.status = ZeroStatus::Indeterminate;
    v.note = "too few evaluable sample points";
  } else {
    v.status = ZeroStatus::NumericallyZero;
  }
  return v;
}

}  // namespace clin
