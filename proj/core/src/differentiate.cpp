#include <stdexcept>

#include "clin/expr.hpp"

namespace clin {

namespace {

Expr d(const Expr& e, std::string_view v);

Expr d_symbol(const Expr& e, std::string_view v) {
  const auto& deps = e.symbol_depends();
  for (std::size_t i = 0; i < deps.size(); ++i) {
    if (deps[i] == v) {
      std::vector<int> orders = e.symbol_orders();
      ++orders[i];
      return Expr::symbol(e.name(), deps, std::move(orders));
    }
  }
  return Expr();
}

Expr d_unary(const Expr& e, std::string_view v) {
  const Expr& a = e.arg();
  const Expr da = d(a, v);
  if (da.is_zero()) return Expr();
  switch (e.unary_fn()) {
    case UnaryFn::Neg: return -da;
    case UnaryFn::Sin: return cos(a) * da;
    case UnaryFn::Cos: return -(sin(a) * da);
    case UnaryFn::Tan: return da / pow(cos(a), 2);
    case UnaryFn::Sinh: return cosh(a) * da;
    case UnaryFn::Cosh: return sinh(a) * da;
    case UnaryFn::Tanh: return da / pow(cosh(a), 2);
    case UnaryFn::Exp: return e * da;
    case UnaryFn::Ln: return da / a;
    case UnaryFn::Sqrt: return da / (lit(2) * e);
  }
  throw std::logic_error("unhandled unary function");
}

Expr d_binary(const Expr& e, std::string_view v) {
  const Expr& a = e.lhs();
  const Expr& b = e.rhs();
  switch (e.binary_op()) {
    case BinaryOp::Add: return d(a, v) + d(b, v);
    case BinaryOp::Sub: return d(a, v) - d(b, v);
    case BinaryOp::Mul: return d(a, v) * b + a * d(b, v);
    case BinaryOp::Div: {
      const Expr da = d(a, v);
      const Expr db = d(b, v);
      if (db.is_zero()) return da / b;
      return (da * b - a * db) / pow(b, 2);
    }
    case BinaryOp::Pow: {
      if (!depends_on(b, v)) {
        const Expr da = d(a, v);
        if (da.is_zero()) return Expr();
        return b * pow(a, b - lit(1)) * da;
      }
      // a^b = exp(b ln a) for a variable exponent.
      return e * (d(b, v) * ln(a) + b * d(a, v) / a);
    }
  }
  throw std::logic_error("unhandled binary operator");
}

Expr d(const Expr& e, std::string_view v) {
  switch (e.kind()) {
    case NodeKind::Number: return Expr();
    case NodeKind::Variable: return e.name() == v ? lit(1) : Expr();
    case NodeKind::Symbol: return d_symbol(e, v);
    case NodeKind::Unary: return d_unary(e, v);
    case NodeKind::Binary: return d_binary(e, v);
  }
  return Expr();
}

}  // namespace

Expr differentiate(const Expr& e, std::string_view v) {
  if (!depends_on(e, v)) return Expr();
  return d(e, v);
}

Expr differentiate(const Expr& e, std::initializer_list<std::string_view> vars) {
  Expr out = e;
  for (std::string_view v : vars) out = differentiate(out, v);
  return out;
}

}  // namespace clin
