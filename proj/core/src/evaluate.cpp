#include "clin/evaluate.hpp"

#include <algorithm>
#include <cmath>

namespace clin {

namespace {

class RealEvaluator {
 public:
  RealEvaluator(const Bindings& b, const EvalOptions& o, double* scale) : bindings_(b), opts_(o), scale_(scale) {}

  double eval(const Expr& e) {
    const double v = eval_node(e);
    if (!std::isfinite(v)) throw EvalError(EvalError::Kind::NonFinite, "non-finite value", format(e));
    if (scale_) *scale_ = std::max(*scale_, std::abs(v));
    return v;
  }

 private:
  double eval_node(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::Number: return e.number_value().value();
      case NodeKind::Variable: {
        auto it = bindings_.find(e.name());
        if (it == bindings_.end()) throw EvalError(EvalError::Kind::Unbound, "unbound variable '" + e.name() + "'", e.name());
        return it->second;
      }
      case NodeKind::Symbol:
        throw EvalError(EvalError::Kind::Unbound, "cannot evaluate symbol", format(e));
      case NodeKind::Unary: return eval_unary(e);
      case NodeKind::Binary: return eval_binary(e);
    }
    return 0.0;
  }

  double eval_unary(const Expr& e) {
    const double a = eval(e.arg());
    switch (e.unary_fn()) {
      case UnaryFn::Neg: return -a;
      case UnaryFn::Sin: return std::sin(a);
      case UnaryFn::Cos: return std::cos(a);
      case UnaryFn::Tan: return std::tan(a);
      case UnaryFn::Sinh: return std::sinh(a);
      case UnaryFn::Cosh: return std::cosh(a);
      case UnaryFn::Tanh: return std::tanh(a);
      case UnaryFn::Exp: return std::exp(a);
      case UnaryFn::Ln:
        if (a <= 0.0) throw EvalError(EvalError::Kind::Domain, "ln of non-positive value", format(e));
        return std::log(a);
      case UnaryFn::Sqrt:
        if (a < 0.0) throw EvalError(EvalError::Kind::Domain, "sqrt of negative value", format(e));
        return std::sqrt(a);
    }
    return 0.0;
  }

  void check_denominator(double d, const Expr& e) {
    if (d == 0.0) throw EvalError(EvalError::Kind::DivisionByZero, "division by zero", format(e));
    if (std::abs(d) < opts_.pole_guard) throw EvalError(EvalError::Kind::NearPole, "near singularity", format(e));
  }

  double eval_binary(const Expr& e) {
    const double a = eval(e.lhs());
    switch (e.binary_op()) {
      case BinaryOp::Add: return a + eval(e.rhs());
      case BinaryOp::Sub: return a - eval(e.rhs());
      case BinaryOp::Mul: return a * eval(e.rhs());
      case BinaryOp::Div: {
        const double b = eval(e.rhs());
        check_denominator(b, e);
        return a / b;
      }
      case BinaryOp::Pow: {
        std::int64_t n = 0;
        if (e.rhs().is_integer(n)) {
          if (n < 0) check_denominator(a, e);
          return std::pow(a, static_cast<double>(n));
        }
        const double b = eval(e.rhs());
        if (a <= 0.0) throw EvalError(EvalError::Kind::Domain, "non-integer power of non-positive base", format(e));
        return std::exp(b * std::log(a));
      }
    }
    return 0.0;
  }

  const Bindings& bindings_;
  const EvalOptions& opts_;
  double* scale_;
};

using cd = std::complex<double>;

cd ipow(cd base, std::int64_t n) {
  const bool invert = n < 0;
  std::uint64_t k = invert ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  cd result(1.0, 0.0);
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return invert ? cd(1.0, 0.0) / result : result;
}

bool finite(cd v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

cd eval_complex(const Expr& e, const ComplexBindings& b) {
  cd v;
  switch (e.kind()) {
    case NodeKind::Number: v = cd(e.number_value().value(), 0.0); break;
    case NodeKind::Variable: {
      auto it = b.find(e.name());
      if (it == b.end()) throw EvalError(EvalError::Kind::Unbound, "unbound variable '" + e.name() + "'", e.name());
      v = it->second;
      break;
    }
    case NodeKind::Symbol: throw EvalError(EvalError::Kind::Unbound, "cannot evaluate symbol", format(e));
    case NodeKind::Unary: {
      const cd a = eval_complex(e.arg(), b);
      switch (e.unary_fn()) {
        case UnaryFn::Neg: v = -a; break;
        case UnaryFn::Sin: v = std::sin(a); break;
        case UnaryFn::Cos: v = std::cos(a); break;
        case UnaryFn::Tan: v = std::tan(a); break;
        case UnaryFn::Sinh: v = std::sinh(a); break;
        case UnaryFn::Cosh: v = std::cosh(a); break;
        case UnaryFn::Tanh: v = std::tanh(a); break;
        case UnaryFn::Exp: v = std::exp(a); break;
        case UnaryFn::Ln:
          if (a == cd(0.0, 0.0)) throw EvalError(EvalError::Kind::Domain, "ln of zero", format(e));
          v = std::log(a);
          break;
        case UnaryFn::Sqrt: v = std::sqrt(a); break;
      }
      break;
    }
    case NodeKind::Binary: {
      const cd a = eval_complex(e.lhs(), b);
      switch (e.binary_op()) {
        case BinaryOp::Add: v = a + eval_complex(e.rhs(), b); break;
        case BinaryOp::Sub: v = a - eval_complex(e.rhs(), b); break;
        case BinaryOp::Mul: v = a * eval_complex(e.rhs(), b); break;
        case BinaryOp::Div: {
          const cd d = eval_complex(e.rhs(), b);
          if (d == cd(0.0, 0.0)) throw EvalError(EvalError::Kind::DivisionByZero, "division by zero", format(e));
          v = a / d;
          break;
        }
        case BinaryOp::Pow: {
          std::int64_t n = 0;
          if (e.rhs().is_integer(n)) {
            if (n < 0 && a == cd(0.0, 0.0))
              throw EvalError(EvalError::Kind::DivisionByZero, "negative power of zero", format(e));
            v = ipow(a, n);
          } else {
            if (a == cd(0.0, 0.0)) throw EvalError(EvalError::Kind::Domain, "non-integer power of zero", format(e));
            v = std::exp(eval_complex(e.rhs(), b) * std::log(a));
          }
          break;
        }
      }
      break;
    }
  }
  if (!finite(v)) throw EvalError(EvalError::Kind::NonFinite, "non-finite value", format(e));
  return v;
}

}  // namespace

double evaluate(const Expr& e, const Bindings& bindings) {
  const EvalOptions opts;
  return RealEvaluator(bindings, opts, nullptr).eval(e);
}

double evaluate(const Expr& e, const Bindings& bindings, const EvalOptions& options, double* max_abs_subterm) {
  if (max_abs_subterm) *max_abs_subterm = 0.0;
  return RealEvaluator(bindings, options, max_abs_subterm).eval(e);
}

std::complex<double> evaluate_complex(const Expr& e, const ComplexBindings& bindings) {
  return eval_complex(e, bindings);
}

}  // namespace clin
