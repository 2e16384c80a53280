#include <cstdio>
#include <string>

#include "clin/expr.hpp"

namespace clin {

namespace {

// Binding strength of a printed node, matching the grammar levels:
// sum < term < factor (unary minus) < power < atom.
enum Level : int { kSum = 1, kTerm = 2, kFactor = 3, kPower = 4, kAtom = 5 };

std::string number_text(const Number& n) {
  if (n.exact) return n.q.to_string();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", n.f);
  return buf;
}

int level_of(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Number: {
      const Number& n = e.number_value();
      if (n.exact && !n.q.is_decimal()) return kTerm;
      return n.is_negative() ? kFactor : kAtom;
    }
    case NodeKind::Variable:
    case NodeKind::Symbol: return kAtom;
    case NodeKind::Unary: return e.unary_fn() == UnaryFn::Neg ? kFactor : kAtom;
    case NodeKind::Binary:
      switch (e.binary_op()) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return kSum;
        case BinaryOp::Mul:
        case BinaryOp::Div: return kTerm;
        case BinaryOp::Pow: return kPower;
      }
  }
  return kAtom;
}

void emit(const Expr& e, std::string& out);

void emit_at(const Expr& e, int min_level, std::string& out) {
  if (level_of(e) < min_level) {
    out += '(';
    emit(e, out);
    out += ')';
  } else {
    emit(e, out);
  }
}

void emit(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case NodeKind::Number: out += number_text(e.number_value()); return;
    case NodeKind::Variable: out += e.name(); return;
    case NodeKind::Symbol: {
      out += e.name();
      bool first = true;
      for (std::size_t i = 0; i < e.symbol_depends().size(); ++i) {
        for (int k = 0; k < e.symbol_orders()[i]; ++k) {
          if (first) out += '_';
          first = false;
          out += e.symbol_depends()[i];
        }
      }
      return;
    }
    case NodeKind::Unary:
      if (e.unary_fn() == UnaryFn::Neg) {
        out += '-';
        // A bare number after '-' would be read back as a negative literal.
        if (e.arg().is_number()) {
          out += '(';
          emit(e.arg(), out);
          out += ')';
        } else {
          emit_at(e.arg(), kPower, out);
        }
        return;
      }
      out += unary_name(e.unary_fn());
      out += '(';
      emit(e.arg(), out);
      out += ')';
      return;
    case NodeKind::Binary:
      switch (e.binary_op()) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
          emit_at(e.lhs(), kSum, out);
          out += e.binary_op() == BinaryOp::Add ? " + " : " - ";
          emit_at(e.rhs(), kTerm, out);
          return;
        case BinaryOp::Mul:
        case BinaryOp::Div:
          emit_at(e.lhs(), kTerm, out);
          out += e.binary_op() == BinaryOp::Mul ? '*' : '/';
          emit_at(e.rhs(), kFactor, out);
          return;
        case BinaryOp::Pow:
          emit_at(e.lhs(), kAtom, out);
          out += '^';
          emit_at(e.rhs(), kFactor, out);
          return;
      }
  }
}

}  // namespace

std::string format(const Expr& e) {
  std::string out;
  emit(e, out);
  return out;
}

}  // namespace clin
