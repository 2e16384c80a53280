#include "clin/expr.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace clin {

class Node {
 public:
  explicit Node(NodeKind k) : kind(k) {}

  NodeKind kind;
  Number num;
  std::string name;
  UnaryFn ufn = UnaryFn::Neg;
  BinaryOp bop = BinaryOp::Add;
  std::vector<Expr> kids;
  std::vector<std::string> deps;
  std::vector<int> orders;
  std::size_t hash = 0;
  std::size_t size = 1;
};

namespace {

constexpr std::size_t kFnvOffset = 1469598103934665603ULL;
constexpr std::size_t kFnvPrime = 1099511628211ULL;

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::size_t hash_string(std::string_view s) {
  std::size_t h = kFnvOffset;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= kFnvPrime;
  }
  return h;
}

std::size_t saturating_add(std::size_t a, std::size_t b) {
  const std::size_t r = a + b;
  return r < a ? static_cast<std::size_t>(-1) : r;
}

const std::shared_ptr<const Node>& zero_node() {
  static const std::shared_ptr<const Node> zero = [] {
    auto n = std::make_shared<Node>(NodeKind::Number);
    n->num = Number{true, Rational(0), 0.0};
    n->hash = mix(static_cast<std::size_t>(NodeKind::Number), 0);
    return n;
  }();
  return zero;
}

std::size_t hash_number(const Number& n) {
  if (n.exact) return mix(mix(1, static_cast<std::size_t>(n.q.num())), static_cast<std::size_t>(n.q.den()));
  return mix(2, std::bit_cast<std::uint64_t>(n.f));
}

bool as_exact(const Expr& e, Rational& out) {
  if (!e.is_number() || !e.number_value().exact) return false;
  out = e.number_value().q;
  return true;
}

bool is_neg(const Expr& e) { return e.kind() == NodeKind::Unary && e.unary_fn() == UnaryFn::Neg; }

bool is_negative_number(const Expr& e) { return e.is_number() && e.number_value().is_negative(); }

Expr negate_number(const Expr& e) {
  const Number& n = e.number_value();
  if (n.exact) {
    try {
      return Expr::number(-n.q);
    } catch (const RationalOverflow&) {
      return Expr::number(-n.q.to_double());
    }
  }
  return Expr::number(-n.f);
}

template <class ExactOp, class FloatOp>
Expr fold_numbers(const Expr& a, const Expr& b, ExactOp exact_op, FloatOp float_op) {
  Rational qa, qb;
  if (as_exact(a, qa) && as_exact(b, qb)) {
    try {
      return Expr::number(exact_op(qa, qb));
    } catch (const RationalOverflow&) {
    }
  }
  return Expr::number(float_op(a.number_value().value(), b.number_value().value()));
}

}  // namespace

std::string_view unary_name(UnaryFn fn) {
  switch (fn) {
    case UnaryFn::Neg: return "-";
    case UnaryFn::Sin: return "sin";
    case UnaryFn::Cos: return "cos";
    case UnaryFn::Tan: return "tan";
    case UnaryFn::Sinh: return "sinh";
    case UnaryFn::Cosh: return "cosh";
    case UnaryFn::Tanh: return "tanh";
    case UnaryFn::Exp: return "exp";
    case UnaryFn::Ln: return "ln";
    case UnaryFn::Sqrt: return "sqrt";
  }
  return "?";
}

bool unary_from_name(std::string_view name, UnaryFn& out) {
  static constexpr std::array<UnaryFn, 9> kNamed = {UnaryFn::Sin,  UnaryFn::Cos,  UnaryFn::Tan,
                                                    UnaryFn::Sinh, UnaryFn::Cosh, UnaryFn::Tanh,
                                                    UnaryFn::Exp,  UnaryFn::Ln,   UnaryFn::Sqrt};
  for (UnaryFn fn : kNamed) {
    if (unary_name(fn) == name) {
      out = fn;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Construction and access

Expr::Expr() : node_(zero_node()) {}

Expr Expr::number(const Rational& q) {
  if (q.is_zero()) return Expr();
  auto n = std::make_shared<Node>(NodeKind::Number);
  n->num = Number{true, q, 0.0};
  n->hash = mix(static_cast<std::size_t>(NodeKind::Number), hash_number(n->num));
  return Expr(std::move(n));
}

Expr Expr::number(double f) {
  if (!std::isfinite(f)) throw std::domain_error("non-finite numeric literal");
  if (f == 0.0) return Expr();
  auto n = std::make_shared<Node>(NodeKind::Number);
  n->num = Number{false, Rational(), f};
  n->hash = mix(static_cast<std::size_t>(NodeKind::Number), hash_number(n->num));
  return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
  auto n = std::make_shared<Node>(NodeKind::Variable);
  n->hash = mix(static_cast<std::size_t>(NodeKind::Variable), hash_string(name));
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::symbol(std::string name, std::vector<std::string> depends_on, std::vector<int> orders) {
  if (orders.empty()) orders.assign(depends_on.size(), 0);
  if (orders.size() != depends_on.size()) throw std::invalid_argument("symbol order/dependency size mismatch");
  auto n = std::make_shared<Node>(NodeKind::Symbol);
  std::size_t h = mix(static_cast<std::size_t>(NodeKind::Symbol), hash_string(name));
  for (std::size_t i = 0; i < depends_on.size(); ++i) {
    h = mix(h, hash_string(depends_on[i]));
    h = mix(h, static_cast<std::size_t>(orders[i]));
  }
  n->hash = h;
  n->name = std::move(name);
  n->deps = std::move(depends_on);
  n->orders = std::move(orders);
  return Expr(std::move(n));
}

Expr Expr::unary(UnaryFn fn, Expr arg) {
  auto n = std::make_shared<Node>(NodeKind::Unary);
  n->ufn = fn;
  n->hash = mix(mix(static_cast<std::size_t>(NodeKind::Unary), static_cast<std::size_t>(fn)), arg.hash());
  n->size = saturating_add(1, arg.size());
  n->kids.push_back(std::move(arg));
  return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  if (op == BinaryOp::Div && rhs.is_zero()) throw std::domain_error("division by literal zero");
  auto n = std::make_shared<Node>(NodeKind::Binary);
  n->bop = op;
  n->hash = mix(mix(mix(static_cast<std::size_t>(NodeKind::Binary), static_cast<std::size_t>(op)), lhs.hash()),
                rhs.hash());
  n->size = saturating_add(1, saturating_add(lhs.size(), rhs.size()));
  n->kids.push_back(std::move(lhs));
  n->kids.push_back(std::move(rhs));
  return Expr(std::move(n));
}

NodeKind Expr::kind() const { return node_->kind; }
const Number& Expr::number_value() const { return node_->num; }
const std::string& Expr::name() const { return node_->name; }
UnaryFn Expr::unary_fn() const { return node_->ufn; }
BinaryOp Expr::binary_op() const { return node_->bop; }
const Expr& Expr::arg() const { return node_->kids.at(0); }
const Expr& Expr::lhs() const { return node_->kids.at(0); }
const Expr& Expr::rhs() const { return node_->kids.at(1); }
const std::vector<std::string>& Expr::symbol_depends() const { return node_->deps; }
const std::vector<int>& Expr::symbol_orders() const { return node_->orders; }
std::size_t Expr::hash() const { return node_->hash; }
std::size_t Expr::size() const { return node_->size; }

bool Expr::is_zero() const { return is_number() && node_->num.is_zero(); }
bool Expr::is_one() const { return is_number() && node_->num.is_one(); }

bool Expr::is_integer(std::int64_t& out) const {
  if (!is_number() || !node_->num.exact || !node_->num.q.is_integer()) return false;
  out = node_->num.q.num();
  return true;
}

// ---------------------------------------------------------------------------
// Ordering

int compare(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case NodeKind::Number: {
      const Number& x = a.number_value();
      const Number& y = b.number_value();
      if (x.exact && y.exact) {
        const auto c = x.q <=> y.q;
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
      }
      if (x.value() != y.value()) return x.value() < y.value() ? -1 : 1;
      if (x.exact != y.exact) return x.exact ? -1 : 1;
      return 0;
    }
    case NodeKind::Variable:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case NodeKind::Symbol: {
      if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
      if (a.symbol_depends() != b.symbol_depends()) return a.symbol_depends() < b.symbol_depends() ? -1 : 1;
      // Lower total order first, then lexicographic on orders.
      const auto& oa = a.symbol_orders();
      const auto& ob = b.symbol_orders();
      int sa = 0, sb = 0;
      for (int o : oa) sa += o;
      for (int o : ob) sb += o;
      if (sa != sb) return sa < sb ? -1 : 1;
      if (oa != ob) return oa > ob ? -1 : 1;
      return 0;
    }
    case NodeKind::Unary:
      if (a.unary_fn() != b.unary_fn()) return a.unary_fn() < b.unary_fn() ? -1 : 1;
      return compare(a.arg(), b.arg());
    case NodeKind::Binary: {
      if (a.binary_op() != b.binary_op()) return a.binary_op() < b.binary_op() ? -1 : 1;
      const int c = compare(a.lhs(), b.lhs());
      if (c != 0) return c;
      return compare(a.rhs(), b.rhs());
    }
  }
  return 0;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

// ---------------------------------------------------------------------------
// Folding builders

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number())
    return fold_numbers(a, b, std::plus<Rational>(), std::plus<double>());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (is_neg(b)) return a - b.arg();
  if (is_negative_number(b)) return a - negate_number(b);
  if (is_neg(a)) return b - a.arg();
  return Expr::binary(BinaryOp::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number())
    return fold_numbers(a, b, std::minus<Rational>(), std::minus<double>());
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a == b) return Expr();
  if (is_neg(b)) return a + b.arg();
  if (is_negative_number(b)) return a + negate_number(b);
  return Expr::binary(BinaryOp::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number())
    return fold_numbers(a, b, std::multiplies<Rational>(), std::multiplies<double>());
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_number() && a.number_value().exact && a.number_value().q == Rational(-1)) return -b;
  if (b.is_number() && b.number_value().exact && b.number_value().q == Rational(-1)) return -a;
  if (is_neg(a) && is_neg(b)) return a.arg() * b.arg();
  if (is_neg(a)) return -(a.arg() * b);
  if (is_neg(b)) return -(a * b.arg());
  if (b.is_number()) return Expr::binary(BinaryOp::Mul, b, a);
  return Expr::binary(BinaryOp::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw std::domain_error("division by literal zero");
  if (a.is_zero()) return Expr();
  if (b.is_one()) return a;
  if (a.is_number() && b.is_number())
    return fold_numbers(a, b, std::divides<Rational>(), std::divides<double>());
  if (a == b) return lit(1);
  if (is_neg(a) && is_neg(b)) return a.arg() / b.arg();
  if (is_neg(a)) return -(a.arg() / b);
  if (is_neg(b)) return -(a / b.arg());
  return Expr::binary(BinaryOp::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_number()) return negate_number(a);
  if (is_neg(a)) return a.arg();
  if (a.kind() == NodeKind::Binary && a.binary_op() == BinaryOp::Sub) return a.rhs() - a.lhs();
  return Expr::unary(UnaryFn::Neg, a);
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (exponent.is_zero()) return lit(1);
  if (exponent.is_one()) return base;
  if (base.is_one()) return lit(1);
  std::int64_t n = 0;
  const bool int_exp = exponent.is_integer(n);
  if (base.is_zero() && int_exp && n > 0) return Expr();
  Rational qb;
  if (int_exp && as_exact(base, qb) && n >= -64 && n <= 64 && !(qb.is_zero() && n < 0)) {
    try {
      return Expr::number(qb.pow(n));
    } catch (const RationalOverflow&) {
    }
  }
  std::int64_t m = 0;
  if (int_exp && base.kind() == NodeKind::Binary && base.binary_op() == BinaryOp::Pow &&
      base.rhs().is_integer(m)) {
    return pow(base.lhs(), lit(m * n));
  }
  return Expr::binary(BinaryOp::Pow, base, exponent);
}

Expr pow(const Expr& base, std::int64_t exponent) { return pow(base, lit(exponent)); }

Expr apply(UnaryFn fn, const Expr& arg) {
  if (fn == UnaryFn::Neg) return -arg;
  if (arg.is_zero()) {
    switch (fn) {
      case UnaryFn::Cos:
      case UnaryFn::Cosh:
      case UnaryFn::Exp: return lit(1);
      case UnaryFn::Ln: break;
      default: return Expr();
    }
  }
  if (arg.is_one()) {
    if (fn == UnaryFn::Ln) return Expr();
    if (fn == UnaryFn::Sqrt) return lit(1);
  }
  return Expr::unary(fn, arg);
}

Expr sin(const Expr& e) { return apply(UnaryFn::Sin, e); }
Expr cos(const Expr& e) { return apply(UnaryFn::Cos, e); }
Expr tan(const Expr& e) { return apply(UnaryFn::Tan, e); }
Expr sinh(const Expr& e) { return apply(UnaryFn::Sinh, e); }
Expr cosh(const Expr& e) { return apply(UnaryFn::Cosh, e); }
Expr tanh(const Expr& e) { return apply(UnaryFn::Tanh, e); }
Expr exp(const Expr& e) { return apply(UnaryFn::Exp, e); }
Expr ln(const Expr& e) { return apply(UnaryFn::Ln, e); }
Expr sqrt(const Expr& e) { return apply(UnaryFn::Sqrt, e); }

namespace {

Expr rebuild_binary(BinaryOp op, const Expr& a, const Expr& b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div: return a / b;
    case BinaryOp::Pow: return pow(a, b);
  }
  return Expr::binary(op, a, b);
}

template <class Leaf>
Expr map_tree(const Expr& e, const Leaf& leaf) {
  switch (e.kind()) {
    case NodeKind::Number:
    case NodeKind::Variable:
    case NodeKind::Symbol: return leaf(e);
    case NodeKind::Unary: {
      Expr a = map_tree(e.arg(), leaf);
      return apply(e.unary_fn(), a);
    }
    case NodeKind::Binary: {
      Expr a = map_tree(e.lhs(), leaf);
      Expr b = map_tree(e.rhs(), leaf);
      return rebuild_binary(e.binary_op(), a, b);
    }
  }
  return e;
}

void collect_variables(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case NodeKind::Variable: out.insert(e.name()); break;
    case NodeKind::Unary: collect_variables(e.arg(), out); break;
    case NodeKind::Binary:
      collect_variables(e.lhs(), out);
      collect_variables(e.rhs(), out);
      break;
    default: break;
  }
}

}  // namespace

Expr fold(const Expr& e) {
  return map_tree(e, [](const Expr& leaf) { return leaf; });
}

std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  collect_variables(e, out);
  return out;
}

bool depends_on(const Expr& e, std::string_view v) {
  switch (e.kind()) {
    case NodeKind::Number: return false;
    case NodeKind::Variable: return e.name() == v;
    case NodeKind::Symbol:
      return std::find(e.symbol_depends().begin(), e.symbol_depends().end(), v) != e.symbol_depends().end();
    case NodeKind::Unary: return depends_on(e.arg(), v);
    case NodeKind::Binary: return depends_on(e.lhs(), v) || depends_on(e.rhs(), v);
  }
  return false;
}

Expr substitute(const Expr& e, std::string_view v, const Expr& replacement) {
  if (!depends_on(e, v)) return e;
  switch (e.kind()) {
    case NodeKind::Variable: return e.name() == v ? replacement : e;
    case NodeKind::Unary: return Expr::unary(e.unary_fn(), substitute(e.arg(), v, replacement));
    case NodeKind::Binary: {
      Expr rhs = substitute(e.rhs(), v, replacement);
      if (e.binary_op() == BinaryOp::Div && rhs.is_zero()) throw std::domain_error("substitution makes a denominator zero");
      return Expr::binary(e.binary_op(), substitute(e.lhs(), v, replacement), rhs);
    }
    default: return e;
  }
}

Expr replace(const Expr& e, const Expr& target, const Expr& replacement) {
  if (e == target) return replacement;
  switch (e.kind()) {
    case NodeKind::Unary: return apply(e.unary_fn(), replace(e.arg(), target, replacement));
    case NodeKind::Binary:
      return rebuild_binary(e.binary_op(), replace(e.lhs(), target, replacement),
                            replace(e.rhs(), target, replacement));
    default: return e;
  }
}

}  // namespace clin
