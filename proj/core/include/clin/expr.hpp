#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "clin/rational.hpp"

namespace clin {

enum class NodeKind : std::uint8_t { Number, Variable, Symbol, Unary, Binary };

/// Unary nodes. `Neg` is unary minus; the rest are the named functions of
/// the expression grammar.
enum class UnaryFn : std::uint8_t { Neg, Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Ln, Sqrt };

enum class BinaryOp : std::uint8_t { Add, Sub, Mul, Div, Pow };

/// Name used in the grammar ("sin", ...); "-" for Neg.
std::string_view unary_name(UnaryFn fn);

/// Looks up a grammar function name. Neg has no name and is never returned.
bool unary_from_name(std::string_view name, UnaryFn& out);

/// A numeric literal: exact rational when the source is a decimal literal or
/// the result of exact folding, otherwise a double.
struct Number {
  bool exact = true;
  Rational q;
  double f = 0.0;

  double value() const { return exact ? q.to_double() : f; }
  bool is_zero() const { return exact ? q.is_zero() : f == 0.0; }
  bool is_one() const { return exact ? q.is_one() : f == 1.0; }
  bool is_negative() const { return exact ? q.is_negative() : f < 0.0; }
};

class Node;

/// Immutable symbolic expression over named real variables. Copies share
/// structure; equality is structural.
///
/// Besides plain variables there are *symbols*: opaque functions of a fixed
/// list of variables together with a multi-index of partial derivative
/// orders (e.g. a1 differentiated once in x and twice in z). They let the
/// condition formulas be built for generic coefficients. Symbols cannot be
/// evaluated and are not part of the parser grammar.
class Expr {
 public:
  /// The literal 0.
  Expr();

  static Expr number(const Rational& q);
  static Expr number(double f);
  static Expr integer(std::int64_t n) { return number(Rational(n)); }
  static Expr variable(std::string name);
  static Expr symbol(std::string name, std::vector<std::string> depends_on,
                     std::vector<int> orders = {});

  /// Raw node constructors (no folding). Throws std::domain_error for a
  /// division whose denominator is the literal 0.
  static Expr unary(UnaryFn fn, Expr arg);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

  NodeKind kind() const;
  const Number& number_value() const;
  const std::string& name() const;  // Variable and Symbol
  UnaryFn unary_fn() const;
  BinaryOp binary_op() const;
  const Expr& arg() const;  // Unary
  const Expr& lhs() const;  // Binary
  const Expr& rhs() const;  // Binary
  const std::vector<std::string>& symbol_depends() const;
  const std::vector<int>& symbol_orders() const;

  bool is_number() const { return kind() == NodeKind::Number; }
  bool is_zero() const;
  bool is_one() const;
  /// Exact integer literal; stores it in `out`.
  bool is_integer(std::int64_t& out) const;

  std::size_t hash() const;
  /// Number of nodes counting shared subtrees once per reference.
  std::size_t size() const;

  /// Identity of the shared node; stable for the lifetime of the tree.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Deterministic structural total order (numbers < variables < symbols <
/// unary < binary, then by content).
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Folding builders: constant-fold exact numbers and apply 0/1 identities.
// These are what library code uses; the parser uses the raw constructors.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr pow(const Expr& base, std::int64_t exponent);
Expr apply(UnaryFn fn, const Expr& arg);

Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr tan(const Expr& e);
Expr sinh(const Expr& e);
Expr cosh(const Expr& e);
Expr tanh(const Expr& e);
Expr exp(const Expr& e);
Expr ln(const Expr& e);
Expr sqrt(const Expr& e);

inline Expr lit(std::int64_t n) { return Expr::integer(n); }
inline Expr var(std::string name) { return Expr::variable(std::move(name)); }

/// Rebuilds `e` bottom-up through the folding builders.
Expr fold(const Expr& e);

/// Names of variables (not symbols) occurring in `e`.
std::set<std::string> free_variables(const Expr& e);

/// True if `e` mentions variable `v` directly or through a symbol that
/// depends on it.
bool depends_on(const Expr& e, std::string_view v);

/// Replaces every occurrence of variable `v` by `replacement`.
Expr substitute(const Expr& e, std::string_view v, const Expr& replacement);

/// Replaces every subtree structurally equal to `target` by `replacement`.
Expr replace(const Expr& e, const Expr& target, const Expr& replacement);

/// Exact partial derivative with respect to variable `v`.
Expr differentiate(const Expr& e, std::string_view v);

/// Repeated partial derivative; `vars` is applied left to right.
Expr differentiate(const Expr& e, std::initializer_list<std::string_view> vars);

/// Text in the expression grammar. Parsing the result of formatting a parsed
/// expression gives back a structurally identical tree.
std::string format(const Expr& e);

}  // namespace clin
