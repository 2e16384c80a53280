#include "clin/simplify.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace clin {

namespace {

// Raised when the normal form would get too large or leave exact arithmetic;
// simplify() then falls back to the folded tree.
struct TooComplex {};

constexpr std::size_t kMaxTerms = 4000;
constexpr std::size_t kMaxDivisionSteps = 20000;
constexpr std::int64_t kMaxExpandPower = 16;

// Sparse monomial: atoms in ExprLess order with nonzero (possibly negative)
// integer exponents.
using Monomial = std::vector<std::pair<Expr, std::int64_t>>;

// Lexicographic order where the ExprLess-smallest atom is most significant.
// Total on exponent vectors, and a monomial order on nonnegative exponents.
int lex_compare(const Monomial& a, const Monomial& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = 1;
    else if (j == b.size()) c = -1;
    else c = compare(a[i].first, b[j].first);
    std::int64_t ea = 0, eb = 0;
    if (c <= 0) ea = a[i].second;
    if (c >= 0) eb = b[j].second;
    if (ea != eb) return ea < eb ? -1 : 1;
    if (c <= 0) ++i;
    if (c >= 0) ++j;
  }
  return 0;
}

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return lex_compare(a, b) < 0; }
};

using Poly = std::map<Monomial, Rational, MonoLess>;

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = 1;
    else if (j == b.size()) c = -1;
    else c = compare(a[i].first, b[j].first);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      const std::int64_t e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

Monomial mono_inverse(Monomial m) {
  for (auto& [atom, e] : m) e = -e;
  return m;
}

// a divides b when every exponent of a is <= the matching exponent of b
// (nonnegative exponent vectors).
bool mono_divides(const Monomial& a, const Monomial& b) {
  std::size_t j = 0;
  for (const auto& [atom, e] : a) {
    while (j < b.size() && compare(b[j].first, atom) < 0) ++j;
    if (j == b.size() || !(b[j].first == atom) || b[j].second < e) return false;
  }
  return true;
}

void check_size(const Poly& p) {
  if (p.size() > kMaxTerms) throw TooComplex{};
}

void add_term(Poly& p, const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

Poly poly_const(const Rational& c) {
  Poly p;
  if (!c.is_zero()) p.emplace(Monomial{}, c);
  return p;
}

Poly poly_atom(const Expr& atom) {
  Poly p;
  p.emplace(Monomial{{atom, 1}}, Rational(1));
  return p;
}

Poly poly_add(const Poly& a, const Poly& b, const Rational& scale_b = Rational(1)) {
  Poly out = a;
  for (const auto& [m, c] : b) add_term(out, m, c * scale_b);
  check_size(out);
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.size() * b.size() > kMaxTerms * 64) throw TooComplex{};
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) add_term(out, mono_mul(ma, mb), ca * cb);
  check_size(out);
  return out;
}

Poly poly_mul_term(const Poly& a, const Monomial& m, const Rational& c) {
  Poly out;
  for (const auto& [ma, ca] : a) out.emplace(mono_mul(ma, m), ca * c);
  return out;
}

Poly poly_pow(const Poly& p, std::int64_t n) {
  Poly result = poly_const(Rational(1));
  Poly base = p;
  while (n > 0) {
    if (n & 1) result = poly_mul(result, base);
    n >>= 1;
    if (n > 0) base = poly_mul(base, base);
  }
  return result;
}

// Per-atom minimum exponent over all terms, atoms missing from a term
// counting as exponent 0.
Monomial min_exponents(const Poly& p) {
  std::map<Expr, std::int64_t, ExprLess> mins;
  bool first = true;
  for (const auto& [m, c] : p) {
    if (first) {
      for (const auto& [atom, e] : m) mins[atom] = e;
      first = false;
      continue;
    }
    for (auto it = mins.begin(); it != mins.end();) {
      auto f = std::find_if(m.begin(), m.end(), [&](const auto& t) { return t.first == it->first; });
      const std::int64_t e = f == m.end() ? 0 : f->second;
      it->second = std::min(it->second, e);
      if (it->second == 0) it = mins.erase(it);
      else ++it;
    }
    for (const auto& [atom, e] : m) {
      if (e < 0 && !mins.count(atom)) mins[atom] = e;
    }
  }
  Monomial out;
  for (const auto& [atom, e] : mins)
    if (e != 0) out.emplace_back(atom, e);
  return out;
}

// Exact quotient n / d for a polynomial d with nonnegative exponents and
// no monomial content, or nullopt when d does not divide n.
std::optional<Poly> exact_divide(const Poly& n, const Poly& d) {
  if (d.empty()) return std::nullopt;
  Monomial shift;
  for (const auto& [atom, e] : min_exponents(n))
    if (e < 0) shift.emplace_back(atom, -e);
  Poly r = shift.empty() ? n : poly_mul_term(n, shift, Rational(1));
  const auto& [lead_m, lead_c] = *d.rbegin();
  Poly q;
  std::size_t steps = 0;
  while (!r.empty()) {
    if (++steps > kMaxDivisionSteps) return std::nullopt;
    const auto [tm, tc] = *r.rbegin();
    if (!mono_divides(lead_m, tm)) return std::nullopt;
    const Monomial qm = mono_mul(tm, mono_inverse(lead_m));
    const Rational qc = tc / lead_c;
    add_term(q, qm, qc);
    r = poly_add(r, poly_mul_term(d, qm, qc), Rational(-1));
  }
  return shift.empty() ? q : poly_mul_term(q, mono_inverse(shift), Rational(1));
}

struct Factor {
  Poly poly;
  std::int64_t exp;
};

bool same_poly(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return false;
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end(); ++ia, ++ib) {
    if (lex_compare(ia->first, ib->first) != 0 || ia->second != ib->second) return false;
  }
  return true;
}

// numerator / prod(factor.poly ^ factor.exp). Factors have >= 2 terms,
// nonnegative exponents, no monomial content and leading coefficient 1.
struct RatForm {
  Poly num;
  std::vector<Factor> den;
};

// Splits p = c * m * q with q normalized as a denominator factor. q is empty
// when p is a single term.
void split_content(const Poly& p, Rational& c, Monomial& m, Poly& q) {
  m = min_exponents(p);
  const Monomial inv = mono_inverse(m);
  q.clear();
  for (const auto& [pm, pc] : p) q.emplace(mono_mul(pm, inv), pc);
  c = q.rbegin()->second;
  if (q.size() == 1) {
    q.clear();
    return;
  }
  const Rational ic = c.reciprocal();
  for (auto& [qm, qc] : q) qc *= ic;
}

void cancel(RatForm& r) {
  if (r.num.empty()) {
    r.den.clear();
    return;
  }
  for (auto& f : r.den) {
    while (f.exp > 0) {
      auto q = exact_divide(r.num, f.poly);
      if (!q) break;
      r.num = std::move(*q);
      --f.exp;
    }
  }
  std::erase_if(r.den, [](const Factor& f) { return f.exp == 0; });
}

void add_factor(std::vector<Factor>& den, const Poly& p, std::int64_t e) {
  for (auto& f : den) {
    if (same_poly(f.poly, p)) {
      f.exp += e;
      return;
    }
  }
  den.push_back({p, e});
}

RatForm rat_mul(const RatForm& a, const RatForm& b) {
  RatForm out;
  out.num = poly_mul(a.num, b.num);
  out.den = a.den;
  for (const auto& f : b.den) add_factor(out.den, f.poly, f.exp);
  cancel(out);
  return out;
}

RatForm rat_inverse(const RatForm& r) {
  if (r.num.empty()) throw TooComplex{};
  Rational c;
  Monomial m;
  Poly q;
  split_content(r.num, c, m, q);
  RatForm out;
  out.num = poly_const(Rational(1));
  for (const auto& f : r.den) out.num = poly_mul(out.num, poly_pow(f.poly, f.exp));
  out.num = poly_mul_term(out.num, mono_inverse(m), c.reciprocal());
  if (!q.empty()) out.den.push_back({q, 1});
  cancel(out);
  return out;
}

RatForm rat_add(const RatForm& a, const RatForm& b, const Rational& scale_b = Rational(1)) {
  if (b.num.empty()) return a;
  if (a.num.empty()) {
    RatForm out = b;
    out.num = poly_mul_term(b.num, Monomial{}, scale_b);
    return out;
  }
  // Common denominator: per factor, the larger exponent.
  std::vector<Factor> lcd = a.den;
  for (const auto& f : b.den) {
    bool found = false;
    for (auto& g : lcd) {
      if (same_poly(g.poly, f.poly)) {
        g.exp = std::max(g.exp, f.exp);
        found = true;
      }
    }
    if (!found) lcd.push_back(f);
  }
  auto lift = [&](const RatForm& r) {
    Poly n = r.num;
    for (const auto& g : lcd) {
      std::int64_t have = 0;
      for (const auto& f : r.den)
        if (same_poly(f.poly, g.poly)) have = f.exp;
      if (g.exp > have) n = poly_mul(n, poly_pow(g.poly, g.exp - have));
    }
    return n;
  };
  RatForm out;
  out.num = poly_add(lift(a), lift(b), scale_b);
  out.den = std::move(lcd);
  cancel(out);
  return out;
}

RatForm rat_pow(const RatForm& r, std::int64_t n) {
  if (n == 0) return RatForm{poly_const(Rational(1)), {}};
  if (n < 0) return rat_pow(rat_inverse(r), -n);
  RatForm out;
  out.num = poly_pow(r.num, n);
  for (const auto& f : r.den) out.den.push_back({f.poly, f.exp * n});
  return out;
}

RatForm rat_atom(const Expr& atom) { return RatForm{poly_atom(atom), {}}; }

class Normalizer {
 public:
  RatForm convert(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    RatForm r = convert_node(e);
    memo_.emplace(e.id(), r);
    return r;
  }

 private:
  // 1/e, inverting factors before expanding so that denominators such as
  // x^2*(y^2 + z^2)^2 stay factored.
  RatForm convert_inverse(const Expr& e) {
    if (e.kind() == NodeKind::Binary) {
      switch (e.binary_op()) {
        case BinaryOp::Mul: return rat_mul(convert_inverse(e.lhs()), convert_inverse(e.rhs()));
        case BinaryOp::Div: return rat_mul(convert(e.rhs()), convert_inverse(e.lhs()));
        case BinaryOp::Pow: {
          const Expr exponent = simplify(e.rhs());
          std::int64_t n = 0;
          if (exponent.is_integer(n) && n >= -kMaxExpandPower && n <= kMaxExpandPower) {
            return rat_pow(convert_inverse(e.lhs()), n);
          }
          break;
        }
        default: break;
      }
    }
    if (e.kind() == NodeKind::Unary && e.unary_fn() == UnaryFn::Neg) {
      RatForm r = convert_inverse(e.arg());
      for (auto& [m, c] : r.num) c = -c;
      return r;
    }
    return rat_inverse(convert(e));
  }

  RatForm convert_node(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::Number:
        if (e.number_value().exact) return RatForm{poly_const(e.number_value().q), {}};
        return rat_atom(e);
      case NodeKind::Variable:
      case NodeKind::Symbol: return rat_atom(e);
      case NodeKind::Unary: {
        if (e.unary_fn() == UnaryFn::Neg) {
          RatForm r = convert(e.arg());
          for (auto& [m, c] : r.num) c = -c;
          return r;
        }
        const Expr arg = simplify(e.arg());
        const Expr call = apply(e.unary_fn(), arg);
        if (call.kind() != NodeKind::Unary) return convert(call);
        return rat_atom(call);
      }
      case NodeKind::Binary: {
        switch (e.binary_op()) {
          case BinaryOp::Add: return rat_add(convert(e.lhs()), convert(e.rhs()));
          case BinaryOp::Sub: return rat_add(convert(e.lhs()), convert(e.rhs()), Rational(-1));
          case BinaryOp::Mul: return rat_mul(convert(e.lhs()), convert(e.rhs()));
          case BinaryOp::Div: return rat_mul(convert(e.lhs()), convert_inverse(e.rhs()));
          case BinaryOp::Pow: {
            const Expr exponent = simplify(e.rhs());
            std::int64_t n = 0;
            if (exponent.is_integer(n) && n >= -kMaxExpandPower && n <= kMaxExpandPower) {
              return rat_pow(convert(e.lhs()), n);
            }
            return rat_atom(pow(simplify(e.lhs()), exponent));
          }
        }
      }
    }
    return rat_atom(e);
  }

  std::unordered_map<const void*, RatForm> memo_;
};

// Left-associated product `lead * atom1^e1 * atom2^e2 ...`; `lead` may be
// empty.
Expr mono_to_expr(const Monomial& m, std::optional<Expr> lead = std::nullopt) {
  bool have = lead.has_value();
  Expr out = have ? *lead : lit(1);
  for (const auto& [atom, e] : m) {
    Expr f = e == 1 ? atom : Expr::binary(BinaryOp::Pow, atom, Expr::integer(e));
    out = have ? Expr::binary(BinaryOp::Mul, out, f) : f;
    have = true;
  }
  return out;
}

Expr term_to_expr(const Rational& c, const Monomial& m) {
  if (m.empty()) return Expr::number(c);
  if (c.is_one()) return mono_to_expr(m);
  if (c == Rational(-1)) return Expr::unary(UnaryFn::Neg, mono_to_expr(m));
  if (c.is_decimal()) return mono_to_expr(m, Expr::number(c));
  const Expr top = c.num() == 1 ? mono_to_expr(m) : mono_to_expr(m, Expr::integer(c.num()));
  return Expr::binary(BinaryOp::Div, top, Expr::integer(c.den()));
}

Expr poly_to_expr(const Poly& p) {
  if (p.empty()) return Expr();
  Expr out;
  bool first = true;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [m, c] = *it;
    if (first) {
      out = term_to_expr(c, m);
      first = false;
    } else if (c.is_negative()) {
      out = Expr::binary(BinaryOp::Sub, out, term_to_expr(-c, m));
    } else {
      out = Expr::binary(BinaryOp::Add, out, term_to_expr(c, m));
    }
  }
  return out;
}

Expr rat_to_expr(const RatForm& r) {
  if (r.num.empty()) return Expr();
  Monomial neg;
  for (const auto& [atom, e] : min_exponents(r.num))
    if (e < 0) neg.emplace_back(atom, -e);
  const Poly num = neg.empty() ? r.num : poly_mul_term(r.num, neg, Rational(1));
  Expr top = poly_to_expr(num);
  if (neg.empty() && r.den.empty()) return top;
  Expr bottom;
  bool first = true;
  auto push = [&](const Expr& f) {
    bottom = first ? f : Expr::binary(BinaryOp::Mul, bottom, f);
    first = false;
  };
  if (!neg.empty()) push(mono_to_expr(neg));
  for (const auto& f : r.den) {
    const Expr base = poly_to_expr(f.poly);
    push(f.exp == 1 ? base : Expr::binary(BinaryOp::Pow, base, Expr::integer(f.exp)));
  }
  return Expr::binary(BinaryOp::Div, top, bottom);
}

}  // namespace

Expr simplify(const Expr& e) {
  Expr light;
  try {
    light = fold(e);
  } catch (const std::domain_error&) {
    return e;
  }
  if (light.kind() == NodeKind::Number || light.kind() == NodeKind::Variable) return light;
  try {
    Normalizer n;
    Expr normal = rat_to_expr(n.convert(light));
    if (normal.is_number() || normal.size() <= light.size()) return normal;
  } catch (const TooComplex&) {
  } catch (const RationalOverflow&) {
  } catch (const std::domain_error&) {
  }
  return light;
}

}  // namespace clin
