#include "clin/parser.hpp"

#include <array>
#include <cctype>
#include <optional>

namespace clin {

ParseError::ParseError(std::string message, std::size_t offset, std::vector<std::string> expected)
    : std::runtime_error([&] {
        std::string m = message + " at offset " + std::to_string(offset);
        if (!expected.empty()) {
          m += " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) m += ", ";
            m += expected[i];
          }
          m += ')';
        }
        return m;
      }()),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

constexpr std::array<std::string_view, 5> kVariables = {"x", "y", "z", "u", "t"};

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    Token t;
    t.offset = pos_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      t.kind = Tok::Ident;
      t.text = src_.substr(start, pos_ - start);
      return t;
    }
    ++pos_;
    t.text = src_.substr(t.offset, 1);
    switch (c) {
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '/': t.kind = Tok::Slash; break;
      case '^': t.kind = Tok::Caret; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", t.offset,
                         {"number", "identifier", "'('", "'-'"});
    }
    return t;
  }

 private:
  Token lex_number() {
    Token t;
    t.offset = pos_;
    const std::size_t start = pos_;
    bool digits = false;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
      digits = true;
    }
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        digits = true;
      }
    }
    if (!digits) throw ParseError("malformed number", start, {"digit"});
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
        pos_ = p;
      }
    }
    t.kind = Tok::Number;
    t.text = src_.substr(start, pos_ - start);
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  Expr parse_all() {
    Expr e = expr();
    if (cur_.kind != Tok::End) {
      fail("unexpected token '" + std::string(cur_.text) + "'", {"operator", "end of input"});
    }
    return e;
  }

 private:
  void advance() {
    cur_ = peeked_ ? *peeked_ : lex_.next();
    peeked_.reset();
  }

  const Token& peek() {
    if (!peeked_) peeked_ = lex_.next();
    return *peeked_;
  }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) {
    throw ParseError(msg, cur_.offset, std::move(expected));
  }

  Expr expr() {
    Expr lhs = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const BinaryOp op = cur_.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      advance();
      lhs = Expr::binary(op, lhs, term());
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = factor();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const BinaryOp op = cur_.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      const std::size_t at = cur_.offset;
      advance();
      Expr rhs = factor();
      if (op == BinaryOp::Div && rhs.is_zero()) throw ParseError("division by literal zero", at, {});
      lhs = Expr::binary(op, lhs, rhs);
    }
    return lhs;
  }

  Expr factor() {
    if (cur_.kind == Tok::Minus) {
      advance();
      if (cur_.kind == Tok::Number && peek().kind != Tok::Caret) {
        Expr n = number();
        return -n;
      }
      return Expr::unary(UnaryFn::Neg, power());
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (cur_.kind == Tok::Caret) {
      advance();
      return Expr::binary(BinaryOp::Pow, base, factor());
    }
    return base;
  }

  Expr number() {
    const Token t = cur_;
    advance();
    if (auto q = Rational::from_decimal(t.text)) return Expr::number(*q);
    return Expr::number(std::stod(std::string(t.text)));
  }

  Expr atom() {
    switch (cur_.kind) {
      case Tok::Number: return number();
      case Tok::LParen: {
        advance();
        Expr e = expr();
        if (cur_.kind != Tok::RParen) fail("unbalanced parenthesis", {"')'"});
        advance();
        return e;
      }
      case Tok::Ident: {
        const Token id = cur_;
        advance();
        if (cur_.kind == Tok::LParen) {
          UnaryFn fn;
          if (!unary_from_name(id.text, fn)) {
            throw ParseError("unknown function name '" + std::string(id.text) + "'", id.offset,
                             {"sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "ln", "sqrt"});
          }
          advance();
          Expr arg = expr();
          if (cur_.kind != Tok::RParen) fail("unbalanced parenthesis", {"')'"});
          advance();
          return Expr::unary(fn, arg);
        }
        for (std::string_view v : kVariables) {
          if (v == id.text) return Expr::variable(std::string(v));
        }
        throw ParseError("unknown identifier '" + std::string(id.text) + "'", id.offset,
                         {"x", "y", "z", "u", "t", "function call"});
      }
      case Tok::End: fail("unexpected end of input", {"number", "identifier", "'('", "'-'"});
      default: fail("unexpected token '" + std::string(cur_.text) + "'", {"number", "identifier", "'('", "'-'"});
    }
  }

  Lexer lex_;
  Token cur_;
  std::optional<Token> peeked_;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace clin
