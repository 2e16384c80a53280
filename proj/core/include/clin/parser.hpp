#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "clin/expr.hpp"

namespace clin {

/// Syntax error in an expression. `offset` is the byte offset into the
/// parsed text; `expected` lists what would have been accepted there.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t offset, std::vector<std::string> expected);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Parses text in the expression grammar
///
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := ("-")? power
///   power  := atom ("^" factor)?
///   atom   := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"
///
/// Variables are x, y, z, u and t. A minus sign directly in front of a plain
/// number literal is folded into the literal.
Expr parse(std::string_view text);

}  // namespace clin
