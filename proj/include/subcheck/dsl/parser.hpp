#pragma once

#include "subcheck/dsl/expr.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace subcheck::dsl {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string message);

  std::size_t offset() const { return offset_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t offset_;
  std::string message_;
};

/// Grammar (whitespace insignificant, binary operators left-associative):
///
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := ("-")? power
///   power  := atom ("^" number)?
///   atom   := number | ident | ident "(" expr ")" | "(" expr ")"
///
/// "^" binds tighter than unary minus, so "-x^2" is -(x^2). Function names
/// (sin cos tan exp sqrt) are reserved and must be followed by "(".
/// There are no named constants and no implicit multiplication.
Expr parse(std::string_view text);

/// Nesting limit that keeps recursion bounded on hostile input.
inline constexpr std::size_t kMaxNesting = 200;

}  // namespace subcheck::dsl
