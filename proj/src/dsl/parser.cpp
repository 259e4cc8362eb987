#include "subcheck/dsl/parser.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <system_error>

namespace subcheck::dsl {

ParseError::ParseError(std::size_t offset, std::string message)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + message),
      offset_(offset),
      message_(std::move(message)) {}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::size_t offset = 0;
  std::string_view text;
  double number = 0.0;
};

bool is_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::optional<Function> lookup_function(std::string_view name) {
  static constexpr std::array<Function, 5> all{Function::Sin, Function::Cos, Function::Tan, Function::Exp,
                                               Function::Sqrt};
  for (auto f : all)
    if (function_name(f) == name) return f;
  return std::nullopt;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
    Token t;
    t.offset = pos_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (is_digit(c)) return number(t);
    if (is_letter(c)) {
      const auto start = pos_;
      while (pos_ < src_.size() && (is_letter(src_[pos_]) || is_digit(src_[pos_]) || src_[pos_] == '_')) ++pos_;
      t.kind = Tok::Ident;
      t.text = src_.substr(start, pos_ - start);
      return t;
    }
    ++pos_;
    switch (c) {
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '/': t.kind = Tok::Slash; break;
      case '^': t.kind = Tok::Caret; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      default: throw ParseError(t.offset, "unexpected character");
    }
    t.text = src_.substr(t.offset, 1);
    return t;
  }

 private:
  Token number(Token t) {
    const auto start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' && is_digit(src_[pos_ + 1])) {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
      if (q < src_.size() && is_digit(src_[q])) {
        pos_ = q;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
    }
    t.kind = Tok::Number;
    t.text = src_.substr(start, pos_ - start);
    auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
    if (res.ec != std::errc{} || !std::isfinite(t.number)) throw ParseError(t.offset, "number out of range");
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  Expr parse_all() {
    Expr e = expr();
    if (cur_.kind != Tok::End) throw ParseError(cur_.offset, "unexpected token '" + std::string(cur_.text) + "'");
    return e;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth_ > kMaxNesting) throw ParseError(p.cur_.offset, "expression nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
    Parser& p;
  };

  void advance() { cur_ = lexer_.next(); }

  Expr expr() {
    DepthGuard guard(*this);
    Expr lhs = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const auto kind = cur_.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub;
      advance();
      lhs = make_binary(kind, lhs, term());
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = factor();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const auto kind = cur_.kind == Tok::Star ? NodeKind::Mul : NodeKind::Div;
      advance();
      lhs = make_binary(kind, lhs, factor());
    }
    return lhs;
  }

  Expr factor() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return make_negate(power());
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (cur_.kind == Tok::Caret) {
      advance();
      if (cur_.kind != Tok::Number) throw ParseError(cur_.offset, "exponent must be a number literal");
      const double exponent = cur_.number;
      advance();
      return make_pow(base, exponent);
    }
    return base;
  }

  Expr atom() {
    switch (cur_.kind) {
      case Tok::Number: {
        const double v = cur_.number;
        advance();
        return make_number(v);
      }
      case Tok::Ident: {
        const Token ident = cur_;
        advance();
        const auto fn = lookup_function(ident.text);
        if (cur_.kind == Tok::LParen) {
          if (!fn) throw ParseError(ident.offset, "unknown function '" + std::string(ident.text) + "'");
          advance();
          Expr arg = expr();
          expect_rparen();
          return make_call(*fn, arg);
        }
        if (fn) throw ParseError(ident.offset, "function '" + std::string(ident.text) + "' requires an argument");
        return make_variable(std::string(ident.text));
      }
      case Tok::LParen: {
        advance();
        Expr inner = expr();
        expect_rparen();
        return inner;
      }
      case Tok::End: throw ParseError(cur_.offset, "unexpected end of input");
      default: throw ParseError(cur_.offset, "expected operand, found '" + std::string(cur_.text) + "'");
    }
  }

  void expect_rparen() {
    if (cur_.kind != Tok::RParen) throw ParseError(cur_.offset, "expected ')'");
    advance();
  }

  Lexer lexer_;
  Token cur_;
  std::size_t depth_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace subcheck::dsl
