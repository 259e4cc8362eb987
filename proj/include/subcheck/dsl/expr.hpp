#pragma once

// Abstract syntax tree for real-valued coordinate expressions.

#include "subcheck/jets/jet2.hpp"

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace subcheck::dsl {

using jets::Function;

enum class NodeKind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind = NodeKind::Number;
  double number = 0.0;  // literal value, or the exponent for Pow
  std::string name;     // variable name
  Function function = Function::Sin;
  Expr lhs;  // operand for Negate/Pow/Call
  Expr rhs;
};

Expr make_number(double v);
Expr make_variable(std::string name);
Expr make_negate(Expr operand);
Expr make_binary(NodeKind kind, Expr lhs, Expr rhs);
Expr make_pow(Expr base, double exponent);
Expr make_call(Function f, Expr arg);

std::string_view function_name(Function f);

std::set<std::string> free_vars(const Expr& e);

/// Fully parenthesized rendering that parses back to the same tree.
std::string print(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

bool is_constant(const Expr& e);

}  // namespace subcheck::dsl
