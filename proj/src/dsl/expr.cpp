#include "subcheck/dsl/expr.hpp"

#include <charconv>
#include <system_error>

namespace subcheck::dsl {

namespace {

void collect(const Expr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->kind == NodeKind::Variable) out.insert(e->name);
  collect(e->lhs, out);
  collect(e->rhs, out);
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

char op_symbol(NodeKind k) {
  switch (k) {
    case NodeKind::Add: return '+';
    case NodeKind::Sub: return '-';
    case NodeKind::Mul: return '*';
    case NodeKind::Div: return '/';
    default: return '?';
  }
}

}  // namespace

Expr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Number;
  n->number = v;
  return n;
}

Expr make_variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Variable;
  n->name = std::move(name);
  return n;
}

Expr make_negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Negate;
  n->lhs = std::move(operand);
  return n;
}

Expr make_binary(NodeKind kind, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

Expr make_pow(Expr base, double exponent) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Pow;
  n->lhs = std::move(base);
  n->number = exponent;
  return n;
}

Expr make_call(Function f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Call;
  n->function = f;
  n->lhs = std::move(arg);
  return n;
}

std::string_view function_name(Function f) {
  switch (f) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Tan: return "tan";
    case Function::Exp: return "exp";
    case Function::Sqrt: return "sqrt";
  }
  return "?";
}

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> out;
  collect(e, out);
  return out;
}

std::string print(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Number: return format_number(e->number);
    case NodeKind::Variable: return e->name;
    case NodeKind::Negate: return "(-" + print(e->lhs) + ")";
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
      return "(" + print(e->lhs) + " " + op_symbol(e->kind) + " " + print(e->rhs) + ")";
    case NodeKind::Pow: return "(" + print(e->lhs) + "^" + format_number(e->number) + ")";
    case NodeKind::Call: return std::string(function_name(e->function)) + "(" + print(e->lhs) + ")";
  }
  return {};
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Number: return a->number == b->number;
    case NodeKind::Variable: return a->name == b->name;
    case NodeKind::Pow: return a->number == b->number && structurally_equal(a->lhs, b->lhs);
    case NodeKind::Call: return a->function == b->function && structurally_equal(a->lhs, b->lhs);
    default: return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
  }
}

bool is_constant(const Expr& e) { return free_vars(e).empty(); }

}  // namespace subcheck::dsl
