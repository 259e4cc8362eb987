#include "doctest.h"

#include "subcheck/dsl/eval.hpp"
#include "subcheck/dsl/expr.hpp"
#include "subcheck/dsl/parser.hpp"

#include <random>
#include <string>

using namespace subcheck;
using namespace subcheck::dsl;

namespace {

std::size_t error_offset(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  FAIL("expected a parse error for '" << text << "'");
  return 0;
}

Environment<jets::Jet2> seeded(const std::vector<std::pair<std::string, double>>& vars) {
  std::vector<double> values;
  for (const auto& v : vars) values.push_back(v.second);
  const auto seeds = jets::seed_point(values);
  Environment<jets::Jet2> env;
  for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i].first] = seeds[i];
  return env;
}

}  // namespace

TEST_CASE("parse builds the expected trees") {
  const Expr e = parse("sin(x1+x3)");
  REQUIRE(e->kind == NodeKind::Call);
  CHECK(e->function == Function::Sin);
  REQUIRE(e->lhs->kind == NodeKind::Add);
  CHECK(e->lhs->lhs->kind == NodeKind::Variable);
  CHECK(e->lhs->lhs->name == "x1");
  CHECK(e->lhs->rhs->name == "x3");

  const Expr one = parse("1");
  CHECK(one->kind == NodeKind::Number);
  CHECK(one->number == 1.0);

  // unary minus binds looser than ^
  const Expr m = parse("-x^2");
  REQUIRE(m->kind == NodeKind::Negate);
  CHECK(m->lhs->kind == NodeKind::Pow);
  CHECK(eval_value(m, {{"x", 3.0}}) == -9.0);

  // left associativity
  CHECK(eval_value(parse("8 - 3 - 2"), {}) == 3.0);
  CHECK(eval_value(parse("8 / 4 / 2"), {}) == 1.0);
  CHECK(eval_value(parse("2.5e1 + 1E-1"), {}) == 25.1);
  CHECK(eval_value(parse("  x_1a *\t2 "), {{"x_1a", 4.0}}) == 8.0);
}

TEST_CASE("parse errors carry the offset") {
  CHECK(error_offset("x1 + * x2") == 5);
  CHECK(error_offset("1 + * 2") == 4);
  CHECK(error_offset("") == 0);
  CHECK(error_offset("2x") == 1);         // no implicit multiplication
  CHECK(error_offset("foo(x)") == 0);     // unknown function
  CHECK(error_offset("sin x") == 0);      // function name must be called
  CHECK(error_offset("x^y") == 2);        // exponent must be a literal
  CHECK(error_offset("(x + 1") == 6);
  CHECK(error_offset("x + 1)") == 5);
  CHECK(error_offset("x $ 1") == 2);
  CHECK(free_vars(parse("pi")) == std::set<std::string>{"pi"});  // no built-in constants
  for (const std::string bad : {"1 + * 2", "x1 + * x2", "(", "sin(", "2x"}) {
    try {
      parse(bad);
    } catch (const ParseError& e) {
      CHECK(e.offset() <= bad.size());
    }
  }
}

TEST_CASE("evaluation") {
  const Expr g11 = parse("1 + sin(x1 + x3)^2");
  const auto j = eval_jet(g11, seeded({{"x1", 0.0}, {"x3", 0.0}}));
  CHECK(j.value() == 1.0);

  const auto env = seeded({{"x1", 0.7}});
  const auto id = eval_jet(parse("x1"), env);
  CHECK(id.value() == env.at("x1").value());
  CHECK(id.grad() == env.at("x1").grad());
  CHECK(id.hess() == env.at("x1").hess());

  CHECK_THROWS_AS(eval_jet(parse("sqrt(x1)"), seeded({{"x1", -1.0}})), jets::DomainError);
  CHECK_THROWS_AS(eval_value(parse("sqrt(x1)"), {{"x1", -1.0}}), jets::DomainError);
  CHECK_THROWS_AS(eval_jet(parse("1 / (x1 - x1)"), env), jets::DivisionByZero);
  CHECK_THROWS_AS(eval_jet(parse("x2"), env), UnboundVariable);

  // constants have exactly zero derivatives
  const auto c = eval_jet(parse("sin(2) * exp(0.5) / sqrt(3) - 4^2"), seeded({{"x1", 0.1}, {"x2", 0.2}}));
  CHECK(c.grad().isZero(0));
  CHECK(c.hess().isZero(0));
}

TEST_CASE("free variables") {
  CHECK(free_vars(parse("sin(x1+x3)")) == std::set<std::string>{"x1", "x3"});
  CHECK(free_vars(parse("2")).empty());
  CHECK(free_vars(parse("x1*x1")) == std::set<std::string>{"x1"});
  CHECK(is_constant(parse("2 * cos(1)")));
  CHECK_FALSE(is_constant(parse("2 * cos(y)")));
}

TEST_CASE("print parses back to the same tree") {
  const std::vector<std::string> corpus = {
      "sin(x1+x3)", "1", "-x^2", "(-x)^2", "1 + sin(x1 + x3)^2", "-(-(-x))", "a - (b - c)", "a / b / c",
      "exp(-0.5 * r^2) / sqrt(2)", "tan(x) * cos(y) - -z", "1e-300 + 12345.678e10", "x^0.5 + y^3",
      "sqrt(x1^2 + x2^2 + 1)", "(x1 + y2) / sqrt(2)", "0.1 + 0.2", "-sin(x1 + x3)^2"};
  for (const auto& s : corpus) {
    const Expr a = parse(s);
    const Expr b = parse(print(a));
    INFO(s << " -> " << print(a));
    CHECK(structurally_equal(a, b));
    CHECK(print(b) == print(a));
  }
}

TEST_CASE("parser never fails other than with ParseError") {
  std::mt19937_64 rng(7);
  const std::string alphabet = "x1y2 +-*/^().e0123456789sincoexpqrta\t\n$,_";
  std::uniform_int_distribution<int> len(0, 24);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  int parsed = 0, rejected = 0;
  for (int n = 0; n < 20000; ++n) {
    std::string s;
    const int L = len(rng);
    for (int i = 0; i < L; ++i) s += n % 4 == 0 ? static_cast<char>(byte(rng)) : alphabet[ch(rng)];
    try {
      const Expr e = parse(s);
      CHECK(structurally_equal(e, parse(print(e))));
      ++parsed;
    } catch (const ParseError& e) {
      CHECK(e.offset() <= s.size());
      ++rejected;
    }
  }
  // deep nesting is refused rather than recursing without bound
  CHECK_THROWS_AS(parse(std::string(100000, '(') + "x" + std::string(100000, ')')), ParseError);
  CHECK_THROWS_AS(parse(std::string(100000, '-') + "x"), ParseError);
  CHECK(parsed > 0);
  CHECK(rejected > 0);
}
