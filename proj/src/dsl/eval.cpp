#include "subcheck/dsl/eval.hpp"

namespace subcheck::dsl {

namespace {

template <typename T, typename MakeConstant, typename Ops>
T evaluate(const Expr& e, const Environment<T>& env, const MakeConstant& constant, const Ops& ops) {
  switch (e->kind) {
    case NodeKind::Number: return constant(e->number);
    case NodeKind::Variable: {
      auto it = env.find(e->name);
      if (it == env.end()) throw UnboundVariable(e->name);
      return it->second;
    }
    case NodeKind::Negate: return -evaluate(e->lhs, env, constant, ops);
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      T lhs = evaluate(e->lhs, env, constant, ops);
      T rhs = evaluate(e->rhs, env, constant, ops);
      return ops.binary(e->kind, lhs, rhs);
    }
    case NodeKind::Pow: return ops.pow(evaluate(e->lhs, env, constant, ops), e->number);
    case NodeKind::Call: return ops.call(e->function, evaluate(e->lhs, env, constant, ops));
  }
  return constant(0.0);
}

struct JetOps {
  jets::Jet2 binary(NodeKind k, const jets::Jet2& a, const jets::Jet2& b) const {
    switch (k) {
      case NodeKind::Add: return jets::jet_arith(a, b, jets::ArithOp::Add);
      case NodeKind::Sub: return jets::jet_arith(a, b, jets::ArithOp::Sub);
      case NodeKind::Mul: return jets::jet_arith(a, b, jets::ArithOp::Mul);
      default: return jets::jet_arith(a, b, jets::ArithOp::Div);
    }
  }
  jets::Jet2 pow(const jets::Jet2& a, double e) const { return jets::pow(a, e); }
  jets::Jet2 call(Function f, const jets::Jet2& a) const { return jets::jet_func(a, f); }
};

struct ValueOps {
  double binary(NodeKind k, double a, double b) const {
    switch (k) {
      case NodeKind::Add: return a + b;
      case NodeKind::Sub: return a - b;
      case NodeKind::Mul: return a * b;
      default:
        if (std::abs(b) <= jets::kDegenerateDivisor) throw jets::DivisionByZero("division by zero");
        return a / b;
    }
  }
  double pow(double a, double e) const { return jets::pow_value(a, e); }
  double call(Function f, double a) const { return jets::apply_value(f, a); }
};

}  // namespace

jets::Jet2 eval_jet(const Expr& e, const Environment<jets::Jet2>& env) {
  const std::size_t dim = env.empty() ? 0 : env.begin()->second.dim();
  return evaluate(e, env, [dim](double v) { return jets::Jet2::constant(v, dim); }, JetOps{});
}

double eval_value(const Expr& e, const Environment<double>& env) {
  return evaluate(e, env, [](double v) { return v; }, ValueOps{});
}

}  // namespace subcheck::dsl
