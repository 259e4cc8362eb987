#pragma once

#include "subcheck/dsl/expr.hpp"
#include "subcheck/jets/jet2.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace subcheck::dsl {

class UnboundVariable : public std::runtime_error {
 public:
  explicit UnboundVariable(const std::string& name) : std::runtime_error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

template <typename T>
using Environment = std::map<std::string, T, std::less<>>;

/// Left-to-right structural recursion over jets. Throws UnboundVariable,
/// jets::DomainError and jets::DivisionByZero.
jets::Jet2 eval_jet(const Expr& e, const Environment<jets::Jet2>& env);

/// Plain real evaluation using the same operation order as eval_jet.
double eval_value(const Expr& e, const Environment<double>& env);

}  // namespace subcheck::dsl
