#pragma once

#include "subcheck/dsl/eval.hpp"
#include "subcheck/dsl/expr.hpp"
#include "subcheck/geometry/field_jet.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace subcheck::geometry {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using ExprGrid = std::vector<std::vector<dsl::Expr>>;

/// Checks that every free variable of e is one of coords.
void require_bound(const dsl::Expr& e, std::span<const std::string> coords, const std::string& where);

/// Global coordinate chart on R^m with a metric given componentwise.
class ChartManifold {
 public:
  ChartManifold() = default;
  ChartManifold(std::vector<std::string> coords, ExprGrid metric);

  std::size_t dim() const { return coords_.size(); }
  const std::vector<std::string>& coords() const { return coords_; }
  const ExprGrid& metric() const { return metric_; }

  dsl::Environment<jets::Jet2> jet_env(std::span<const double> p) const;
  dsl::Environment<double> value_env(std::span<const double> p) const;

 private:
  std::vector<std::string> coords_;
  ExprGrid metric_;
};

struct VectorField {
  std::vector<dsl::Expr> components;

  static VectorField constant(const VectorXd& v);
};

struct OneForm {
  std::vector<dsl::Expr> components;
};

struct TwoForm {
  ExprGrid components;
};

VectorJet evaluate(const VectorField& X, const dsl::Environment<jets::Jet2>& env);
VectorJet evaluate(const OneForm& w, const dsl::Environment<jets::Jet2>& env);
/// Square or rectangular grid of expressions as a first-order matrix jet.
MatrixJet evaluate(const ExprGrid& grid, const dsl::Environment<jets::Jet2>& env);
std::vector<jets::Jet2> evaluate_jets(std::span<const dsl::Expr> exprs, const dsl::Environment<jets::Jet2>& env);

ExprGrid parse_grid(const std::vector<std::vector<std::string>>& text);
std::vector<dsl::Expr> parse_list(const std::vector<std::string>& text);

}  // namespace subcheck::geometry
