#include "subcheck/geometry/chart.hpp"

#include "subcheck/dsl/parser.hpp"

#include <algorithm>
#include <set>

namespace subcheck::geometry {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto letter = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!letter(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return letter(c) || (c >= '0' && c <= '9') || c == '_'; });
}

bool reserved(const std::string& s) {
  return s == "sin" || s == "cos" || s == "tan" || s == "exp" || s == "sqrt";
}

}  // namespace

void require_bound(const dsl::Expr& e, std::span<const std::string> coords, const std::string& where) {
  for (const auto& v : dsl::free_vars(e)) {
    if (std::find(coords.begin(), coords.end(), v) == coords.end())
      throw ValidationError(where + ": variable '" + v + "' is not a coordinate");
  }
}

ChartManifold::ChartManifold(std::vector<std::string> coords, ExprGrid metric)
    : coords_(std::move(coords)), metric_(std::move(metric)) {
  if (coords_.empty()) throw ValidationError("chart needs at least one coordinate");
  std::set<std::string> seen;
  for (const auto& c : coords_) {
    if (!valid_identifier(c) || reserved(c)) throw ValidationError("invalid coordinate name '" + c + "'");
    if (!seen.insert(c).second) throw ValidationError("duplicate coordinate name '" + c + "'");
  }
  if (metric_.size() != coords_.size()) throw ValidationError("metric must have one row per coordinate");
  for (std::size_t i = 0; i < metric_.size(); ++i) {
    if (metric_[i].size() != coords_.size()) throw ValidationError("metric must be square");
    for (std::size_t j = 0; j < metric_[i].size(); ++j)
      require_bound(metric_[i][j], coords_, "metric[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
}

dsl::Environment<jets::Jet2> ChartManifold::jet_env(std::span<const double> p) const {
  if (p.size() != dim()) throw ValidationError("point has wrong dimension");
  dsl::Environment<jets::Jet2> env;
  auto seeds = jets::seed_point(p);
  for (std::size_t i = 0; i < coords_.size(); ++i) env.emplace(coords_[i], std::move(seeds[i]));
  return env;
}

dsl::Environment<double> ChartManifold::value_env(std::span<const double> p) const {
  if (p.size() != dim()) throw ValidationError("point has wrong dimension");
  dsl::Environment<double> env;
  for (std::size_t i = 0; i < coords_.size(); ++i) env.emplace(coords_[i], p[i]);
  return env;
}

VectorField VectorField::constant(const VectorXd& v) {
  VectorField f;
  for (Eigen::Index i = 0; i < v.size(); ++i) f.components.push_back(dsl::make_number(v(i)));
  return f;
}

std::vector<jets::Jet2> evaluate_jets(std::span<const dsl::Expr> exprs, const dsl::Environment<jets::Jet2>& env) {
  std::vector<jets::Jet2> out;
  out.reserve(exprs.size());
  for (const auto& e : exprs) out.push_back(dsl::eval_jet(e, env));
  return out;
}

VectorJet evaluate(const VectorField& X, const dsl::Environment<jets::Jet2>& env) {
  return VectorJet::from_jets(evaluate_jets(X.components, env));
}

VectorJet evaluate(const OneForm& w, const dsl::Environment<jets::Jet2>& env) {
  return VectorJet::from_jets(evaluate_jets(w.components, env));
}

MatrixJet evaluate(const ExprGrid& grid, const dsl::Environment<jets::Jet2>& env) {
  const auto rows = static_cast<Eigen::Index>(grid.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(grid[0].size());
  std::vector<jets::Jet2> entries;
  entries.reserve(static_cast<std::size_t>(rows * cols));
  for (const auto& row : grid)
    for (const auto& e : row) entries.push_back(dsl::eval_jet(e, env));
  return MatrixJet::from_jets(entries, rows, cols);
}

ExprGrid parse_grid(const std::vector<std::vector<std::string>>& text) {
  ExprGrid out;
  for (const auto& row : text) out.push_back(parse_list(row));
  return out;
}

std::vector<dsl::Expr> parse_list(const std::vector<std::string>& text) {
  std::vector<dsl::Expr> out;
  out.reserve(text.size());
  for (const auto& s : text) out.push_back(dsl::parse(s));
  return out;
}

}  // namespace subcheck::geometry
