#include "subcheck/geometry/field_jet.hpp"

#include <cassert>

namespace subcheck::geometry {

VectorJet VectorJet::constant(const VectorXd& v, std::size_t dim) {
  return {v, MatrixXd::Zero(v.size(), static_cast<Eigen::Index>(dim))};
}

VectorJet VectorJet::from_jets(std::span<const jets::Jet2> components) {
  const auto n = static_cast<Eigen::Index>(components.size());
  const auto m = n == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(components[0].dim());
  VectorJet out{VectorXd(n), MatrixXd(n, m)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.value(i) = components[i].value();
    out.d.row(i) = components[i].grad().transpose();
  }
  return out;
}

VectorJet VectorJet::gradient_of(const jets::Jet2& f) { return {f.grad(), f.hess()}; }

MatrixJet MatrixJet::constant(const MatrixXd& v, std::size_t dim) {
  return {v, std::vector<MatrixXd>(dim, MatrixXd::Zero(v.rows(), v.cols()))};
}

MatrixJet MatrixJet::identity(Eigen::Index n, std::size_t dim) { return constant(MatrixXd::Identity(n, n), dim); }

MatrixJet MatrixJet::from_jets(std::span<const jets::Jet2> entries, Eigen::Index rows, Eigen::Index cols) {
  assert(static_cast<Eigen::Index>(entries.size()) == rows * cols);
  const std::size_t m = entries.empty() ? 0 : entries[0].dim();
  MatrixJet out{MatrixXd(rows, cols), std::vector<MatrixXd>(m, MatrixXd(rows, cols))};
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& j = entries[static_cast<std::size_t>(r * cols + c)];
      out.value(r, c) = j.value();
      for (std::size_t k = 0; k < m; ++k) out.d[k](r, c) = j.grad()(static_cast<Eigen::Index>(k));
    }
  }
  return out;
}

MatrixJet MatrixJet::jacobian_of(std::span<const jets::Jet2> components) {
  const auto n = static_cast<Eigen::Index>(components.size());
  const std::size_t m = components.empty() ? 0 : components[0].dim();
  const auto mi = static_cast<Eigen::Index>(m);
  MatrixJet out{MatrixXd(n, mi), std::vector<MatrixXd>(m, MatrixXd(n, mi))};
  for (Eigen::Index a = 0; a < n; ++a) {
    out.value.row(a) = components[a].grad().transpose();
    for (std::size_t k = 0; k < m; ++k) out.d[k].row(a) = components[a].hess().col(static_cast<Eigen::Index>(k)).transpose();
  }
  return out;
}

MatrixXd MatrixJet::along(const VectorXd& x) const {
  MatrixXd out = MatrixXd::Zero(value.rows(), value.cols());
  for (std::size_t k = 0; k < d.size(); ++k) out += x(static_cast<Eigen::Index>(k)) * d[k];
  return out;
}

MatrixJet MatrixJet::transpose() const {
  MatrixJet out{value.transpose(), {}};
  out.d.reserve(d.size());
  for (const auto& dk : d) out.d.push_back(dk.transpose());
  return out;
}

VectorJet operator+(const VectorJet& a, const VectorJet& b) { return {a.value + b.value, a.d + b.d}; }
VectorJet operator-(const VectorJet& a, const VectorJet& b) { return {a.value - b.value, a.d - b.d}; }
VectorJet operator*(double s, const VectorJet& a) { return {s * a.value, s * a.d}; }

MatrixJet operator+(const MatrixJet& a, const MatrixJet& b) {
  assert(a.dim() == b.dim());
  MatrixJet out{a.value + b.value, a.d};
  for (std::size_t k = 0; k < out.d.size(); ++k) out.d[k] += b.d[k];
  return out;
}

MatrixJet operator-(const MatrixJet& a, const MatrixJet& b) {
  assert(a.dim() == b.dim());
  MatrixJet out{a.value - b.value, a.d};
  for (std::size_t k = 0; k < out.d.size(); ++k) out.d[k] -= b.d[k];
  return out;
}

MatrixJet operator*(const MatrixJet& a, const MatrixJet& b) {
  assert(a.dim() == b.dim());
  MatrixJet out{a.value * b.value, std::vector<MatrixXd>(a.dim())};
  for (std::size_t k = 0; k < out.d.size(); ++k) out.d[k] = a.d[k] * b.value + a.value * b.d[k];
  return out;
}

VectorJet operator*(const MatrixJet& a, const VectorJet& v) {
  assert(a.dim() == v.dim());
  VectorJet out{a.value * v.value, a.value * v.d};
  for (std::size_t k = 0; k < a.dim(); ++k) out.d.col(static_cast<Eigen::Index>(k)) += a.d[k] * v.value;
  return out;
}

MatrixJet inverse(const MatrixJet& a, const MatrixXd& value_inverse) {
  MatrixJet out{value_inverse, std::vector<MatrixXd>(a.dim())};
  for (std::size_t k = 0; k < a.dim(); ++k) out.d[k] = -value_inverse * a.d[k] * value_inverse;
  return out;
}

}  // namespace subcheck::geometry
