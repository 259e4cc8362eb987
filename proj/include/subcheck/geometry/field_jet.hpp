#pragma once

// First-order jets of vector- and matrix-valued fields at a point: the value
// together with all m coordinate partial derivatives. Metrics, structure
// tensors, differentials and projectors are carried in this form once their
// underlying expressions have been evaluated as second-order scalar jets.

#include "subcheck/jets/jet2.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace subcheck::geometry {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct VectorJet {
  VectorXd value;
  MatrixXd d;  // d(i, k) = partial_k of component i

  static VectorJet constant(const VectorXd& v, std::size_t dim);
  static VectorJet from_jets(std::span<const jets::Jet2> components);
  /// Gradient of a scalar jet as a vector field jet (value = grad, d = Hessian).
  static VectorJet gradient_of(const jets::Jet2& f);

  std::size_t dim() const { return static_cast<std::size_t>(d.cols()); }
  /// Derivative of the field along direction x.
  VectorXd along(const VectorXd& x) const { return d * x; }
};

struct MatrixJet {
  MatrixXd value;
  std::vector<MatrixXd> d;  // d[k] = partial_k of the matrix

  static MatrixJet constant(const MatrixXd& v, std::size_t dim);
  static MatrixJet identity(Eigen::Index n, std::size_t dim);
  /// Row-major rows x cols grid of scalar jets.
  static MatrixJet from_jets(std::span<const jets::Jet2> entries, Eigen::Index rows, Eigen::Index cols);
  /// Jacobian of the component functions: value(a, i) = partial_i f^a, with
  /// its own partials taken from the Hessians.
  static MatrixJet jacobian_of(std::span<const jets::Jet2> components);

  std::size_t dim() const { return d.size(); }
  MatrixXd along(const VectorXd& x) const;
  MatrixJet transpose() const;
};

VectorJet operator+(const VectorJet& a, const VectorJet& b);
VectorJet operator-(const VectorJet& a, const VectorJet& b);
VectorJet operator*(double s, const VectorJet& a);

MatrixJet operator+(const MatrixJet& a, const MatrixJet& b);
MatrixJet operator-(const MatrixJet& a, const MatrixJet& b);
MatrixJet operator*(const MatrixJet& a, const MatrixJet& b);
VectorJet operator*(const MatrixJet& a, const VectorJet& v);

/// Inverse given the already-computed inverse of the value.
MatrixJet inverse(const MatrixJet& a, const MatrixXd& value_inverse);

}  // namespace subcheck::geometry
