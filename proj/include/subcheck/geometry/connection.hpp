#pragma once

#include "subcheck/geometry/chart.hpp"
#include "subcheck/geometry/field_jet.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace subcheck::geometry {

class SingularMetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense rank-3 array indexed (a, b, c), each in [0, m).
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t m) : m_(m), data_(m * m * m, 0.0) {}

  std::size_t dim() const { return m_; }
  double& operator()(std::size_t a, std::size_t b, std::size_t c) { return data_[(a * m_ + b) * m_ + c]; }
  double operator()(std::size_t a, std::size_t b, std::size_t c) const { return data_[(a * m_ + b) * m_ + c]; }
  double max_abs() const;

 private:
  std::size_t m_ = 0;
  std::vector<double> data_;
};

struct MetricValue {
  MatrixXd g;
  MatrixXd g_inv;
};

struct MetricJet {
  MatrixJet g;
  MatrixJet g_inv;
};

/// Christoffel symbols of the second kind stored as (k, i, j) -> Gamma^k_ij.
class Christoffel {
 public:
  Christoffel() = default;
  explicit Christoffel(Tensor3 t) : t_(std::move(t)) {}

  double operator()(std::size_t k, std::size_t i, std::size_t j) const { return t_(k, i, j); }
  const Tensor3& tensor() const { return t_; }
  /// Gamma(x, y)^k = sum_ij Gamma^k_ij x^i y^j.
  VectorXd contract(const VectorXd& x, const VectorXd& y) const;

 private:
  Tensor3 t_;
};

/// Inverse of a symmetric positive definite matrix, or SingularMetric.
MatrixXd spd_inverse(const MatrixXd& g);

/// Evaluates the metric's upper triangle and mirrors it.
MetricJet metric_jet(const ChartManifold& M, const dsl::Environment<jets::Jet2>& env);
MetricValue metric_at(const ChartManifold& M, std::span<const double> p);
/// max |g_ij - g_ji| with both triangles evaluated independently.
double metric_asymmetry_at(const ChartManifold& M, std::span<const double> p);

Christoffel christoffel(const MetricJet& metric);
Christoffel christoffel_at(const ChartManifold& M, std::span<const double> p);

/// (nabla_X Y)^k = X^i d_i Y^k + Gamma^k_ij X^i Y^j.
VectorXd covariant_derivative(const Christoffel& gamma, const VectorXd& x, const VectorJet& y);
VectorXd covariant_derivative_at(const ChartManifold& M, const VectorField& X, const VectorField& Y,
                                 std::span<const double> p);

VectorXd lie_bracket(const VectorJet& x, const VectorJet& y);
VectorXd lie_bracket_at(const ChartManifold& M, const VectorField& X, const VectorField& Y,
                        std::span<const double> p);

/// (d eta)_ij = d_i eta_j - d_j eta_i.
MatrixXd exterior_derivative(const VectorJet& one_form);
/// (d Phi)_ijk = d_i Phi_jk + d_j Phi_ki + d_k Phi_ij.
Tensor3 exterior_derivative(const MatrixJet& two_form);
/// d eta carried as a first-order jet (needs second derivatives of eta).
MatrixJet exterior_derivative_jet(const OneForm& w, const dsl::Environment<jets::Jet2>& env);

MatrixXd exterior_derivative_at(const ChartManifold& M, const OneForm& w, std::span<const double> p);
Tensor3 exterior_derivative_at(const ChartManifold& M, const TwoForm& w, std::span<const double> p);

}  // namespace subcheck::geometry
