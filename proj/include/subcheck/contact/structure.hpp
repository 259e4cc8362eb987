#pragma once

#include "subcheck/geometry/chart.hpp"
#include "subcheck/geometry/connection.hpp"
#include "subcheck/report.hpp"
#include "subcheck/tolerances.hpp"

#include <span>
#include <string>
#include <vector>

namespace subcheck::contact {

using geometry::MatrixJet;
using geometry::MatrixXd;
using geometry::VectorJet;
using geometry::VectorXd;

/// How a written phi matrix maps to the endomorphism.
///   Columns: column j holds the components of phi(d_j), i.e. phi acts on
///            component column vectors; this is the usual convention.
///   Rows:    row j holds the components of phi(d_j).
enum class PhiConvention { Columns, Rows };

std::string to_string(PhiConvention c);
PhiConvention phi_convention_from_string(const std::string& s);

/// phi, xi, eta over an odd-dimensional chart with metric.
class AlmostContactStructure {
 public:
  AlmostContactStructure() = default;
  /// phi_written is interpreted according to convention.
  AlmostContactStructure(geometry::ChartManifold base, geometry::ExprGrid phi_written, geometry::VectorField xi,
                         geometry::OneForm eta, PhiConvention convention = PhiConvention::Columns);

  const geometry::ChartManifold& base() const { return base_; }
  std::size_t dim() const { return base_.dim(); }
  /// phi()[i][j] is component i of phi(d_j).
  const geometry::ExprGrid& phi() const { return phi_; }
  const geometry::ExprGrid& phi_written() const { return phi_written_; }
  const geometry::VectorField& xi() const { return xi_; }
  const geometry::OneForm& eta() const { return eta_; }
  PhiConvention convention() const { return convention_; }

  AlmostContactStructure with_metric(geometry::ExprGrid metric) const;
  AlmostContactStructure with_phi(geometry::ExprGrid phi_written) const;
  AlmostContactStructure with_eta(geometry::OneForm eta) const;
  AlmostContactStructure with_convention(PhiConvention c) const;

 private:
  geometry::ChartManifold base_;
  geometry::ExprGrid phi_written_;
  geometry::ExprGrid phi_;
  geometry::VectorField xi_;
  geometry::OneForm eta_;
  PhiConvention convention_ = PhiConvention::Columns;
};

/// Everything about the structure at one point, as first-order jets.
struct StructurePoint {
  Point p;
  geometry::MetricJet metric;
  geometry::Christoffel gamma;
  MatrixJet phi;
  VectorJet xi;
  VectorJet eta;  // covector components
  MatrixXd d_eta;
  MatrixJet d_eta_jet;

  std::size_t dim() const { return static_cast<std::size_t>(p.size()); }
  double inner(const VectorXd& a, const VectorXd& b) const { return a.dot(metric.g.value * b); }
  double norm(const VectorXd& a) const;
  VectorXd phi_of(const VectorXd& v) const { return phi.value * v; }
  /// nabla_x Y at the point.
  VectorXd nabla(const VectorXd& x, const VectorJet& y) const;
};

StructurePoint evaluate_structure(const AlmostContactStructure& S, const Point& p);

/// Phi_ij = g(d_i, phi d_j) as a first-order jet.
MatrixJet fundamental_two_form_jet(const StructurePoint& sp);
MatrixXd fundamental_two_form_at(const AlmostContactStructure& S, const Point& p);

/// [phi,phi](X,Y) + 2 d eta(X,Y) xi, with 2 d eta(X,Y) = X eta(Y) - Y eta(X) - eta([X,Y]).
VectorXd nijenhuis(const StructurePoint& sp, const VectorJet& x, const VectorJet& y);
VectorXd nijenhuis_at(const AlmostContactStructure& S, const geometry::VectorField& X,
                      const geometry::VectorField& Y, const Point& p);

/// (nabla_x phi) y for a field y: nabla_x(phi y) - phi(nabla_x y).
VectorXd nabla_phi(const StructurePoint& sp, const VectorXd& x, const VectorJet& y);

// Per-point measurement groups, used by the suite runner.
void measure_almost_contact(const StructurePoint& sp, const Tolerances& tol, std::vector<Measurement>& out);
void measure_metric_compatibility(const StructurePoint& sp, const Tolerances& tol, std::vector<Measurement>& out);
void measure_cosymplectic(const StructurePoint& sp, const Tolerances& tol, std::vector<Measurement>& out);
/// Torsion, metric compatibility and d o d = 0 on a fixed family of test fields.
void measure_connection(const AlmostContactStructure& S, const StructurePoint& sp, const Tolerances& tol,
                        std::vector<Measurement>& out);

CheckReport check_almost_contact(const AlmostContactStructure& S, const std::vector<Point>& points,
                                 const Tolerances& tol = {});
CheckReport check_metric_compatibility(const AlmostContactStructure& S, const std::vector<Point>& points,
                                       const Tolerances& tol = {});
CheckReport check_cosymplectic(const AlmostContactStructure& S, const std::vector<Point>& points,
                               const Tolerances& tol = {});

/// Deterministic smooth test field number `index` at p, as a first-order jet:
/// value = e_(index mod m) + small polynomial tail, nonzero derivative.
VectorJet test_field(std::size_t index, const Point& p);

}  // namespace subcheck::contact
