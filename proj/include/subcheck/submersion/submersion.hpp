#pragma once

// A map F from an almost contact metric chart to a Riemannian chart, and
// everything about it at one point: differential, smooth vertical and
// horizontal projectors, orthonormal frames, the O'Neill tensors, the B/C
// splitting of phi on horizontal vectors and the second fundamental form.

#include "subcheck/contact/structure.hpp"
#include "subcheck/geometry/chart.hpp"
#include "subcheck/geometry/connection.hpp"
#include "subcheck/report.hpp"
#include "subcheck/tolerances.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace subcheck::submersion {

using contact::AlmostContactStructure;
using geometry::MatrixJet;
using geometry::MatrixXd;
using geometry::VectorJet;
using geometry::VectorXd;

/// J g^-1 J^T is singular at the point: F is not a submersion there.
class RankDeficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SubmersionSpec {
 public:
  SubmersionSpec() = default;
  SubmersionSpec(AlmostContactStructure source, geometry::ChartManifold target, std::vector<dsl::Expr> map);

  const AlmostContactStructure& source() const { return source_; }
  const geometry::ChartManifold& target() const { return target_; }
  const std::vector<dsl::Expr>& map() const { return map_; }
  std::size_t source_dim() const { return source_.dim(); }
  std::size_t target_dim() const { return target_.dim(); }

  SubmersionSpec with_source(AlmostContactStructure source) const { return {std::move(source), target_, map_}; }
  SubmersionSpec with_map(std::vector<dsl::Expr> map) const { return {source_, target_, std::move(map)}; }

 private:
  AlmostContactStructure source_;
  geometry::ChartManifold target_;
  std::vector<dsl::Expr> map_;
};

MatrixXd differential_at(const SubmersionSpec& S, const Point& p);

struct ProjectorPair {
  MatrixXd vertical;
  MatrixXd horizontal;
};

ProjectorPair projectors_at(const SubmersionSpec& S, const Point& p, const Tolerances& tol = {});

/// Gram-Schmidt in the metric g over candidates in order; vectors whose
/// remainder has g-norm below drop are skipped. `seed` vectors are assumed
/// orthonormal already and are not part of the result.
struct Frame {
  std::vector<VectorXd> vectors;
  double smallest_kept = 0.0;  // smallest remainder norm that was kept
};
Frame orthonormalize(const std::vector<VectorXd>& candidates, const MatrixXd& g, double drop,
                     const std::vector<VectorXd>& seed = {});

enum class XiClass { Vertical, Horizontal, Mixed };
std::string to_string(XiClass c);

/// How the horizontal space splits: horizontal = phi(vertical), or
/// horizontal = phi(vertical) + span{xi}, or neither.
enum class Polarization { PhiVerticalIsHorizontal, PhiVerticalPlusXi, General };
std::string to_string(Polarization p);

class SubmersionPoint {
 public:
  static constexpr double kFrameDrop = 1e-8;

  /// Throws RankDeficient when J g^-1 J^T has an eigenvalue <= tol.algebraic.
  SubmersionPoint(const SubmersionSpec& S, const Point& p, const Tolerances& tol = {});

  const contact::StructurePoint& source() const { return src_; }
  std::size_t m() const { return src_.dim(); }
  std::size_t n() const { return static_cast<std::size_t>(J_.value.rows()); }
  const MatrixJet& J() const { return J_; }
  const VectorXd& F() const { return Fp_; }
  const MatrixXd& target_metric() const { return gN_; }
  const MatrixJet& V() const { return V_; }
  const MatrixJet& H() const { return H_; }
  const MatrixXd& phi() const { return src_.phi.value; }
  const VectorXd& xi() const { return src_.xi.value; }
  const VectorXd& eta() const { return src_.eta.value; }

  /// Smallest eigenvalue of J g^-1 J^T.
  double conditioning() const { return lambda_min_; }
  /// Nonempty when the point sits too close to a rank or frame threshold.
  const std::string& degenerate_reason() const { return degenerate_; }
  bool degenerate() const { return !degenerate_.empty(); }

  const std::vector<VectorXd>& vertical_frame() const { return vertical_; }
  const std::vector<VectorXd>& horizontal_frame() const { return horizontal_; }
  /// Orthonormal frame of H phi(vertical), then of mu = its complement in the horizontal space.
  const std::vector<VectorXd>& phi_vertical_frame() const { return phi_vertical_; }
  const std::vector<VectorXd>& mu_frame() const { return mu_; }
  std::vector<VectorXd> full_frame() const;

  double xi_horizontal_norm() const { return norm(H_.value * xi()); }
  double xi_vertical_norm() const { return norm(V_.value * xi()); }
  XiClass xi_class() const { return xi_class_; }
  Polarization polarization() const { return polarization_; }

  double inner(const VectorXd& a, const VectorXd& b) const { return src_.inner(a, b); }
  double norm(const VectorXd& a) const { return src_.norm(a); }
  double inner_target(const VectorXd& a, const VectorXd& b) const { return a.dot(gN_ * b); }
  double norm_target(const VectorXd& a) const;

  VectorJet constant(const VectorXd& v) const { return VectorJet::constant(v, m()); }
  VectorJet vertical_field(const VectorJet& f) const { return V_ * f; }
  VectorJet horizontal_field(const VectorJet& f) const { return H_ * f; }
  VectorJet phi_field(const VectorJet& f) const { return src_.phi * f; }

  VectorXd nabla(const VectorXd& x, const VectorJet& y) const { return src_.nabla(x, y); }
  VectorXd push(const VectorXd& v) const { return J_.value * v; }

  /// T_E F = H nabla_{VE}(VF) + V nabla_{VE}(HF).
  VectorXd T(const VectorXd& e, const VectorJet& f) const;
  VectorXd T(const VectorXd& e, const VectorXd& f) const { return T(e, constant(f)); }
  /// A_E F = V nabla_{HE}(HF) + H nabla_{HE}(VF).
  VectorXd A(const VectorXd& e, const VectorJet& f) const;
  VectorXd A(const VectorXd& e, const VectorXd& f) const { return A(e, constant(f)); }

  /// phi x = B x + C x for horizontal x.
  VectorXd B(const VectorXd& x) const { return V_.value * (phi() * x); }
  VectorXd C(const VectorXd& x) const { return H_.value * (phi() * x); }
  /// C applied to a horizontal field, as a field.
  VectorJet C_field(const VectorJet& y) const { return H_ * (src_.phi * y); }

  /// (nabla F_*)(x, Y) in target components.
  VectorXd second_fundamental_form(const VectorXd& x, const VectorJet& y) const;
  VectorXd second_fundamental_form(const VectorXd& x, const VectorXd& y) const {
    return second_fundamental_form(x, constant(y));
  }

  /// g-orthogonal projection onto the span of mu.
  VectorXd project_mu(const VectorXd& v) const;

 private:
  contact::StructurePoint src_;
  MatrixJet J_;
  VectorXd Fp_;
  MatrixXd gN_;
  geometry::Christoffel gammaN_;
  MatrixJet H_;
  MatrixJet V_;
  double lambda_min_ = 0.0;
  std::vector<VectorXd> vertical_, horizontal_, phi_vertical_, mu_;
  XiClass xi_class_ = XiClass::Mixed;
  Polarization polarization_ = Polarization::General;
  std::string degenerate_;
};

VectorXd oneill_T_at(const SubmersionSpec& S, const geometry::VectorField& E, const geometry::VectorField& F,
                     const Point& p);
VectorXd oneill_A_at(const SubmersionSpec& S, const geometry::VectorField& E, const geometry::VectorField& F,
                     const Point& p);
VectorXd second_fundamental_form_at(const SubmersionSpec& S, const geometry::VectorField& X,
                                    const geometry::VectorField& Y, const Point& p);

struct BCSplit {
  VectorXd B;
  VectorXd C;
};
/// x is projected to the horizontal space first.
BCSplit bc_decompose_at(const SubmersionSpec& S, const VectorXd& x, const Point& p);

}  // namespace subcheck::submersion
