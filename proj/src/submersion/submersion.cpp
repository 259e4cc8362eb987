#include "subcheck/submersion/submersion.hpp"

#include "subcheck/dsl/eval.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace subcheck::submersion {

using geometry::ValidationError;

namespace {

std::span<const double> as_span(const Point& p) { return {p.data(), static_cast<std::size_t>(p.size())}; }

std::vector<jets::Jet2> map_jets(const SubmersionSpec& S, const dsl::Environment<jets::Jet2>& env) {
  std::vector<jets::Jet2> out;
  out.reserve(S.map().size());
  for (const auto& e : S.map()) out.push_back(dsl::eval_jet(e, env));
  return out;
}

}  // namespace

SubmersionSpec::SubmersionSpec(AlmostContactStructure source, geometry::ChartManifold target,
                               std::vector<dsl::Expr> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (map_.size() != target_.dim())
    throw ValidationError("map has " + std::to_string(map_.size()) + " components but the target has dimension " +
                          std::to_string(target_.dim()));
  if (target_.dim() > source_.dim()) throw ValidationError("target dimension exceeds source dimension");
  for (std::size_t a = 0; a < map_.size(); ++a)
    geometry::require_bound(map_[a], source_.base().coords(), "map[" + std::to_string(a) + "]");
}

MatrixXd differential_at(const SubmersionSpec& S, const Point& p) {
  const auto env = S.source().base().jet_env(as_span(p));
  const auto comps = map_jets(S, env);
  return MatrixJet::jacobian_of(comps).value;
}

ProjectorPair projectors_at(const SubmersionSpec& S, const Point& p, const Tolerances& tol) {
  const SubmersionPoint sp(S, p, tol);
  return {sp.V().value, sp.H().value};
}

Frame orthonormalize(const std::vector<VectorXd>& candidates, const MatrixXd& g, double drop,
                     const std::vector<VectorXd>& seed) {
  Frame f;
  f.smallest_kept = std::numeric_limits<double>::infinity();
  std::vector<VectorXd> basis = seed;
  for (const auto& c : candidates) {
    VectorXd v = c;
    // two passes keep the result orthogonal to working precision
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b.dot(g * v) * b;
    const double nv = std::sqrt(std::max(0.0, v.dot(g * v)));
    if (nv < drop) continue;
    f.smallest_kept = std::min(f.smallest_kept, nv);
    v /= nv;
    basis.push_back(v);
    f.vectors.push_back(v);
  }
  return f;
}

std::string to_string(XiClass c) {
  switch (c) {
    case XiClass::Vertical: return "vertical";
    case XiClass::Horizontal: return "horizontal";
    case XiClass::Mixed: return "mixed";
  }
  return "mixed";
}

std::string to_string(Polarization p) {
  switch (p) {
    case Polarization::PhiVerticalIsHorizontal: return "phi(ker F*) = (ker F*)^perp";
    case Polarization::PhiVerticalPlusXi: return "(ker F*)^perp = phi(ker F*) + {xi}";
    case Polarization::General: return "general";
  }
  return "general";
}

SubmersionPoint::SubmersionPoint(const SubmersionSpec& S, const Point& p, const Tolerances& tol)
    : src_(contact::evaluate_structure(S.source(), p)) {
  const std::size_t m = src_.dim();
  const auto env = S.source().base().jet_env(as_span(p));
  const auto comps = map_jets(S, env);
  J_ = MatrixJet::jacobian_of(comps);
  Fp_.resize(static_cast<Eigen::Index>(comps.size()));
  for (std::size_t a = 0; a < comps.size(); ++a) Fp_(static_cast<Eigen::Index>(a)) = comps[a].value();

  const auto target_env = S.target().jet_env(as_span(Fp_));
  const auto target_metric = geometry::metric_jet(S.target(), target_env);
  gN_ = target_metric.g.value;
  gammaN_ = geometry::christoffel(target_metric);

  const MatrixJet Jt = J_.transpose();
  const MatrixJet gram = J_ * src_.metric.g_inv * Jt;
  const Eigen::Index n = gram.value.rows();
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(gram.value, Eigen::EigenvaluesOnly);
  lambda_min_ = n == 0 ? std::numeric_limits<double>::infinity() : eig.eigenvalues().minCoeff();
  if (!(lambda_min_ > tol.algebraic))
    throw RankDeficient("J g^-1 J^T is singular (smallest eigenvalue " + std::to_string(lambda_min_) + ")");
  if (lambda_min_ <= 10.0 * tol.algebraic)
    degenerate_ = "J g^-1 J^T within 10x of singular (smallest eigenvalue " + std::to_string(lambda_min_) + ")";
  const MatrixXd gram_inv = gram.value.llt().solve(MatrixXd::Identity(n, n));
  H_ = src_.metric.g_inv * Jt * geometry::inverse(gram, gram_inv) * J_;
  V_ = MatrixJet::identity(static_cast<Eigen::Index>(m), m) - H_;

  const MatrixXd& g = src_.metric.g.value;
  std::vector<VectorXd> vc, hc;
  for (std::size_t i = 0; i < m; ++i) {
    VectorXd e = VectorXd::Zero(static_cast<Eigen::Index>(m));
    e(static_cast<Eigen::Index>(i)) = 1.0;
    vc.push_back(V_.value * e);
    hc.push_back(H_.value * e);
  }
  const Frame vf = orthonormalize(vc, g, kFrameDrop);
  const Frame hf = orthonormalize(hc, g, kFrameDrop);
  vertical_ = vf.vectors;
  horizontal_ = hf.vectors;
  const auto note = [this](const std::string& why) {
    if (degenerate_.empty()) degenerate_ = why;
  };
  if (vertical_.size() != m - static_cast<std::size_t>(n))
    note("vertical frame has " + std::to_string(vertical_.size()) + " vectors, expected " +
         std::to_string(m - static_cast<std::size_t>(n)));
  if (horizontal_.size() != static_cast<std::size_t>(n))
    note("horizontal frame has " + std::to_string(horizontal_.size()) + " vectors, expected " + std::to_string(n));
  if (vf.smallest_kept < 10.0 * kFrameDrop || hf.smallest_kept < 10.0 * kFrameDrop)
    note("Gram-Schmidt kept a vector within 10x of the drop threshold");

  std::vector<VectorXd> images;
  for (const auto& u : vertical_) images.push_back(H_.value * (phi() * u));
  phi_vertical_ = orthonormalize(images, g, kFrameDrop).vectors;
  mu_ = orthonormalize(horizontal_, g, kFrameDrop, phi_vertical_).vectors;

  if (xi_horizontal_norm() < tol.algebraic)
    xi_class_ = XiClass::Vertical;
  else if (xi_vertical_norm() < tol.algebraic)
    xi_class_ = XiClass::Horizontal;
  if (mu_.empty() && xi_class_ == XiClass::Vertical)
    polarization_ = Polarization::PhiVerticalIsHorizontal;
  else if (mu_.size() == 1 && xi_class_ == XiClass::Horizontal)
    polarization_ = Polarization::PhiVerticalPlusXi;
}

std::vector<VectorXd> SubmersionPoint::full_frame() const {
  std::vector<VectorXd> f = vertical_;
  f.insert(f.end(), horizontal_.begin(), horizontal_.end());
  return f;
}

double SubmersionPoint::norm_target(const VectorXd& a) const { return std::sqrt(std::max(0.0, inner_target(a, a))); }

VectorXd SubmersionPoint::T(const VectorXd& e, const VectorJet& f) const {
  const VectorXd ve = V_.value * e;
  return H_.value * nabla(ve, V_ * f) + V_.value * nabla(ve, H_ * f);
}

VectorXd SubmersionPoint::A(const VectorXd& e, const VectorJet& f) const {
  const VectorXd he = H_.value * e;
  return V_.value * nabla(he, H_ * f) + H_.value * nabla(he, V_ * f);
}

VectorXd SubmersionPoint::second_fundamental_form(const VectorXd& x, const VectorJet& y) const {
  const VectorJet jy = J_ * y;
  return jy.along(x) + gammaN_.contract(J_.value * x, jy.value) - J_.value * nabla(x, y);
}

VectorXd SubmersionPoint::project_mu(const VectorXd& v) const {
  VectorXd out = VectorXd::Zero(v.size());
  for (const auto& b : mu_) out += inner(v, b) * b;
  return out;
}

VectorXd oneill_T_at(const SubmersionSpec& S, const geometry::VectorField& E, const geometry::VectorField& F,
                     const Point& p) {
  const SubmersionPoint sp(S, p);
  const auto env = S.source().base().jet_env(as_span(p));
  return sp.T(geometry::evaluate(E, env).value, geometry::evaluate(F, env));
}

VectorXd oneill_A_at(const SubmersionSpec& S, const geometry::VectorField& E, const geometry::VectorField& F,
                     const Point& p) {
  const SubmersionPoint sp(S, p);
  const auto env = S.source().base().jet_env(as_span(p));
  return sp.A(geometry::evaluate(E, env).value, geometry::evaluate(F, env));
}

VectorXd second_fundamental_form_at(const SubmersionSpec& S, const geometry::VectorField& X,
                                    const geometry::VectorField& Y, const Point& p) {
  const SubmersionPoint sp(S, p);
  const auto env = S.source().base().jet_env(as_span(p));
  return sp.second_fundamental_form(geometry::evaluate(X, env).value, geometry::evaluate(Y, env));
}

BCSplit bc_decompose_at(const SubmersionSpec& S, const VectorXd& x, const Point& p) {
  const SubmersionPoint sp(S, p);
  const VectorXd hx = sp.H().value * x;
  return {sp.B(hx), sp.C(hx)};
}

}  // namespace subcheck::submersion
