#include "subcheck/contact/structure.hpp"

#include <cmath>
#include <stdexcept>

namespace subcheck::contact {

using geometry::ValidationError;

namespace {

geometry::ExprGrid transpose(const geometry::ExprGrid& grid) {
  geometry::ExprGrid out(grid.empty() ? 0 : grid[0].size(), std::vector<dsl::Expr>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid[i].size(); ++j) out[j][i] = grid[i][j];
  return out;
}

double max_abs(const MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

VectorXd unit(std::size_t i, std::size_t m) {
  VectorXd e = VectorXd::Zero(static_cast<Eigen::Index>(m));
  e(static_cast<Eigen::Index>(i)) = 1.0;
  return e;
}

Measurement make(const std::string& group, const std::string& name, double residual, double tol,
                 CheckKind kind = CheckKind::Identity, std::string label = {}) {
  return {group, name, residual, tol, kind, std::move(label)};
}

CheckReport run_group_over(const AlmostContactStructure& S, const std::vector<Point>& points, const std::string& group,
                           const std::function<void(const StructurePoint&, std::vector<Measurement>&)>& body) {
  return run_kernel(points, [&](std::size_t, const Point& p) {
    PointOutcome out;
    run_group(out, group, [&](std::vector<Measurement>& ms) { body(evaluate_structure(S, p), ms); });
    return out;
  });
}

}  // namespace

std::string to_string(PhiConvention c) { return c == PhiConvention::Columns ? "cols" : "rows"; }

PhiConvention phi_convention_from_string(const std::string& s) {
  if (s == "cols") return PhiConvention::Columns;
  if (s == "rows") return PhiConvention::Rows;
  throw std::invalid_argument("phi convention must be 'rows' or 'cols', got '" + s + "'");
}

AlmostContactStructure::AlmostContactStructure(geometry::ChartManifold base, geometry::ExprGrid phi_written,
                                               geometry::VectorField xi, geometry::OneForm eta,
                                               PhiConvention convention)
    : base_(std::move(base)),
      phi_written_(std::move(phi_written)),
      xi_(std::move(xi)),
      eta_(std::move(eta)),
      convention_(convention) {
  const std::size_t m = base_.dim();
  if (m % 2 == 0) throw ValidationError("almost contact structure needs odd dimension, got " + std::to_string(m));
  if (phi_written_.size() != m) throw ValidationError("phi must have one row per coordinate");
  for (std::size_t i = 0; i < m; ++i) {
    if (phi_written_[i].size() != m) throw ValidationError("phi must be square");
    for (std::size_t j = 0; j < m; ++j)
      geometry::require_bound(phi_written_[i][j], base_.coords(),
                              "phi[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
  if (xi_.components.size() != m) throw ValidationError("xi must have one component per coordinate");
  if (eta_.components.size() != m) throw ValidationError("eta must have one component per coordinate");
  for (std::size_t i = 0; i < m; ++i) {
    geometry::require_bound(xi_.components[i], base_.coords(), "xi[" + std::to_string(i) + "]");
    geometry::require_bound(eta_.components[i], base_.coords(), "eta[" + std::to_string(i) + "]");
  }
  phi_ = convention_ == PhiConvention::Columns ? phi_written_ : transpose(phi_written_);
}

AlmostContactStructure AlmostContactStructure::with_metric(geometry::ExprGrid metric) const {
  return {geometry::ChartManifold(base_.coords(), std::move(metric)), phi_written_, xi_, eta_, convention_};
}

AlmostContactStructure AlmostContactStructure::with_phi(geometry::ExprGrid phi_written) const {
  return {base_, std::move(phi_written), xi_, eta_, convention_};
}

AlmostContactStructure AlmostContactStructure::with_eta(geometry::OneForm eta) const {
  return {base_, phi_written_, xi_, std::move(eta), convention_};
}

AlmostContactStructure AlmostContactStructure::with_convention(PhiConvention c) const {
  return {base_, phi_written_, xi_, eta_, c};
}

double StructurePoint::norm(const VectorXd& a) const { return std::sqrt(std::max(0.0, inner(a, a))); }

VectorXd StructurePoint::nabla(const VectorXd& x, const VectorJet& y) const {
  return geometry::covariant_derivative(gamma, x, y);
}

StructurePoint evaluate_structure(const AlmostContactStructure& S, const Point& p) {
  const auto env = S.base().jet_env(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
  StructurePoint sp;
  sp.p = p;
  sp.metric = geometry::metric_jet(S.base(), env);
  sp.gamma = geometry::christoffel(sp.metric);
  sp.phi = geometry::evaluate(S.phi(), env);
  sp.xi = geometry::evaluate(S.xi(), env);
  sp.eta = geometry::evaluate(S.eta(), env);
  sp.d_eta_jet = geometry::exterior_derivative_jet(S.eta(), env);
  sp.d_eta = sp.d_eta_jet.value;
  return sp;
}

MatrixJet fundamental_two_form_jet(const StructurePoint& sp) { return sp.metric.g * sp.phi; }

MatrixXd fundamental_two_form_at(const AlmostContactStructure& S, const Point& p) {
  return fundamental_two_form_jet(evaluate_structure(S, p)).value;
}

VectorXd nijenhuis(const StructurePoint& sp, const VectorJet& x, const VectorJet& y) {
  const VectorJet px = sp.phi * x;
  const VectorJet py = sp.phi * y;
  const VectorXd xy = geometry::lie_bracket(x, y);
  const MatrixXd& phi = sp.phi.value;
  VectorXd n = phi * (phi * xy) + geometry::lie_bracket(px, py) - phi * geometry::lie_bracket(px, y) -
               phi * geometry::lie_bracket(x, py);
  const double x_eta_y = sp.eta.along(x.value).dot(y.value) + sp.eta.value.dot(y.along(x.value));
  const double y_eta_x = sp.eta.along(y.value).dot(x.value) + sp.eta.value.dot(x.along(y.value));
  const double two_d_eta = x_eta_y - y_eta_x - sp.eta.value.dot(xy);
  return n + two_d_eta * sp.xi.value;
}

VectorXd nijenhuis_at(const AlmostContactStructure& S, const geometry::VectorField& X,
                      const geometry::VectorField& Y, const Point& p) {
  const auto sp = evaluate_structure(S, p);
  const auto env = S.base().jet_env(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
  return nijenhuis(sp, geometry::evaluate(X, env), geometry::evaluate(Y, env));
}

VectorXd nabla_phi(const StructurePoint& sp, const VectorXd& x, const VectorJet& y) {
  return sp.nabla(x, sp.phi * y) - sp.phi.value * sp.nabla(x, y);
}

void measure_almost_contact(const StructurePoint& sp, const Tolerances& tol, std::vector<Measurement>& out) {
  const std::string g = "almost_contact";
  const auto m = static_cast<Eigen::Index>(sp.dim());
  const MatrixXd& phi = sp.phi.value;
  const VectorXd& xi = sp.xi.value;
  const VectorXd& eta = sp.eta.value;
  const MatrixXd phi2 = phi * phi + MatrixXd::Identity(m, m) - xi * eta.transpose();
  out.push_back(make(g, "almost_contact.phi_squared", max_abs(phi2), tol.algebraic));
  out.push_back(make(g, "almost_contact.phi_xi", max_abs(VectorXd(phi * xi)), tol.algebraic));
  out.push_back(make(g, "almost_contact.eta_phi", max_abs(VectorXd(phi.transpose() * eta)), tol.algebraic));
  out.push_back(make(g, "almost_contact.eta_xi", std::abs(eta.dot(xi) - 1.0), tol.algebraic));
  out.push_back(make(g, "almost_contact.trace_phi", std::abs(phi.trace()), tol.algebraic, CheckKind::Property));
  Eigen::JacobiSVD<MatrixXd> svd(phi);
  const auto& sv = svd.singularValues();
  const long rank = static_cast<long>((sv.array() > 1e-9).count());
  out.push_back(make(g, "almost_contact.rank_phi", static_cast<double>(std::labs(rank - (m - 1))), 0.0,
                     CheckKind::Property, std::to_string(rank)));
}

void measure_metric_compatibility(const StructurePoint& sp, const Tolerances& tol, std::vector<Measurement>& out) {
  const std::string g = "metric_compatibility";
  const MatrixXd& gm = sp.metric.g.value;
  const MatrixXd& phi = sp.phi.value;
  const VectorXd& eta = sp.eta.value;
  out.push_back(make(g, "metric_compatibility.phi",
                     max_abs(MatrixXd(phi.transpose() * gm * phi - gm + eta * eta.transpose())), tol.algebraic));
  out.push_back(make(g, "metric_compatibility.eta", max_abs(VectorXd(eta - gm * sp.xi.value)), tol.algebraic));
  const MatrixXd Phi = fundamental_two_form_jet(sp).value;
  out.push_back(make(g, "metric_compatibility.Phi_antisymmetric", max_abs(MatrixXd(Phi + Phi.transpose())),
                     tol.algebraic));
}

void measure_cosymplectic(const StructurePoint& sp, const Tolerances& tol, std::vector<Measurement>& out) {
  const std::string g = "cosymplectic";
  const std::size_t m = sp.dim();
  out.push_back(make(g, "cosymplectic.d_eta", max_abs(sp.d_eta), tol.differential, CheckKind::Property));
  out.push_back(make(g, "cosymplectic.d_Phi", geometry::exterior_derivative(fundamental_two_form_jet(sp)).max_abs(),
                     tol.differential, CheckKind::Property));
  double normality = 0.0, nphi = 0.0, nxi = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const VectorXd ei = unit(i, m);
    const VectorJet fi = VectorJet::constant(ei, m);
    for (std::size_t j = 0; j < m; ++j) {
      const VectorJet fj = VectorJet::constant(unit(j, m), m);
      normality = std::max(normality, max_abs(nijenhuis(sp, fi, fj)));
      nphi = std::max(nphi, max_abs(nabla_phi(sp, ei, fj)));
    }
    nxi = std::max(nxi, max_abs(sp.nabla(ei, sp.xi)));
  }
  out.push_back(make(g, "cosymplectic.normality", normality, tol.differential, CheckKind::Property));
  out.push_back(make(g, "cosymplectic.nabla_phi", nphi, tol.differential, CheckKind::Property));
  out.push_back(make(g, "cosymplectic.nabla_xi", nxi, tol.differential, CheckKind::Property));
}

VectorJet test_field(std::size_t index, const Point& p) {
  const auto m = static_cast<std::size_t>(p.size());
  VectorJet f{VectorXd::Zero(p.size()), MatrixXd::Zero(p.size(), p.size())};
  for (std::size_t i = 0; i < m; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const auto s = static_cast<Eigen::Index>((i + 1 + index) % m);
    const auto t = static_cast<Eigen::Index>((2 * i + index) % m);
    const double alpha = 0.3 + 0.1 * static_cast<double>((i + index) % 3);
    const double beta = 0.2 - 0.05 * static_cast<double>((i + 2 * index) % 4);
    // Y^i(x) = delta_ia + alpha x_s + beta x_t^2
    f.value(ii) = (i == index % m ? 1.0 : 0.0) + alpha * p(s) + beta * p(t) * p(t);
    f.d(ii, s) += alpha;
    f.d(ii, t) += 2.0 * beta * p(t);
  }
  return f;
}

void measure_connection(const AlmostContactStructure& S, const StructurePoint& sp, const Tolerances& tol,
                        std::vector<Measurement>& out) {
  const std::string g = "connection";
  constexpr std::size_t kFields = 4;
  std::vector<VectorJet> fields;
  for (std::size_t a = 0; a < kFields; ++a) fields.push_back(test_field(a, sp.p));
  double torsion = 0.0, compat = 0.0;
  for (const auto& X : fields) {
    for (const auto& Y : fields) {
      const VectorXd t = sp.nabla(X.value, Y) - sp.nabla(Y.value, X) - geometry::lie_bracket(X, Y);
      torsion = std::max(torsion, max_abs(t));
      for (const auto& Z : fields) {
        const VectorXd& x = X.value;
        const double x_gyz = Y.value.dot(sp.metric.g.along(x) * Z.value) +
                             Y.along(x).dot(sp.metric.g.value * Z.value) +
                             Y.value.dot(sp.metric.g.value * Z.along(x));
        const double r = x_gyz - sp.inner(sp.nabla(x, Y), Z.value) - sp.inner(Y.value, sp.nabla(x, Z));
        compat = std::max(compat, std::abs(r));
      }
    }
  }
  out.push_back(make(g, "connection.torsion_free", torsion, tol.differential));
  out.push_back(make(g, "connection.metric_compatible", compat, tol.differential));
  out.push_back(make(g, "connection.d_d_eta", geometry::exterior_derivative(sp.d_eta_jet).max_abs(), tol.algebraic));
  const auto& gt = sp.gamma.tensor();
  double asym = 0.0;
  for (std::size_t k = 0; k < gt.dim(); ++k)
    for (std::size_t i = 0; i < gt.dim(); ++i)
      for (std::size_t j = 0; j < gt.dim(); ++j) asym = std::max(asym, std::abs(gt(k, i, j) - gt(k, j, i)));
  out.push_back(make(g, "connection.christoffel_symmetric", asym, 0.0));
  out.push_back(make(g, "connection.metric_symmetric",
                     geometry::metric_asymmetry_at(S.base(), std::span<const double>(sp.p.data(), sp.dim())),
                     0.0));
}

CheckReport check_almost_contact(const AlmostContactStructure& S, const std::vector<Point>& points,
                                 const Tolerances& tol) {
  auto r = run_group_over(S, points, "almost_contact",
                          [&](const StructurePoint& sp, std::vector<Measurement>& ms) { measure_almost_contact(sp, tol, ms); });
  for (auto& c : r.checks) c.notes["phi_convention"] = to_string(S.convention());
  return r;
}

CheckReport check_metric_compatibility(const AlmostContactStructure& S, const std::vector<Point>& points,
                                       const Tolerances& tol) {
  return run_group_over(S, points, "metric_compatibility", [&](const StructurePoint& sp, std::vector<Measurement>& ms) {
    measure_metric_compatibility(sp, tol, ms);
  });
}

CheckReport check_cosymplectic(const AlmostContactStructure& S, const std::vector<Point>& points,
                               const Tolerances& tol) {
  return run_group_over(S, points, "cosymplectic",
                        [&](const StructurePoint& sp, std::vector<Measurement>& ms) { measure_cosymplectic(sp, tol, ms); });
}

}  // namespace subcheck::contact
