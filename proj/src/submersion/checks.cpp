#include "subcheck/submersion/checks.hpp"

#include "subcheck/contact/structure.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace subcheck::submersion {

namespace {

using Frame_ = std::vector<VectorXd>;

class Sink {
 public:
  Sink(std::string group, std::vector<Measurement>& out) : group_(std::move(group)), out_(out) {}

  void add(const std::string& name, double residual, double tol, CheckKind kind = CheckKind::Identity,
           std::string label = {}) {
    out_.push_back({group_, group_ + "." + name, residual, tol, kind, std::move(label)});
  }

 private:
  std::string group_;
  std::vector<Measurement>& out_;
};

double max_abs(const MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool polarized(const SubmersionPoint& sp) { return sp.polarization() != Polarization::General; }

// Smooth extension of a tangent vector at p with nonzero first derivatives.
VectorJet bent_extension(const VectorXd& v, std::size_t salt) {
  const auto m = v.size();
  VectorJet f{v, MatrixXd::Zero(m, m)};
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index k = 0; k < m; ++k)
      f.d(i, k) = std::sin(1.0 + static_cast<double>(i) + 2.0 * static_cast<double>(k) +
                           3.0 * static_cast<double>(salt));
  return f;
}

// Horizontal-projected constant field through x.
VectorJet horizontal_ext(const SubmersionPoint& sp, const VectorXd& x) {
  return sp.horizontal_field(sp.constant(x));
}
VectorJet vertical_ext(const SubmersionPoint& sp, const VectorXd& u) { return sp.vertical_field(sp.constant(u)); }

VectorXd mean_curvature(const SubmersionPoint& sp) {
  VectorXd h = VectorXd::Zero(static_cast<Eigen::Index>(sp.m()));
  const auto& U = sp.vertical_frame();
  if (U.empty()) return h;
  for (const auto& u : U) h += sp.T(u, u);
  return h / static_cast<double>(U.size());
}

VectorXd horizontal_mean_curvature(const SubmersionPoint& sp) {
  VectorXd h = VectorXd::Zero(static_cast<Eigen::Index>(sp.m()));
  const auto& X = sp.horizontal_frame();
  if (X.empty()) return h;
  for (const auto& x : X) h += sp.A(x, x);
  return h / static_cast<double>(X.size());
}

}  // namespace

const std::vector<std::string>& submersion_groups() {
  static const std::vector<std::string> groups = {
      "riemannian_submersion", "projectors", "anti_invariance", "oneill",
      "lemmas", "second_fundamental_form", "tension", "integrability",
      "foliations", "totally_geodesic_map", "umbilical"};
  return groups;
}

void measure_rank(const MatrixXd& J, const Tolerances& tol, std::vector<Measurement>& out) {
  Sink s("riemannian_submersion", out);
  Eigen::JacobiSVD<MatrixXd> svd(J);
  const auto rank = (svd.singularValues().array() > tol.algebraic).count();
  s.add("rank", static_cast<double>(std::abs(J.rows() - rank)), 0.0, CheckKind::Property, std::to_string(rank));
}

void measure_riemannian_submersion(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out) {
  Sink s("riemannian_submersion", out);
  double r = 0.0;
  for (const auto& x : sp.horizontal_frame())
    for (const auto& y : sp.horizontal_frame())
      r = std::max(r, std::abs(sp.inner_target(sp.push(x), sp.push(y)) - sp.inner(x, y)));
  s.add("isometry", r, tol.algebraic, CheckKind::Property);
}

void measure_projectors(const SubmersionPoint& sp, const Tolerances&, std::vector<Measurement>& out) {
  Sink s("projectors", out);
  const MatrixXd& V = sp.V().value;
  const MatrixXd& H = sp.H().value;
  const MatrixXd& g = sp.source().metric.g.value;
  const auto m = static_cast<Eigen::Index>(sp.m());
  s.add("partition", max_abs(MatrixXd(V + H - MatrixXd::Identity(m, m))), kProjectorTolerance);
  s.add("idempotent", std::max(max_abs(MatrixXd(V * V - V)), max_abs(MatrixXd(H * H - H))), kProjectorTolerance);
  const MatrixXd gv = g * V;
  s.add("self_adjoint", max_abs(MatrixXd(gv - gv.transpose())), kProjectorTolerance);
  s.add("kills_vertical", max_abs(MatrixXd(sp.J().value * V)), kProjectorTolerance);
}

void measure_anti_invariance(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out) {
  Sink s("anti_invariance", out);
  double r = 0.0;
  for (const auto& u : sp.vertical_frame()) r = std::max(r, sp.norm(sp.V().value * (sp.phi() * u)));
  s.add("residual", r, tol.algebraic, CheckKind::Property);

  const XiClass xc = sp.xi_class();
  const double mixed = xc == XiClass::Mixed ? std::min(sp.xi_horizontal_norm(), sp.xi_vertical_norm()) : 0.0;
  s.add("xi_class", mixed, tol.algebraic, CheckKind::Classification, to_string(xc));

  const std::size_t mu = sp.mu_frame().size();
  const std::size_t n = sp.n();
  const double split = std::abs(static_cast<double>(mu + sp.phi_vertical_frame().size()) - static_cast<double>(n));
  s.add("mu_rank", split, 0.0, CheckKind::Classification, std::to_string(mu));

  // source dimension 2m+1
  const std::size_t half = (sp.m() - 1) / 2;
  const std::string dims = "(m=" + std::to_string(half) + ", n=" + std::to_string(n) + ")";
  switch (sp.polarization()) {
    case Polarization::PhiVerticalIsHorizontal:
      s.add("dimension_relation", std::abs(static_cast<double>(half) - static_cast<double>(n)), 0.0,
            CheckKind::Classification, (half == n ? "m = n " : "m != n ") + dims);
      break;
    case Polarization::PhiVerticalPlusXi:
      s.add("dimension_relation", std::abs(static_cast<double>(half + 1) - static_cast<double>(n)), 0.0,
            CheckKind::Classification, (half + 1 == n ? "m+1 = n " : "m+1 != n ") + dims);
      break;
    case Polarization::General:
      s.add("dimension_relation", 0.0, 0.0, CheckKind::Classification, "no relation applies " + dims);
      break;
  }
  s.add("polarization", 0.0, 0.0, CheckKind::Classification, to_string(sp.polarization()));
}

void measure_oneill(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out) {
  Sink s("oneill", out);
  const Frame_ all = sp.full_frame();
  const Frame_& U = sp.vertical_frame();
  const Frame_& X = sp.horizontal_frame();
  const MatrixXd& V = sp.V().value;
  const MatrixXd& H = sp.H().value;

  double t_norm = 0.0, a_norm = 0.0, reversal = 0.0, tens_t = 0.0, tens_a = 0.0;
  std::size_t salt = 0;
  for (const auto& d : all) {
    for (const auto& e : all) {
      const VectorXd t = sp.T(d, e);
      const VectorXd a = sp.A(d, e);
      t_norm = std::max(t_norm, sp.norm(t));
      a_norm = std::max(a_norm, sp.norm(a));
      reversal = std::max({reversal, sp.norm(V * sp.T(d, VectorXd(V * e))), sp.norm(H * sp.T(d, VectorXd(H * e))),
                           sp.norm(V * sp.A(d, VectorXd(V * e))), sp.norm(H * sp.A(d, VectorXd(H * e)))});
      const VectorJet bent = bent_extension(e, salt++);
      tens_t = std::max(tens_t, sp.norm(t - sp.T(d, bent)));
      tens_a = std::max(tens_a, sp.norm(a - sp.A(d, bent)));
    }
  }
  s.add("T_norm", t_norm, tol.algebraic, CheckKind::Property);
  s.add("A_norm", a_norm, tol.algebraic, CheckKind::Property);
  s.add("reversal", reversal, kProjectorTolerance);
  s.add("tensoriality_T", tens_t, tol.algebraic);
  s.add("tensoriality_A", tens_a, tol.algebraic);

  double sym = 0.0;
  for (const auto& u : U)
    for (const auto& w : U) sym = std::max(sym, sp.norm(sp.T(u, w) - sp.T(w, u)));
  s.add("T_symmetric_vertical", sym, tol.differential);

  double alt = 0.0, half = 0.0;
  for (const auto& x : X) {
    const VectorJet xf = horizontal_ext(sp, x);
    for (const auto& y : X) {
      const VectorJet yf = horizontal_ext(sp, y);
      const VectorXd axy = sp.A(x, yf);
      alt = std::max(alt, sp.norm(axy + sp.A(y, xf)));
      half = std::max(half, sp.norm(axy - 0.5 * (V * geometry::lie_bracket(xf, yf))));
    }
  }
  s.add("A_alternating", alt, tol.differential);
  s.add("A_half_bracket", half, tol.differential);

  double skew_t = 0.0, skew_a = 0.0;
  for (const auto& d : all)
    for (const auto& e : all)
      for (const auto& g : all) {
        skew_t = std::max(skew_t, std::abs(sp.inner(sp.T(d, e), g) + sp.inner(sp.T(d, g), e)));
        skew_a = std::max(skew_a, std::abs(sp.inner(sp.A(d, e), g) + sp.inner(sp.A(d, g), e)));
      }
  s.add("T_skew", skew_t, tol.differential);
  s.add("A_skew", skew_a, tol.differential);
}

void measure_lemmas(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out) {
  Sink s("lemmas", out);
  const XiClass xc = sp.xi_class();
  s.add("xi_case", 0.0, 0.0, CheckKind::Classification, to_string(xc));
  if (xc == XiClass::Mixed) return;
  const bool vertical_xi = xc == XiClass::Vertical;

  const Frame_& U = sp.vertical_frame();
  const Frame_& X = sp.horizontal_frame();
  const MatrixXd& phi = sp.phi();
  const VectorXd& xi = sp.xi();
  const auto& src = sp.source();

  double bc = 0.0, c3 = 0.0, c2 = 0.0, eta_b = 0.0, split = 0.0;
  for (const auto& x : X) {
    const VectorXd bx = sp.B(x), cx = sp.C(x);
    split = std::max(split, sp.norm(bx + cx - phi * x));
    bc = std::max(bc, sp.norm(sp.B(cx)));
    c3 = std::max(c3, sp.norm(sp.C(sp.C(cx)) + cx));
    const VectorXd c2x = sp.C(cx);
    const VectorXd expected = vertical_xi ? VectorXd(-x - phi * bx) : VectorXd(phi * (phi * x) - phi * bx);
    c2 = std::max(c2, sp.norm(c2x - expected));
    eta_b = std::max(eta_b, std::abs(sp.eta().dot(bx)));
  }
  s.add("B_plus_C", split, tol.algebraic);
  s.add("BCX", bc, tol.algebraic);
  s.add("C3X", c3, tol.algebraic);
  s.add("C2X", c2, tol.algebraic);
  if (vertical_xi) s.add("eta_BX", eta_b, tol.algebraic);

  double c_phi = 0.0, b_phi = 0.0;
  for (const auto& u : U) {
    const VectorXd pu = phi * u;
    c_phi = std::max(c_phi, sp.norm(sp.C(pu)));
    const VectorXd expected = vertical_xi ? VectorXd(-u + sp.eta().dot(u) * xi) : VectorXd(-u);
    b_phi = std::max(b_phi, sp.norm(sp.B(pu) - expected));
  }
  s.add("C_phiV", c_phi, tol.algebraic);
  s.add("B_phiV", b_phi, tol.algebraic);

  double a_xi = 0.0, t_xi = 0.0, g_c = 0.0, nabla_c = 0.0, nabla_phi = 0.0;
  for (const auto& x : X) {
    a_xi = std::max(a_xi, sp.norm(sp.A(x, src.xi)));
    for (const auto& u : U) g_c = std::max(g_c, std::abs(sp.inner(sp.C(x), phi * u)));
    for (const auto& y : X) {
      const VectorJet yf = horizontal_ext(sp, y);
      const VectorJet cy = sp.C_field(yf);
      for (const auto& u : U) {
        const double lhs = sp.inner(sp.nabla(x, cy), phi * u);
        const double rhs = -sp.inner(cy.value, phi * sp.A(x, vertical_ext(sp, u)));
        nabla_c = std::max(nabla_c, std::abs(lhs - rhs));
      }
      const VectorXd nxy = sp.nabla(x, yf);
      VectorXd r = nxy + phi * sp.nabla(x, sp.phi_field(yf));
      if (!vertical_xi) r -= sp.eta().dot(nxy) * xi;
      nabla_phi = std::max(nabla_phi, sp.norm(r));
    }
  }
  for (const auto& u : U) t_xi = std::max(t_xi, sp.norm(sp.T(u, src.xi)));
  s.add("A_X_xi", a_xi, tol.differential);
  s.add("T_U_xi", t_xi, tol.differential);
  s.add("g_CX_phiU", g_c, tol.algebraic);
  s.add("nabla_CY_phiU", nabla_c, tol.differential);
  s.add("nabla_phi_horizontal", nabla_phi, tol.differential);

  if (polarized(sp)) {
    double comm = 0.0;
    for (const auto& v : U)
      for (const auto& w : U) comm = std::max(comm, sp.norm(sp.T(v, VectorXd(phi * w)) - phi * sp.T(v, w)));
    s.add("T_phi_commute", comm, tol.differential);
  }
}

void measure_second_fundamental_form(const SubmersionPoint& sp, const Tolerances& tol,
                                     std::vector<Measurement>& out) {
  Sink s("second_fundamental_form", out);
  double hz = 0.0;
  for (const auto& x : sp.horizontal_frame())
    for (const auto& y : sp.horizontal_frame()) hz = std::max(hz, sp.norm_target(sp.second_fundamental_form(x, y)));
  s.add("horizontal_zero", hz, tol.differential);

  constexpr std::size_t kFields = 4;
  std::vector<VectorJet> fields;
  for (std::size_t a = 0; a < kFields; ++a) fields.push_back(contact::test_field(a, sp.source().p));
  double sym = 0.0;
  for (const auto& x : fields)
    for (const auto& y : fields)
      sym = std::max(sym, sp.norm_target(sp.second_fundamental_form(x.value, y) -
                                         sp.second_fundamental_form(y.value, x)));
  s.add("symmetric", sym, tol.differential);
}

void measure_tension(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out) {
  Sink s("tension", out);
  VectorXd tau = VectorXd::Zero(static_cast<Eigen::Index>(sp.n()));
  for (const auto& e : sp.full_frame()) tau += sp.second_fundamental_form(e, e);
  const VectorXd h = mean_curvature(sp);
  const double k = static_cast<double>(sp.vertical_frame().size());
  s.add("tau_norm", sp.norm_target(tau), tol.differential, CheckKind::Property);
  s.add("mean_curvature", sp.norm(h), tol.differential, CheckKind::Property);
  s.add("tau_vs_mean", sp.norm_target(tau + k * sp.push(h)), tol.differential);
  if (polarized(sp)) {
    double trace = 0.0;
    for (const auto& v : sp.vertical_frame()) {
      double t = 0.0;
      for (const auto& e : sp.vertical_frame()) t += sp.inner(sp.phi() * sp.T(v, e), e);
      trace = std::max(trace, std::abs(t));
    }
    s.add("trace_phiT", trace, tol.differential, CheckKind::Property);
  }
}

void measure_integrability(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out) {
  Sink s("integrability", out);
  const Frame_& U = sp.vertical_frame();
  const Frame_& X = sp.horizontal_frame();
  const MatrixXd& phi = sp.phi();
  const MatrixXd& V = sp.V().value;

  double direct = 0.0, iii = 0.0, ii = 0.0, cor_a = 0.0, cor_ii = 0.0;
  for (const auto& x : X) {
    const VectorJet xf = horizontal_ext(sp, x);
    for (const auto& y : X) {
      const VectorJet yf = horizontal_ext(sp, y);
      direct = std::max(direct, sp.norm(V * geometry::lie_bracket(xf, yf)));
      const VectorXd bx = sp.B(x), by = sp.B(y), cx = sp.C(x), cy = sp.C(y);
      const VectorXd lhs_vec = sp.A(x, by) - sp.A(y, bx);
      const VectorXd sff_diff = sp.second_fundamental_form(y, bx) - sp.second_fundamental_form(x, by);
      for (const auto& v : U) {
        const VectorXd vf = v;
        const VectorXd pv = phi * v;
        const double rhs = sp.inner(cy, phi * sp.A(x, vf)) - sp.inner(cx, phi * sp.A(y, vf));
        iii = std::max(iii, std::abs(sp.inner(lhs_vec, pv) - rhs));
        ii = std::max(ii, std::abs(sp.inner_target(sff_diff, sp.push(pv)) - rhs));
      }
      if (polarized(sp)) {
        cor_a = std::max(cor_a, sp.norm(sp.A(x, VectorXd(phi * y)) - sp.A(y, VectorXd(phi * x))));
        cor_ii = std::max(cor_ii, sp.norm_target(sp.second_fundamental_form(y, VectorXd(phi * x)) -
                                                 sp.second_fundamental_form(x, VectorXd(phi * y))));
      }
    }
  }
  s.add("direct", direct, tol.differential, CheckKind::Property);
  s.add("condition_ii", ii, tol.differential, CheckKind::Property);
  s.add("condition_iii", iii, tol.differential, CheckKind::Property);
  if (polarized(sp)) {
    s.add("corollary_A", cor_a, tol.differential, CheckKind::Property);
    s.add("corollary_ii", cor_ii, tol.differential, CheckKind::Property);
  }
}

void measure_foliations(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out) {
  Sink s("foliations", out);
  const Frame_& U = sp.vertical_frame();
  const Frame_& X = sp.horizontal_frame();
  const MatrixXd& phi = sp.phi();
  const MatrixXd& V = sp.V().value;
  const MatrixXd& H = sp.H().value;
  const bool pol = polarized(sp);

  double h_direct = 0.0, h_ii = 0.0, h_iii = 0.0, h_cor_a = 0.0, h_cor_ii = 0.0;
  for (const auto& x : X) {
    for (const auto& y : X) {
      const VectorJet yf = horizontal_ext(sp, y);
      h_direct = std::max(h_direct, sp.norm(V * sp.nabla(x, yf)));
      const VectorXd by = sp.B(y), cy = sp.C(y), py = phi * y;
      const VectorXd sff = sp.second_fundamental_form(x, py);
      for (const auto& v : U) {
        const VectorXd pv = phi * v;
        const double c_term = sp.inner(cy, phi * sp.A(x, v));
        h_ii = std::max(h_ii, std::abs(sp.inner(sp.A(x, by), pv) - c_term));
        h_iii = std::max(h_iii, std::abs(sp.inner_target(sff, sp.push(pv)) + c_term));
      }
      if (pol) {
        h_cor_a = std::max(h_cor_a, sp.norm(sp.A(x, py)));
        h_cor_ii = std::max(h_cor_ii, sp.norm_target(sff));
      }
    }
  }

  double v_direct = 0.0, v_ii = 0.0, v_iii = 0.0, v_cor_t = 0.0, v_cor_ii = 0.0;
  for (const auto& v : U) {
    for (const auto& w : U) {
      v_direct = std::max(v_direct, sp.norm(H * sp.nabla(v, vertical_ext(sp, w))));
      if (pol) v_cor_t = std::max(v_cor_t, sp.norm(sp.T(v, VectorXd(phi * w))));
    }
    for (const auto& x : X) {
      const VectorXd sff = sp.second_fundamental_form(v, VectorXd(phi * x));
      for (const auto& w : U) v_ii = std::max(v_ii, std::abs(sp.inner_target(sff, sp.push(phi * w))));
      const VectorXd z = sp.T(v, sp.B(x)) + sp.A(sp.C(x), v);
      v_iii = std::max(v_iii, sp.norm(z - sp.project_mu(z)));
      if (pol) v_cor_ii = std::max(v_cor_ii, sp.norm_target(sff));
    }
  }

  s.add("horizontal_direct", h_direct, tol.differential, CheckKind::Property);
  s.add("horizontal_ii", h_ii, tol.differential, CheckKind::Property);
  s.add("horizontal_iii", h_iii, tol.differential, CheckKind::Property);
  s.add("vertical_direct", v_direct, tol.differential, CheckKind::Property);
  s.add("vertical_ii", v_ii, tol.differential, CheckKind::Property);
  s.add("vertical_iii", v_iii, tol.differential, CheckKind::Property);
  s.add("locally_product_direct", std::max(h_direct, v_direct), tol.differential, CheckKind::Property);
  s.add("locally_product", std::max(h_iii, v_ii), tol.differential, CheckKind::Property);
  if (pol) {
    s.add("horizontal_corollary_A", h_cor_a, tol.differential, CheckKind::Property);
    s.add("horizontal_corollary_ii", h_cor_ii, tol.differential, CheckKind::Property);
    s.add("vertical_corollary_T", v_cor_t, tol.differential, CheckKind::Property);
    s.add("vertical_corollary_ii", v_cor_ii, tol.differential, CheckKind::Property);
    s.add("locally_product_corollary", std::max(h_cor_a, v_cor_t), tol.differential, CheckKind::Property);
  }
}

void measure_totally_geodesic_map(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out) {
  Sink s("totally_geodesic_map", out);
  double direct = 0.0;
  const Frame_ all = sp.full_frame();
  for (const auto& a : all)
    for (const auto& b : all) direct = std::max(direct, sp.norm_target(sp.second_fundamental_form(a, b)));
  s.add("direct", direct, tol.differential, CheckKind::Property);
  if (!polarized(sp)) return;

  const Frame_& U = sp.vertical_frame();
  const MatrixXd& phi = sp.phi();
  double t_phi = 0.0, a_phi = 0.0, cross_v = 0.0, cross_m = 0.0;
  for (const auto& w : U) {
    for (const auto& v : U) {
      const VectorXd t = sp.T(w, VectorXd(phi * v));
      t_phi = std::max(t_phi, sp.norm(t));
      cross_v = std::max(cross_v, sp.norm_target(sp.second_fundamental_form(w, v) - sp.push(phi * t)));
    }
    for (const auto& x : sp.horizontal_frame()) {
      const VectorXd a = sp.A(x, VectorXd(phi * w));
      a_phi = std::max(a_phi, sp.norm(a));
      cross_m = std::max(cross_m, sp.norm_target(sp.second_fundamental_form(x, w) - sp.push(phi * a)));
    }
  }
  s.add("T_phi", t_phi, tol.differential, CheckKind::Property);
  s.add("A_phi", a_phi, tol.differential, CheckKind::Property);
  s.add("conditions", std::max(t_phi, a_phi), tol.differential, CheckKind::Property);
  s.add("cross_vertical", cross_v, tol.differential);
  s.add("cross_mixed", cross_m, tol.differential);
}

void measure_umbilical(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out) {
  Sink s("umbilical", out);
  const double t = tol.differential;

  const VectorXd h = mean_curvature(sp);
  double dev = 0.0;
  for (const auto& u : sp.vertical_frame())
    for (const auto& w : sp.vertical_frame()) dev = std::max(dev, sp.norm(sp.T(u, w) - sp.inner(u, w) * h));
  const double hn = sp.norm(h);
  const bool proper = dev <= t && hn > t;
  s.add("mean_curvature", hn, t, CheckKind::Property);
  s.add("deviation", dev, t, CheckKind::Property);
  s.add("T_xi_xi", sp.norm(sp.T(sp.xi(), sp.source().xi)), t);
  s.add("not_proper", proper ? 1.0 : 0.0, 0.0, CheckKind::Identity,
        proper ? "proper totally umbilical" : "not proper totally umbilical");

  const VectorXd hh = horizontal_mean_curvature(sp);
  double hdev = 0.0;
  for (const auto& x : sp.horizontal_frame())
    for (const auto& y : sp.horizontal_frame())
      hdev = std::max(hdev, sp.norm(sp.A(x, horizontal_ext(sp, y)) - sp.inner(x, y) * hh));
  const double hhn = sp.norm(hh);
  const bool hproper = hdev <= t && hhn > t;
  s.add("horizontal_mean_curvature", hhn, t, CheckKind::Property);
  s.add("horizontal_deviation", hdev, t, CheckKind::Property);
  s.add("horizontal_not_proper", hproper ? 1.0 : 0.0, 0.0, CheckKind::Identity,
        hproper ? "proper totally umbilical" : "not proper totally umbilical");
}

void measure_submersion(const SubmersionSpec& S, const Point& p, const std::vector<std::string>& groups,
                        const Tolerances& tol, PointOutcome& out) {
  const auto wanted = [&](const std::string& g) { return std::find(groups.begin(), groups.end(), g) != groups.end(); };
  std::vector<std::string> active;
  for (const auto& g : submersion_groups())
    if (wanted(g)) active.push_back(g);
  if (active.empty()) return;

  std::optional<SubmersionPoint> sp;
  try {
    sp.emplace(S, p, tol);
  } catch (const std::exception& e) {
    if (wanted("riemannian_submersion"))
      run_group(out, "riemannian_submersion",
                [&](std::vector<Measurement>& ms) { measure_rank(differential_at(S, p), tol, ms); });
    for (const auto& g : active) out.issues.push_back({g, e.what(), false});
    return;
  }
  if (sp->degenerate()) {
    for (const auto& g : active) out.issues.push_back({g, sp->degenerate_reason(), true});
    return;
  }
  const SubmersionPoint& P = *sp;
  using Fn = void (*)(const SubmersionPoint&, const Tolerances&, std::vector<Measurement>&);
  static const std::vector<std::pair<std::string, Fn>> table = {
      {"projectors", measure_projectors},
      {"anti_invariance", measure_anti_invariance},
      {"oneill", measure_oneill},
      {"lemmas", measure_lemmas},
      {"second_fundamental_form", measure_second_fundamental_form},
      {"tension", measure_tension},
      {"integrability", measure_integrability},
      {"foliations", measure_foliations},
      {"totally_geodesic_map", measure_totally_geodesic_map},
      {"umbilical", measure_umbilical},
  };
  if (wanted("riemannian_submersion"))
    run_group(out, "riemannian_submersion", [&](std::vector<Measurement>& ms) {
      measure_rank(P.J().value, tol, ms);
      measure_riemannian_submersion(P, tol, ms);
    });
  for (const auto& [name, fn] : table)
    if (wanted(name)) run_group(out, name, [&, f = fn](std::vector<Measurement>& ms) { f(P, tol, ms); });
}

void add_submersion_equivalences(CheckReport& report, const Tolerances& tol) {
  const double v = tol.differential;
  add_equivalence(report, "integrability.equivalence",
                  {"integrability.direct", "integrability.condition_ii", "integrability.condition_iii",
                   "integrability.corollary_A", "integrability.corollary_ii"},
                  v);
  add_equivalence(report, "foliations.horizontal_equivalence",
                  {"foliations.horizontal_direct", "foliations.horizontal_ii", "foliations.horizontal_iii",
                   "foliations.horizontal_corollary_A", "foliations.horizontal_corollary_ii"},
                  v);
  add_equivalence(report, "foliations.vertical_equivalence",
                  {"foliations.vertical_direct", "foliations.vertical_ii", "foliations.vertical_iii",
                   "foliations.vertical_corollary_T", "foliations.vertical_corollary_ii"},
                  v);
  add_equivalence(report, "foliations.locally_product_equivalence",
                  {"foliations.locally_product_direct", "foliations.locally_product",
                   "foliations.locally_product_corollary"},
                  v);
  add_equivalence(report, "totally_geodesic_map.equivalence",
                  {"totally_geodesic_map.direct", "totally_geodesic_map.conditions"}, v);
  add_equivalence(report, "tension.harmonic_equivalence",
                  {"tension.tau_norm", "tension.mean_curvature", "tension.trace_phiT"}, v);
}

CheckReport check_submersion(const SubmersionSpec& S, const std::vector<Point>& points,
                             const std::vector<std::string>& groups, const Tolerances& tol, ExecutionPolicy policy) {
  auto report = run_kernel(
      points,
      [&](std::size_t, const Point& p) {
        PointOutcome out;
        measure_submersion(S, p, groups, tol, out);
        return out;
      },
      policy);
  add_submersion_equivalences(report, tol);
  return report;
}

CheckReport check_riemannian_submersion(const SubmersionSpec& S, const std::vector<Point>& points,
                                        const Tolerances& tol) {
  return check_submersion(S, points, {"riemannian_submersion", "projectors"}, tol);
}
CheckReport check_anti_invariance(const SubmersionSpec& S, const std::vector<Point>& points, const Tolerances& tol) {
  return check_submersion(S, points, {"anti_invariance"}, tol);
}
CheckReport check_lemma_suite(const SubmersionSpec& S, const std::vector<Point>& points, const Tolerances& tol) {
  return check_submersion(S, points, {"oneill", "lemmas"}, tol);
}
CheckReport tension_and_harmonicity(const SubmersionSpec& S, const std::vector<Point>& points,
                                    const Tolerances& tol) {
  return check_submersion(S, points, {"tension"}, tol);
}
CheckReport check_integrability(const SubmersionSpec& S, const std::vector<Point>& points, const Tolerances& tol) {
  return check_submersion(S, points, {"integrability"}, tol);
}
CheckReport check_foliations(const SubmersionSpec& S, const std::vector<Point>& points, const Tolerances& tol) {
  return check_submersion(S, points, {"foliations"}, tol);
}
CheckReport check_totally_geodesic_map(const SubmersionSpec& S, const std::vector<Point>& points,
                                       const Tolerances& tol) {
  return check_submersion(S, points, {"totally_geodesic_map"}, tol);
}
CheckReport check_umbilical(const SubmersionSpec& S, const std::vector<Point>& points, const Tolerances& tol) {
  return check_submersion(S, points, {"umbilical"}, tol);
}

ONeillNorms max_oneill_norms(const SubmersionSpec& S, const std::vector<Point>& points, const Tolerances& tol) {
  ONeillNorms out;
  for (const auto& p : points) {
    const SubmersionPoint sp(S, p, tol);
    const auto all = sp.full_frame();
    for (const auto& d : all)
      for (const auto& e : all) {
        out.T = std::max(out.T, sp.norm(sp.T(d, e)));
        out.A = std::max(out.A, sp.norm(sp.A(d, e)));
      }
  }
  return out;
}

}  // namespace subcheck::submersion
