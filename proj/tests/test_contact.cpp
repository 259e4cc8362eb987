#include "doctest.h"

#include "subcheck/contact/structure.hpp"
#include "subcheck/dsl/eval.hpp"
#include "subcheck/dsl/parser.hpp"
#include "subcheck/suite/registry.hpp"
#include "subcheck/suite/sampling.hpp"

#include <cmath>

using namespace subcheck;
using namespace subcheck::contact;
using geometry::parse_grid;
using geometry::parse_list;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

std::vector<Point> points(std::size_t n, std::size_t dim, std::uint64_t seed = 42) {
  suite::Sampling s;
  s.points = n;
  s.seed = seed;
  return suite::sample_points(s, dim);
}

AlmostContactStructure ex1() { return suite::registry_entry("ex1").source; }
AlmostContactStructure ex2() { return suite::registry_entry("ex2").source; }

// Blair's Sasakian structure on R^3: normal and metric, but d eta != 0.
AlmostContactStructure sasakian_r3() {
  geometry::ChartManifold M({"x", "y", "z"}, parse_grid({{"0.25 + 0.25 * y^2", "0", "-0.25 * y"},
                                                        {"0", "0.25", "0"},
                                                        {"-0.25 * y", "0", "0.25"}}));
  return {std::move(M), parse_grid({{"0", "1", "0"}, {"-1", "0", "0"}, {"0", "y", "0"}}),
          {parse_list({"0", "0", "2"})}, {parse_list({"-0.5 * y", "0", "0.5"})}};
}

}  // namespace

TEST_CASE("construction is validated") {
  const auto M4 = suite::euclidean(4);
  CHECK_THROWS_AS(AlmostContactStructure(M4, parse_grid({{"0", "0", "0", "0"}, {"0", "0", "0", "0"},
                                                         {"0", "0", "0", "0"}, {"0", "0", "0", "0"}}),
                                         {parse_list({"0", "0", "0", "1"})}, {parse_list({"0", "0", "0", "1"})}),
                  geometry::ValidationError);
  const auto S = ex1();
  CHECK_THROWS_AS(S.with_eta({parse_list({"0", "0", "1"})}), geometry::ValidationError);
  CHECK_THROWS_AS(S.with_eta({parse_list({"0", "0", "0", "0", "w"})}), geometry::ValidationError);
  CHECK(phi_convention_from_string("rows") == PhiConvention::Rows);
  CHECK(phi_convention_from_string("cols") == PhiConvention::Columns);
  CHECK_THROWS_AS(phi_convention_from_string("diagonal"), std::invalid_argument);
}

TEST_CASE("almost contact examples") {
  const auto pts = points(32, 5);
  const auto r1 = check_almost_contact(ex1(), pts);
  for (const char* n : {"almost_contact.phi_squared", "almost_contact.phi_xi", "almost_contact.eta_phi",
                        "almost_contact.eta_xi"})
    CHECK(r1.residual(n) == 0.0);
  const auto r2 = check_almost_contact(ex2(), pts);
  CHECK(r2.all_pass());
  CHECK(r2.residual("almost_contact.phi_squared") < 1e-9);
  CHECK(r2.find("almost_contact.phi_squared")->notes.at("phi_convention") == "cols");
  CHECK(r2.find("almost_contact.rank_phi")->notes.at("value") == "4");
  CHECK(r2.residual("almost_contact.trace_phi") < 1e-9);

  // 2 phi: phi^2 = -4 on ker eta instead of -1
  const auto S = ex1();
  geometry::ExprGrid doubled = S.phi_written();
  for (auto& row : doubled)
    for (auto& e : row) e = dsl::make_binary(dsl::NodeKind::Mul, dsl::make_number(2), e);
  const auto r3 = check_almost_contact(S.with_phi(doubled), pts);
  CHECK(r3.residual("almost_contact.phi_squared") == 3.0);
  CHECK_FALSE(r3.find("almost_contact.phi_squared")->pass);
  CHECK(r3.find("almost_contact.phi_xi")->pass);

  // reading ex2's matrix the other way round breaks it
  CHECK_FALSE(check_almost_contact(ex2().with_convention(PhiConvention::Rows), pts).all_pass());
}

TEST_CASE("metric compatibility") {
  const auto pts = points(32, 5);
  CHECK(check_metric_compatibility(ex1(), pts).all_pass());
  const auto r = check_metric_compatibility(ex2(), pts);
  CHECK(r.all_pass());
  CHECK(r.residual("metric_compatibility.phi") < 1e-9);

  // with the flat metric, eta(X) = g(X, xi) fails wherever tau != 0
  const auto flat = ex2().with_metric(parse_grid(std::vector<std::vector<std::string>>(
      {{"1", "0", "0", "0", "0"}, {"0", "1", "0", "0", "0"}, {"0", "0", "1", "0", "0"}, {"0", "0", "0", "1", "0"},
       {"0", "0", "0", "0", "1"}})));
  const auto bad = check_metric_compatibility(flat, pts);
  CHECK_FALSE(bad.find("metric_compatibility.eta")->pass);
  // at a single point the residual is |tau| = |sin(x1 + x3)|
  Point p(5);
  p << 0.2, 0.1, 0.3, -0.4, 0.9;
  const auto one = check_metric_compatibility(flat, {p});
  CHECK(one.residual("metric_compatibility.eta") == doctest::Approx(std::abs(std::sin(0.5))).epsilon(1e-12));
}

TEST_CASE("fundamental two-form") {
  const auto pts = points(10, 5);
  MatrixXd expected = MatrixXd::Zero(5, 5);
  for (const auto& p : pts) {
    const MatrixXd Phi = fundamental_two_form_at(ex2(), p);
    CHECK((Phi + Phi.transpose()).lpNorm<Eigen::Infinity>() < 1e-9);
    // dx1^dx2 + dx3^dx4, up to the overall orientation of the wedge
    const double s = Phi(0, 1);
    CHECK(std::abs(s) == doctest::Approx(1.0));
    expected.setZero();
    expected(0, 1) = expected(2, 3) = s;
    expected(1, 0) = expected(3, 2) = -s;
    CHECK((Phi - expected).lpNorm<Eigen::Infinity>() < 1e-12);
    VectorXd xi = VectorXd::Unit(5, 4);
    CHECK((xi.transpose() * Phi).norm() < 1e-12);
  }
  // ex1: pairs x_i with y_i
  const MatrixXd P1 = fundamental_two_form_at(ex1(), pts[0]);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(P1(i, 2 + i)) == 1.0);
    CHECK(P1(i, 2 + i) == -P1(2 + i, i));
  }
  CHECK(P1.cwiseAbs().sum() == 4.0);
}

TEST_CASE("normality") {
  const auto pts = points(10, 5);
  std::vector<geometry::VectorField> basis;
  for (int i = 0; i < 5; ++i) basis.push_back(geometry::VectorField::constant(VectorXd::Unit(5, i)));
  double worst1 = 0, worst2 = 0, asym = 0;
  const geometry::VectorField W{parse_list({"x1 * x2", "sin(x3)", "1", "x4^2", "x1 - x5"})};
  for (const auto& p : pts)
    for (const auto& X : basis) {
      for (const auto& Y : basis) {
        worst1 = std::max(worst1, nijenhuis_at(ex1(), X, Y, p).norm());
        worst2 = std::max(worst2, nijenhuis_at(ex2(), X, Y, p).norm());
      }
      asym = std::max(asym, (nijenhuis_at(ex2(), X, W, p) + nijenhuis_at(ex2(), W, X, p)).norm());
    }
  CHECK(worst1 == 0.0);
  CHECK(worst2 < 1e-9);
  CHECK(asym == 0.0);

  // Sasakian R^3 is normal but not cosymplectic
  const auto S = sasakian_r3();
  const auto p3 = points(16, 3);
  CHECK(check_almost_contact(S, p3).all_pass());
  CHECK(check_metric_compatibility(S, p3).all_pass());
  const auto c = check_cosymplectic(S, p3);
  CHECK(c.find("cosymplectic.normality")->pass);
  CHECK_FALSE(c.find("cosymplectic.d_eta")->pass);
  CHECK(c.find("cosymplectic.d_Phi")->pass);  // Phi is a multiple of d eta
  CHECK_FALSE(c.find("cosymplectic.nabla_xi")->pass);
  CHECK_FALSE(c.find("cosymplectic.nabla_phi")->pass);
}

TEST_CASE("cosymplectic") {
  const auto pts = points(100, 5);
  for (const auto& S : {ex1(), ex2()}) {
    const auto r = check_cosymplectic(S, pts);
    CHECK(r.all_pass());
    for (const char* n : {"cosymplectic.d_eta", "cosymplectic.d_Phi", "cosymplectic.normality",
                          "cosymplectic.nabla_phi", "cosymplectic.nabla_xi"}) {
      REQUIRE(r.find(n));
      CHECK(r.residual(n) < 1e-8);
      CHECK(r.find(n)->points == 100);
    }
  }
  const auto r = check_cosymplectic(ex1(), pts);
  for (const auto& c : r.checks) CHECK(c.residual == 0.0);

  // eta = dz + x1 dx2 is contact-like
  const auto contact = ex1().with_eta({parse_list({"0", "x1", "0", "0", "1"})});
  const auto bad = check_cosymplectic(contact, pts);
  CHECK(bad.residual("cosymplectic.d_eta") == 1.0);
  CHECK_FALSE(bad.find("cosymplectic.d_eta")->pass);
}

TEST_CASE("nabla phi is tensorial in its argument") {
  // a structure with nonzero nabla phi, so the check is not vacuous
  const auto S = sasakian_r3();
  const auto pts = points(8, 3, 9);
  for (const auto& p : pts) {
    const auto sp = evaluate_structure(S, p);
    const auto env = S.base().jet_env(std::vector<double>(p.data(), p.data() + 3));
    const auto f = dsl::eval_jet(dsl::parse("x + 2"), env);
    for (std::size_t k = 0; k < 4; ++k) {
      const VectorJet Y = test_field(k, p);
      VectorJet fY;
      fY.value = f.value() * Y.value;
      fY.d = f.value() * Y.d + Y.value * f.grad().transpose();
      for (int i = 0; i < 3; ++i) {
        const VectorXd x = VectorXd::Unit(3, i);
        const VectorXd base = nabla_phi(sp, x, Y);
        CHECK((nabla_phi(sp, x, fY) - f.value() * base).norm() < 1e-12);
        CHECK((nabla_phi(sp, f.value() * x, Y) - f.value() * base).norm() < 1e-12);
      }
    }
    CHECK(nabla_phi(sp, VectorXd::Unit(3, 0), test_field(1, p)).norm() > 1e-3);
  }
}

TEST_CASE("connection group on the curved example") {
  const auto pts = points(64, 5);
  const auto report = run_kernel(pts, [&](std::size_t, const Point& p) {
    PointOutcome out;
    const auto S = ex2();
    const auto sp = evaluate_structure(S, p);
    run_group(out, "connection", [&](auto& ms) { measure_connection(S, sp, {}, ms); });
    return out;
  });
  CHECK(report.all_pass());
  CHECK(report.residual("connection.torsion_free") < 1e-8);
  CHECK(report.residual("connection.metric_compatible") < 1e-8);
  CHECK(report.residual("connection.d_d_eta") < 1e-9);
}
