// One line per acceptance criterion. Tolerances are fixed here, not read
// from any configuration, and the binary fails if any criterion fails.

#include "corpus.hpp"
#include "oracles.hpp"

#include "subcheck/contact/structure.hpp"
#include "subcheck/dsl/eval.hpp"
#include "subcheck/dsl/parser.hpp"
#include "subcheck/geometry/connection.hpp"
#include "subcheck/submersion/checks.hpp"
#include "subcheck/suite/cli.hpp"
#include "subcheck/suite/registry.hpp"
#include "subcheck/suite/runner.hpp"
#include "subcheck/suite/sampling.hpp"
#include "subcheck/suite/spec_file.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace subcheck;
using namespace subcheck::suite;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kCosymplectic = 1e-8;
constexpr double kLemma = 1e-8;
constexpr double kTensoriality = 1e-9;
constexpr double kOracle = 1e-6;
constexpr double kConnection = 1e-8;
constexpr double kDd = 1e-9;
constexpr double kFlat = 1e-9;
constexpr double kCross = 1e-8;
constexpr double kEquivalence = 1e-8;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Sampling sampling(std::size_t points, std::uint64_t seed = 42) {
  Sampling s;
  s.points = points;
  s.seed = seed;
  return s;
}

CheckReport run(const Problem& p, const std::string& groups, std::size_t points) {
  return run_suite(p, parse_selection(p, groups), sampling(points), ExecutionPolicy::Parallel);
}

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", x);
  return b;
}

double max_residual(const CheckReport& r, const std::function<bool(const std::string&)>& which) {
  double worst = 0;
  for (const auto& c : r.checks)
    if (which(c.name)) worst = std::max(worst, std::isnan(c.residual) ? INFINITY : c.residual);
  return worst;
}

std::string label(const CheckReport& r, const std::string& name) {
  const auto* c = r.find(name);
  if (!c) return "<missing>";
  auto it = c->notes.find("value");
  return it == c->notes.end() ? "<no value>" : it->second;
}

std::set<std::string> failing(const CheckReport& r, const std::string& prefix) {
  std::set<std::string> out;
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0 && !c.pass) out.insert(c.name);
  return out;
}

int status_of(const std::string& args) {
  const int s = std::system((std::string(SUBCHECK_CLI) + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(s);
}

// 1
Outcome cosymplectic_suite() {
  Outcome o;
  for (const char* ex : {"ex1", "ex2"}) {
    const auto r = run(registry_entry(ex), "cosymplectic", 100);
    for (const char* n : {"cosymplectic.d_eta", "cosymplectic.d_Phi", "cosymplectic.normality",
                          "cosymplectic.nabla_phi", "cosymplectic.nabla_xi"}) {
      const auto* c = r.find(n);
      o.require(c && c->points == 100 && c->residual < kCosymplectic, std::string(ex) + " " + n);
    }
    o.detail << " " << ex << " max " << fmt(max_residual(r, [](auto&) { return true; }));
  }
  return o;
}

// 2
Outcome dimension_theorems() {
  Outcome o;
  for (const char* ex : {"ex3", "ex4"}) {
    const auto r = run(registry_entry(ex), "anti_invariance", 64);
    o.require(r.all_pass(), std::string(ex) + " anti_invariance");
    o.require(label(r, "anti_invariance.xi_class") == "vertical", std::string(ex) + " xi vertical");
    o.require(label(r, "anti_invariance.mu_rank") == "0", std::string(ex) + " mu rank 0");
    o.require(label(r, "anti_invariance.dimension_relation") == "m = n (m=2, n=2)", std::string(ex) + " m = n = 2");
    o.require(label(r, "anti_invariance.polarization") == "phi(ker F*) = (ker F*)^perp", std::string(ex) + " C = 0");
  }
  const auto r5 = run(registry_entry("ex5"), "anti_invariance", 64);
  o.require(label(r5, "anti_invariance.mu_rank") == "2", "ex5 mu rank 2");
  o.require(r5.all_pass(), "ex5 anti_invariance");
  const auto r6 = run(registry_entry("ex6"), "anti_invariance", 64);
  o.require(r6.all_pass(), "ex6 anti_invariance");
  o.require(label(r6, "anti_invariance.xi_class") == "horizontal", "ex6 xi horizontal");
  o.require(label(r6, "anti_invariance.dimension_relation") == "m+1 = n (m=2, n=3)", "ex6 m+1 = n");
  o.detail << " ex3/ex4 vertical mu=0 m=n=2; ex5 mu=" << label(r5, "anti_invariance.mu_rank") << "; ex6 "
           << label(r6, "anti_invariance.xi_class") << ", " << label(r6, "anti_invariance.dimension_relation");
  return o;
}

// 3: O'Neill relations, the B/C lemmas, the xi lemmas and the S15 commutation
Outcome lemma_suite() {
  Outcome o;
  std::size_t count = 0;
  for (const char* ex : {"ex3", "ex4", "ex5", "ex6"}) {
    const auto r = run(registry_entry(ex), "oneill,lemmas,second_fundamental_form", 64);
    o.require(r.all_pass(), std::string(ex) + " all pass");
    const double worst = max_residual(r, [](auto&) { return true; });
    o.require(worst < kLemma, std::string(ex) + " residuals < 1e-8");
    for (const auto& c : r.checks) o.require(c.points == 64 || c.points == 0, ex + (" point count " + c.name));
    count += r.checks.size();
    o.detail << " " << ex << " " << fmt(worst);
  }
  o.detail << " (" << count << " checks)";
  return o;
}

// 4
Outcome tensoriality() {
  Outcome o;
  for (const char* ex : {"ex3", "ex6"}) {
    const auto r = run(registry_entry(ex), "oneill", 32);
    const double t = r.residual("oneill.tensoriality_T"), a = r.residual("oneill.tensoriality_A");
    o.require(t < kTensoriality && a < kTensoriality, std::string(ex) + " tensoriality");
    o.require(r.find("oneill.tensoriality_T")->points == 32, std::string(ex) + " 32 points");
    o.detail << " " << ex << " T " << fmt(t) << " A " << fmt(a);
  }
  return o;
}

// 5
Outcome oracles() {
  Outcome o;
  const auto M = registry_entry("ex2").source.base();
  const oracle::MatrixFn g = [&](const VectorXd& x) {
    return geometry::metric_at(M, std::vector<double>(x.data(), x.data() + x.size())).g;
  };
  double worst_gamma = 0;
  for (const auto& p : sample_points(sampling(20), 5)) {
    const auto G = geometry::christoffel_at(M, std::vector<double>(p.data(), p.data() + 5));
    const auto ref = oracle::christoffel(g, p, 1e-5);
    for (std::size_t k = 0; k < 5; ++k)
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) worst_gamma = std::max(worst_gamma, std::abs(G(k, i, j) - ref[k](i, j)));
  }
  o.require(worst_gamma < kOracle, "christoffel");

  corpus::Generator gen{std::mt19937_64(99), 4};
  std::uniform_real_distribution<double> u(-1, 1);
  double worst_grad = 0, worst_hess = 0;
  for (int n = 0; n < 100; ++n) {
    const auto e = dsl::parse(gen.expr(1 + n % 3));
    VectorXd p(4);
    for (auto& c : p) c = u(gen.rng);
    const auto seeds = jets::seed_point(std::span<const double>(p.data(), 4));
    dsl::Environment<jets::Jet2> env;
    for (int i = 0; i < 4; ++i) env["x" + std::to_string(i + 1)] = seeds[i];
    const auto j = dsl::eval_jet(e, env);
    const oracle::Scalar f = [&](const VectorXd& x) {
      return dsl::eval_value(e, {{"x1", x[0]}, {"x2", x[1]}, {"x3", x[2]}, {"x4", x[3]}});
    };
    worst_grad = std::max(worst_grad, (j.grad() - oracle::gradient(f, p)).lpNorm<Eigen::Infinity>());
    worst_hess = std::max(worst_hess, (j.hess() - oracle::hessian(f, p)).lpNorm<Eigen::Infinity>());
  }
  o.require(worst_grad < kOracle && worst_hess < kOracle, "jet corpus");
  o.detail << " christoffel " << fmt(worst_gamma) << ", 100 expressions grad " << fmt(worst_grad) << " hess "
           << fmt(worst_hess);
  return o;
}

// 6
Outcome connection_axioms() {
  Outcome o;
  const auto r = run(registry_entry("ex2"), "connection", 64);
  const double t = r.residual("connection.torsion_free"), m = r.residual("connection.metric_compatible"),
               d = r.residual("connection.d_d_eta");
  o.require(t < kConnection, "torsion");
  o.require(m < kConnection, "metric compatibility");
  o.require(d < kDd, "d o d");
  // the metric really is curved here
  const auto G = geometry::christoffel_at(registry_entry("ex2").source.base(), std::vector<double>{0.1, 0, 0.2, 0, 0});
  o.require(G.tensor().max_abs() > 0.1, "non-flat metric");
  o.detail << " torsion " << fmt(t) << ", metric " << fmt(m) << ", dd " << fmt(d);
  return o;
}

// 7
Outcome map_theorems() {
  Outcome o;
  for (const char* ex : {"ex3", "ex6"}) {
    const auto p = registry_entry(ex);
    const auto r = run(p, "oneill,tension,foliations,totally_geodesic_map,umbilical", 64);
    o.require(failing(r, "totally_geodesic_map.").empty(), std::string(ex) + " totally geodesic");
    o.require(failing(r, "tension.").empty(), std::string(ex) + " tension");
    o.require(failing(r, "foliations.").empty(), std::string(ex) + " foliations");
    o.require(failing(r, "umbilical.").empty(), std::string(ex) + " umbilical");
    o.require(r.find("foliations.locally_product") && r.find("foliations.locally_product")->pass,
              std::string(ex) + " locally product");
    for (const char* n : {"oneill.T_norm", "oneill.A_norm", "tension.tau_norm"})
      o.require(r.residual(n) < kFlat, std::string(ex) + " " + n);
    for (const char* n : {"totally_geodesic_map.cross_vertical", "totally_geodesic_map.cross_mixed"})
      o.require(r.find(n) && r.residual(n) < kCross, std::string(ex) + " " + n);
    o.detail << " " << ex << " |T| " << fmt(r.residual("oneill.T_norm")) << " |A| "
             << fmt(r.residual("oneill.A_norm")) << " |tau| " << fmt(r.residual("tension.tau_norm"));
  }
  return o;
}

// 8
Outcome equivalences() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& ex : registry_names()) {
    const auto p = registry_entry(ex);
    if (!p.submersion) continue;  // no map, nothing to compare
    const auto r = run_suite(p, parse_selection(p, "all"), sampling(64), ExecutionPolicy::Parallel);
    for (const auto& c : r.checks) {
      if (c.name.find("equivalence") == std::string::npos) continue;
      ++n;
      o.require(c.pass && c.tolerance == kEquivalence, ex + " " + c.name);
    }
  }
  o.require(n == 4 * 6, "expected six equivalence entries per map example");
  o.detail << " " << n << " equivalence entries on ex3..ex6, all co-occurring";
  return o;
}

// 9
Outcome loader_and_cli() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "subcheck_acceptance";
  std::filesystem::create_directories(dir);
  const auto path = dir / "ex3.json";
  std::ofstream(path) << problem_to_json(registry_entry("ex3"));
  const Problem file = load_spec(path), reg = registry_entry("ex3");
  const auto a = run_suite(file, parse_selection(file, "all"), file.sampling);
  const auto b = run_suite(reg, parse_selection(reg, "all"), reg.sampling);
  bool same = a.checks.size() == b.checks.size();
  for (std::size_t i = 0; same && i < a.checks.size(); ++i)
    same = a.checks[i].name == b.checks[i].name &&
           std::memcmp(&a.checks[i].residual, &b.checks[i].residual, sizeof(double)) == 0;
  o.require(same, "bit-identical residuals");

  o.require(status_of("verify --example ex3") == 0, "exit 0");
  o.require(status_of("verify --example ex2 --phi-convention rows") == 1, "exit 1");
  o.require(status_of("verify --example ex0") == 2, "exit 2 unknown example");
  o.require(status_of("verify --spec " + (dir / "missing.json").string()) == 2, "exit 2 missing file");

  std::string text = problem_to_json(registry_entry("ex3"));
  const std::string needle = "\"metric\": [\n      [\n        \"1\"";
  const auto at = text.find(needle);
  o.require(at != std::string::npos, "locate metric[0][0]");
  if (at != std::string::npos) text.replace(at + needle.size() - 3, 3, "\"1 + * 2\"");
  std::size_t offset = 0;
  std::string where;
  try {
    parse_spec(text, "bad");
  } catch (const SpecParseError& e) {
    offset = e.offset();
    where = e.path();
  }
  o.require(offset == 4 && where == "source.metric[0][0]", "parse error offset");
  const auto bad = dir / "bad.json";
  std::ofstream(bad) << text;
  o.require(status_of("verify --spec " + bad.string()) == 2, "exit 2 parse error");
  o.detail << " " << a.checks.size() << " residuals identical; exits 0/1/2; offset " << offset << " at " << where;
  return o;
}

// 10
Outcome negative_controls() {
  Outcome o;
  const auto base = registry_entry("ex1");

  // phi -> 2 phi: phi^2 = -4 I on ker eta, so |phi^2 + I - eta (x) xi| = 3; the other three hold
  Problem doubled = base;
  auto grid = base.source.phi_written();
  for (auto& row : grid)
    for (auto& e : row) e = dsl::make_binary(dsl::NodeKind::Mul, dsl::make_number(2), e);
  doubled.source = base.source.with_phi(grid);
  const auto r1 = run(doubled, "almost_contact", 64);
  o.require(failing(r1, "almost_contact.") == std::set<std::string>{"almost_contact.phi_squared"}, "2 phi fails");
  o.require(r1.residual("almost_contact.phi_squared") == 3.0, "2 phi residual 3");

  // eta = dz + x1 dx2: d eta = dx1 ^ dx2, so d_eta = 1 and the 2 d eta (x) xi term
  // of normality is 1 on (d/dx1, d/dx2); Phi, nabla phi, nabla xi do not see eta
  Problem contact = base;
  contact.source = base.source.with_eta({geometry::parse_list({"0", "x1", "0", "0", "1"})});
  const auto r2 = run(contact, "cosymplectic", 64);
  o.require(failing(r2, "cosymplectic.") ==
                std::set<std::string>{"cosymplectic.d_eta", "cosymplectic.normality"},
            "contact-like eta fails d_eta and normality only");
  o.require(r2.residual("cosymplectic.d_eta") == 1.0, "d_eta residual 1");

  // map scaled by 2: |F_* X|^2 = 4 |X|^2, so the isometry residual is 3; rank is unchanged
  Problem scaled = registry_entry("ex3");
  scaled.submersion = scaled.submersion->with_map(
      geometry::parse_list({"2 * (x1 + y2) / sqrt(2)", "2 * (x2 + y1) / sqrt(2)"}));
  const auto r3 = run(scaled, "riemannian_submersion", 64);
  o.require(failing(r3, "riemannian_submersion.") == std::set<std::string>{"riemannian_submersion.isometry"},
            "scaled map fails isometry only");
  o.require(std::abs(r3.residual("riemannian_submersion.isometry") - 3.0) < 1e-12, "isometry residual 3");

  o.detail << " 2phi " << fmt(r1.residual("almost_contact.phi_squared")) << ", dz+x1dx2 "
           << fmt(r2.residual("cosymplectic.d_eta")) << ", 2F " << fmt(r3.residual("riemannian_submersion.isometry"));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "cosymplectic suite on ex1, ex2 at 100 points < 1e-8", cosymplectic_suite},
      {2, "anti-invariance and dimension relations (exact)", dimension_theorems},
      {3, "lemma identities on ex3..ex6 at 64 points < 1e-8", lemma_suite},
      {4, "O'Neill tensoriality on ex3, ex6 at 32 points < 1e-9", tensoriality},
      {5, "finite-difference oracles < 1e-6", oracles},
      {6, "connection axioms on ex2 < 1e-8, d o d < 1e-9", connection_axioms},
      {7, "map-level results on ex3, ex6; T = A = tau = 0 < 1e-9", map_theorems},
      {8, "equivalence co-occurrence at 1e-8", equivalences},
      {9, "loader round trip, exit codes, parse offsets", loader_and_cli},
      {10, "negative controls fail exactly as predicted", negative_controls},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << " |"
              << o.detail.str() << " (" << fmt(secs) << " s)" << std::endl;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (10 - failed) << "/10 criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
