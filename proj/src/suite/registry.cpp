#include "subcheck/suite/registry.hpp"

#include "subcheck/dsl/parser.hpp"

namespace subcheck::suite {

using geometry::ChartManifold;
using geometry::ExprGrid;

namespace {

using Grid = std::vector<std::vector<std::string>>;

Grid identity_text(std::size_t n, const std::string& diag = "1") {
  Grid g(n, std::vector<std::string>(n, "0"));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = diag;
  return g;
}

std::vector<std::string> names(const std::string& stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

// R^5 with tau = sin(x1+x3): g = dx1^2 + ... + dx4^2 + eta^2 and
// eta = dx5 - tau (dx1 + dx3).
contact::AlmostContactStructure twisted_r5() {
  const std::string tau = "sin(x1 + x3)";
  const std::string tau2 = tau + "^2";
  Grid g = identity_text(5);
  g[0][0] = g[2][2] = "1 + " + tau2;
  g[0][2] = g[2][0] = tau2;
  g[0][4] = g[4][0] = g[2][4] = g[4][2] = "-" + tau;
  // as printed: row i lists the coordinate i entries of phi applied to each d_j
  const Grid phi = {{"0", "-1", "0", "0", "0"},
                    {"1", "0", "0", "0", "0"},
                    {"0", "0", "0", "-1", "0"},
                    {"0", "0", "1", "0", "0"},
                    {"0", "-" + tau, "0", "-" + tau, "0"}};
  ChartManifold base(names("x", 5), geometry::parse_grid(g));
  return {std::move(base), geometry::parse_grid(phi), {geometry::parse_list({"0", "0", "0", "0", "1"})},
          {geometry::parse_list({"-" + tau, "0", "-" + tau, "0", "1"})}};
}

submersion::SubmersionSpec make_map(const contact::AlmostContactStructure& src, ChartManifold target,
                                    const std::vector<std::string>& map) {
  return {src, std::move(target), geometry::parse_list(map)};
}

}  // namespace

contact::AlmostContactStructure flat_cosymplectic(std::size_t k) {
  const std::size_t m = 2 * k + 1;
  std::vector<std::string> coords = names("x", k);
  for (auto& y : names("y", k)) coords.push_back(y);
  coords.push_back("z");
  Grid phi(m, std::vector<std::string>(m, "0"));
  for (std::size_t i = 0; i < k; ++i) {
    phi[k + i][i] = "-1";  // phi d/dx_i = -d/dy_i
    phi[i][k + i] = "1";   // phi d/dy_i = d/dx_i
  }
  std::vector<std::string> xi(m, "0"), eta(m, "0");
  xi[m - 1] = eta[m - 1] = "1";
  ChartManifold base(std::move(coords), geometry::parse_grid(identity_text(m)));
  return {std::move(base), geometry::parse_grid(phi), {geometry::parse_list(xi)}, {geometry::parse_list(eta)}};
}

ChartManifold euclidean(std::size_t n, std::vector<std::string> coords) {
  if (coords.empty()) coords = names("t", n);
  return {std::move(coords), geometry::parse_grid(identity_text(n))};
}

const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> n = {"ex1", "ex2", "ex3", "ex4", "ex5", "ex6"};
  return n;
}

std::string registry_description(const std::string& name) {
  if (name == "ex1") return "flat cosymplectic R^5, coordinates (x1, x2, y1, y2, z)";
  if (name == "ex2") return "R^5 with tau = sin(x1+x3) twisted metric and phi";
  if (name == "ex3") return "ex1 -> R^2, ((x1+y2)/sqrt(2), (x2+y1)/sqrt(2)); xi vertical";
  if (name == "ex4") return "ex2 -> (R^2, g/2), (x1+x2, x3+x4); xi vertical";
  if (name == "ex5") return "flat R^7 -> R^4; xi vertical, mu of rank 2";
  if (name == "ex6") return "ex1 -> R^3, ((x1+y2)/sqrt(2), (x2+y1)/sqrt(2), z); xi horizontal";
  throw UnknownExample("unknown example '" + name + "' (expected ex1..ex6)");
}

Problem registry_entry(const std::string& name) {
  registry_description(name);
  Problem p;
  p.name = name;
  if (name == "ex1") {
    p.source = flat_cosymplectic(2);
  } else if (name == "ex2") {
    p.source = twisted_r5();
  } else if (name == "ex3") {
    p.source = flat_cosymplectic(2);
    p.submersion = make_map(p.source, euclidean(2), {"(x1 + y2) / sqrt(2)", "(x2 + y1) / sqrt(2)"});
  } else if (name == "ex4") {
    p.source = twisted_r5();
    // a unit horizontal vector such as (d1 + d2)/sqrt(2) maps to length sqrt(2) in the flat metric
    ChartManifold target(names("t", 2), geometry::parse_grid(identity_text(2, "0.5")));
    p.submersion = make_map(p.source, std::move(target), {"x1 + x2", "x3 + x4"});
  } else if (name == "ex5") {
    p.source = flat_cosymplectic(3);
    p.submersion = make_map(p.source, euclidean(4),
                            {"(x1 + y1) / sqrt(2)", "(x2 + y2) / sqrt(2)", "(x3 + y3) / sqrt(2)",
                             "(x3 - y3) / sqrt(2)"});
  } else if (name == "ex6") {
    p.source = flat_cosymplectic(2);
    p.submersion = make_map(p.source, euclidean(3), {"(x1 + y2) / sqrt(2)", "(x2 + y1) / sqrt(2)", "z"});
  }
  return p;
}

Problem Problem::with_convention(contact::PhiConvention c) const {
  Problem out = *this;
  out.source = source.with_convention(c);
  if (submersion) out.submersion = submersion->with_source(out.source);
  return out;
}

}  // namespace subcheck::suite
