#include "doctest.h"
#include "corpus.hpp"
#include "oracles.hpp"

#include "subcheck/dsl/eval.hpp"
#include "subcheck/dsl/parser.hpp"
#include "subcheck/jets/jet2.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

using namespace subcheck::jets;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

void require_jet(const Jet2& j, double v, const VectorXd& g, const MatrixXd& h, double eps = 1e-15) {
  CHECK(j.value() == doctest::Approx(v).epsilon(eps));
  REQUIRE(j.grad().size() == g.size());
  CHECK((j.grad() - g).lpNorm<Eigen::Infinity>() <= eps);
  CHECK((j.hess() - h).lpNorm<Eigen::Infinity>() <= eps);
}

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(v.size());
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("seeding") {
  const double one[] = {2.0};
  auto s = seed_point(one);
  REQUIRE(s.size() == 1);
  require_jet(s[0], 2.0, vec({1}), MatrixXd::Zero(1, 1));

  const double zeros[5] = {};
  auto five = seed_point(zeros);
  REQUIRE(five.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(five[i].grad() == VectorXd::Unit(5, i));

  const double xy[] = {1, 2};
  auto p = seed_point(xy);
  MatrixXd h(2, 2);
  h << 0, 1, 1, 0;
  require_jet(p[0] * p[1], 2, vec({2, 1}), h);
}

TEST_CASE("arithmetic") {
  const double three[] = {3};
  auto x = seed_point(three)[0];
  require_jet(jet_arith(x, x, ArithOp::Mul), 9, vec({6}), MatrixXd::Constant(1, 1, 2));

  const double two[] = {2};
  auto y = seed_point(two)[0];
  require_jet(jet_arith(Jet2::constant(1, 1), y, ArithOp::Div), 0.5, vec({-0.25}), MatrixXd::Constant(1, 1, 0.25));

  const double p[] = {1, 2};
  auto s = seed_point(p);
  require_jet(jet_arith(s[0], s[1], ArithOp::Add), 3, vec({1, 1}), MatrixXd::Zero(2, 2));
  require_jet(jet_arith(s[0], s[1], ArithOp::Sub), -1, vec({1, -1}), MatrixXd::Zero(2, 2));

  CHECK_THROWS_AS(jet_arith(s[0], Jet2::constant(0.0, 2), ArithOp::Div), DivisionByZero);
  CHECK_THROWS_AS(s[0] / Jet2::constant(1e-301, 2), DivisionByZero);
}

TEST_CASE("functions") {
  const double zero[] = {0};
  auto x = seed_point(zero)[0];
  require_jet(jet_func(x, Function::Sin), 0, vec({1}), MatrixXd::Zero(1, 1));

  // sin(x1 + x3) in a 5-dimensional jet
  const double origin[5] = {};
  auto s = seed_point(origin);
  auto tau = jet_func(s[0] + s[2], Function::Sin);
  CHECK(tau.grad() == vec({1, 0, 1, 0, 0}));
  CHECK(tau.hess() == MatrixXd::Zero(5, 5));

  const double one[] = {1};
  auto e = jet_func(seed_point(one)[0], Function::Exp);
  require_jet(e, std::exp(1.0), vec({std::exp(1.0)}), MatrixXd::Constant(1, 1, std::exp(1.0)), 1e-15);

  const double neg[] = {-1};
  CHECK_THROWS_AS(jet_func(seed_point(neg)[0], Function::Sqrt), DomainError);
  CHECK_THROWS_AS(pow(seed_point(neg)[0], 0.5), DomainError);
  CHECK_NOTHROW(pow(seed_point(neg)[0], 3.0));
  CHECK(pow(seed_point(neg)[0], 3.0).value() == -1.0);

  // chain rule: f'' grad grad^T + f' hess
  const double q[] = {0.3, -0.7};
  auto v = seed_point(q);
  auto inner = v[0] * v[1] + v[0];
  auto c = jet_func(inner, Function::Cos);
  const double a = inner.value();
  MatrixXd expect = -std::cos(a) * inner.grad() * inner.grad().transpose() - std::sin(a) * inner.hess();
  CHECK((c.hess() - expect).lpNorm<Eigen::Infinity>() < 1e-15);
}

TEST_CASE("hessians are exactly symmetric") {
  const double p[] = {0.4, -0.3, 0.9};
  auto s = seed_point(p);
  Jet2 acc = s[0];
  for (int k = 0; k < 20; ++k) {
    acc = jet_func(acc * s[k % 3] + s[(k + 1) % 3], k % 2 ? Function::Sin : Function::Cos);
    acc = acc / (Jet2::constant(2.0, 3) + s[(k + 2) % 3] * s[(k + 2) % 3]);
    acc = pow(acc * acc + Jet2::constant(1.0, 3), 1.5);
    CHECK(hessian_asymmetry(acc) == 0.0);
  }
}

// Random expressions, evaluated both as jets and as plain values. The plain
// evaluation is differenced centrally; the jet must match it to 1e-6.
TEST_CASE("jet derivatives agree with finite differences on a random corpus") {
  using namespace subcheck;
  corpus::Generator gen{std::mt19937_64(2024), 3};
  std::uniform_real_distribution<double> coord(-1, 1);
  int tested = 0;
  double worst_grad = 0, worst_hess = 0;
  for (int n = 0; n < 120; ++n) {
    const std::string text = gen.expr(1 + n % 3);
    const auto e = dsl::parse(text);
    VectorXd p(3);
    for (auto& c : p) c = coord(gen.rng);
    dsl::Environment<jets::Jet2> env;
    const auto seeds = seed_point(std::span<const double>(p.data(), 3));
    for (int i = 0; i < 3; ++i) env["x" + std::to_string(i + 1)] = seeds[i];
    const auto j = dsl::eval_jet(e, env);
    const oracle::Scalar f = [&](const VectorXd& x) {
      dsl::Environment<double> ve{{"x1", x[0]}, {"x2", x[1]}, {"x3", x[2]}};
      return dsl::eval_value(e, ve);
    };
    CHECK(j.value() == f(p));  // same operation order, bit for bit
    const double eg = (j.grad() - oracle::gradient(f, p)).lpNorm<Eigen::Infinity>();
    const double eh = (j.hess() - oracle::hessian(f, p)).lpNorm<Eigen::Infinity>();
    worst_grad = std::max(worst_grad, eg);
    worst_hess = std::max(worst_hess, eh);
    INFO(text);
    CHECK(eg < 1e-6);
    CHECK(eh < 1e-6);
    CHECK(hessian_asymmetry(j) == 0.0);
    ++tested;
  }
  CHECK(tested >= 100);
  MESSAGE("worst gradient error " << worst_grad << ", worst Hessian error " << worst_hess);
}
