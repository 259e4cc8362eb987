#include "subcheck/geometry/connection.hpp"

#include <cmath>

namespace subcheck::geometry {

double Tensor3::max_abs() const {
  double r = 0.0;
  for (double v : data_) r = std::max(r, std::abs(v));
  return r;
}

VectorXd Christoffel::contract(const VectorXd& x, const VectorXd& y) const {
  const std::size_t m = t_.dim();
  VectorXd out = VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        s += t_(k, i, j) * x(static_cast<Eigen::Index>(i)) * y(static_cast<Eigen::Index>(j));
    out(static_cast<Eigen::Index>(k)) = s;
  }
  return out;
}

MatrixXd spd_inverse(const MatrixXd& g) {
  Eigen::LLT<MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw SingularMetric("metric is not positive definite");
  return llt.solve(MatrixXd::Identity(g.rows(), g.cols()));
}

MetricJet metric_jet(const ChartManifold& M, const dsl::Environment<jets::Jet2>& env) {
  const std::size_t m = M.dim();
  std::vector<jets::Jet2> entries(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      entries[i * m + j] = dsl::eval_jet(M.metric()[i][j], env);
      entries[j * m + i] = entries[i * m + j];
    }
  }
  const auto mi = static_cast<Eigen::Index>(m);
  MetricJet out;
  out.g = MatrixJet::from_jets(entries, mi, mi);
  out.g_inv = inverse(out.g, spd_inverse(out.g.value));
  return out;
}

MetricValue metric_at(const ChartManifold& M, std::span<const double> p) {
  auto env = M.value_env(p);
  const std::size_t m = M.dim();
  const auto mi = static_cast<Eigen::Index>(m);
  MatrixXd g(mi, mi);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double v = dsl::eval_value(M.metric()[i][j], env);
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return {g, spd_inverse(g)};
}

double metric_asymmetry_at(const ChartManifold& M, std::span<const double> p) {
  auto env = M.value_env(p);
  double r = 0.0;
  for (std::size_t i = 0; i < M.dim(); ++i)
    for (std::size_t j = i + 1; j < M.dim(); ++j)
      r = std::max(r, std::abs(dsl::eval_value(M.metric()[i][j], env) - dsl::eval_value(M.metric()[j][i], env)));
  return r;
}

Christoffel christoffel(const MetricJet& metric) {
  const std::size_t m = metric.g.dim();
  const auto& dg = metric.g.d;
  const auto& ginv = metric.g_inv.value;
  Tensor3 t(m);
  auto I = [](std::size_t v) { return static_cast<Eigen::Index>(v); };
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < m; ++l)
          s += ginv(I(k), I(l)) * ((dg[i](I(l), I(j)) + dg[j](I(l), I(i))) - dg[l](I(i), I(j)));
        t(k, i, j) = 0.5 * s;
      }
    }
  }
  return Christoffel(std::move(t));
}

Christoffel christoffel_at(const ChartManifold& M, std::span<const double> p) {
  return christoffel(metric_jet(M, M.jet_env(p)));
}

VectorXd covariant_derivative(const Christoffel& gamma, const VectorXd& x, const VectorJet& y) {
  return y.along(x) + gamma.contract(x, y.value);
}

VectorXd covariant_derivative_at(const ChartManifold& M, const VectorField& X, const VectorField& Y,
                                 std::span<const double> p) {
  auto env = M.jet_env(p);
  const auto gamma = christoffel(metric_jet(M, env));
  return covariant_derivative(gamma, evaluate(X, env).value, evaluate(Y, env));
}

VectorXd lie_bracket(const VectorJet& x, const VectorJet& y) { return y.along(x.value) - x.along(y.value); }

VectorXd lie_bracket_at(const ChartManifold& M, const VectorField& X, const VectorField& Y,
                        std::span<const double> p) {
  auto env = M.jet_env(p);
  return lie_bracket(evaluate(X, env), evaluate(Y, env));
}

MatrixXd exterior_derivative(const VectorJet& one_form) {
  // d(i, k) = partial_k eta_i
  return one_form.d.transpose() - one_form.d;
}

Tensor3 exterior_derivative(const MatrixJet& two_form) {
  const std::size_t m = two_form.dim();
  Tensor3 t(m);
  auto I = [](std::size_t v) { return static_cast<Eigen::Index>(v); };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        t(i, j, k) = two_form.d[i](I(j), I(k)) + two_form.d[j](I(k), I(i)) + two_form.d[k](I(i), I(j));
  return t;
}

MatrixJet exterior_derivative_jet(const OneForm& w, const dsl::Environment<jets::Jet2>& env) {
  const auto comps = evaluate_jets(w.components, env);
  const std::size_t m = comps.size();
  const auto mi = static_cast<Eigen::Index>(m);
  // grad_rows(i, a) = partial_a eta_i; partial_c of that = hess_i(a, c)
  MatrixJet out{MatrixXd(mi, mi), std::vector<MatrixXd>(m, MatrixXd(mi, mi))};
  for (Eigen::Index i = 0; i < mi; ++i) {
    for (Eigen::Index j = 0; j < mi; ++j) {
      out.value(i, j) = comps[static_cast<std::size_t>(j)].grad()(i) - comps[static_cast<std::size_t>(i)].grad()(j);
      for (std::size_t c = 0; c < m; ++c) {
        const auto ci = static_cast<Eigen::Index>(c);
        out.d[c](i, j) = comps[static_cast<std::size_t>(j)].hess()(i, ci) - comps[static_cast<std::size_t>(i)].hess()(j, ci);
      }
    }
  }
  return out;
}

MatrixXd exterior_derivative_at(const ChartManifold& M, const OneForm& w, std::span<const double> p) {
  return exterior_derivative(evaluate(w, M.jet_env(p)));
}

Tensor3 exterior_derivative_at(const ChartManifold& M, const TwoForm& w, std::span<const double> p) {
  return exterior_derivative(evaluate(w.components, M.jet_env(p)));
}

}  // namespace subcheck::geometry
