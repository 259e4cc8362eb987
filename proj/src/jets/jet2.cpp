#include "subcheck/jets/jet2.hpp"

#include <cassert>
#include <cmath>
#include <string>

namespace subcheck::jets {

namespace {

// Fills the upper triangle with fn(i, j) and mirrors it.
template <typename Fn>
void fill_symmetric(Eigen::MatrixXd& h, Fn&& fn) {
  const auto m = h.rows();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      const double v = fn(i, j);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
}

}  // namespace

Jet2 Jet2::constant(double value, std::size_t dim) { return Jet2(value, dim); }

Jet2 Jet2::variable(double value, std::size_t dim, std::size_t index) {
  assert(index < dim);
  Jet2 j(value, dim);
  j.grad_(static_cast<Eigen::Index>(index)) = 1.0;
  return j;
}

Jet2 Jet2::from_parts(double value, Eigen::VectorXd grad, Eigen::MatrixXd hess) {
  assert(hess.rows() == grad.size() && hess.cols() == grad.size());
  Jet2 j;
  j.value_ = value;
  j.grad_ = std::move(grad);
  j.hess_ = std::move(hess);
  const auto m = j.hess_.rows();
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index k = i + 1; k < m; ++k) j.hess_(k, i) = j.hess_(i, k);
  return j;
}

Jet2 Jet2::operator-() const {
  Jet2 r(-value_, dim());
  r.grad_ = -grad_;
  r.hess_ = -hess_;
  return r;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
  assert(a.dim() == b.dim());
  Jet2 r(a.value_ + b.value_, a.dim());
  r.grad_ = a.grad_ + b.grad_;
  r.hess_ = a.hess_ + b.hess_;
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  assert(a.dim() == b.dim());
  Jet2 r(a.value_ - b.value_, a.dim());
  r.grad_ = a.grad_ - b.grad_;
  r.hess_ = a.hess_ - b.hess_;
  return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  assert(a.dim() == b.dim());
  Jet2 r(a.value_ * b.value_, a.dim());
  r.grad_ = a.value_ * b.grad_ + b.value_ * a.grad_;
  fill_symmetric(r.hess_, [&](Eigen::Index i, Eigen::Index j) {
    return a.value_ * b.hess_(i, j) + b.value_ * a.hess_(i, j) + (a.grad_(i) * b.grad_(j) + a.grad_(j) * b.grad_(i));
  });
  return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  assert(a.dim() == b.dim());
  if (std::abs(b.value_) <= kDegenerateDivisor) throw DivisionByZero("division by a jet with zero value");
  const double q = a.value_ / b.value_;
  Jet2 r(q, a.dim());
  r.grad_ = (a.grad_ - q * b.grad_) / b.value_;
  // a = q b differentiated twice, solved for q''.
  fill_symmetric(r.hess_, [&](Eigen::Index i, Eigen::Index j) {
    return (a.hess_(i, j) - q * b.hess_(i, j) - (r.grad_(i) * b.grad_(j) + r.grad_(j) * b.grad_(i))) / b.value_;
  });
  return r;
}

Jet2 compose(const Jet2& a, double f, double df, double d2f) {
  Jet2 r(f, a.dim());
  r.grad_ = df * a.grad_;
  fill_symmetric(r.hess_, [&](Eigen::Index i, Eigen::Index j) {
    return d2f * (a.grad_(i) * a.grad_(j)) + df * a.hess_(i, j);
  });
  return r;
}

std::vector<Jet2> seed_point(std::span<const double> coords) {
  std::vector<Jet2> out;
  out.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) out.push_back(Jet2::variable(coords[i], coords.size(), i));
  return out;
}

Jet2 jet_arith(const Jet2& a, const Jet2& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  return a;
}

double apply_value(Function f, double x) {
  switch (f) {
    case Function::Sin: return std::sin(x);
    case Function::Cos: return std::cos(x);
    case Function::Tan: return std::tan(x);
    case Function::Exp: return std::exp(x);
    case Function::Sqrt:
      if (!(x > 0.0)) throw DomainError("sqrt of non-positive value " + std::to_string(x));
      return std::sqrt(x);
  }
  return x;
}

Jet2 jet_func(const Jet2& a, Function f) {
  const double x = a.value();
  switch (f) {
    case Function::Sin: {
      const double s = std::sin(x), c = std::cos(x);
      return compose(a, s, c, -s);
    }
    case Function::Cos: {
      const double s = std::sin(x), c = std::cos(x);
      return compose(a, c, -s, -c);
    }
    case Function::Tan: {
      const double t = std::tan(x);
      const double sec2 = 1.0 + t * t;
      return compose(a, t, sec2, 2.0 * t * sec2);
    }
    case Function::Exp: {
      const double e = std::exp(x);
      return compose(a, e, e, e);
    }
    case Function::Sqrt: {
      const double s = apply_value(Function::Sqrt, x);
      return compose(a, s, 0.5 / s, -0.25 / (s * s * s));
    }
  }
  return a;
}

double pow_value(double x, double exponent) {
  const bool integral = std::floor(exponent) == exponent;
  if (!integral && !(x > 0.0))
    throw DomainError("non-integer power " + std::to_string(exponent) + " of non-positive value");
  if (exponent < 0.0 && std::abs(x) <= kDegenerateDivisor) throw DivisionByZero("negative power of zero");
  return std::pow(x, exponent);
}

Jet2 pow(const Jet2& a, double exponent) {
  const double x = a.value();
  const double f = pow_value(x, exponent);
  const double df = exponent == 0.0 ? 0.0 : exponent * std::pow(x, exponent - 1.0);
  const double c2 = exponent * (exponent - 1.0);
  const double d2f = c2 == 0.0 ? 0.0 : c2 * std::pow(x, exponent - 2.0);
  return compose(a, f, df, d2f);
}

double hessian_asymmetry(const Jet2& a) {
  if (a.dim() == 0) return 0.0;
  return (a.hess() - a.hess().transpose()).cwiseAbs().maxCoeff();
}

}  // namespace subcheck::jets
