#pragma once

// Second-order jets: a scalar carried together with its gradient and its
// (dense, exactly symmetric) Hessian with respect to m independent variables.

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace subcheck::jets {

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Divisors with magnitude at or below this are rejected.
inline constexpr double kDegenerateDivisor = 1e-300;

class Jet2 {
 public:
  Jet2() = default;

  static Jet2 constant(double value, std::size_t dim);
  static Jet2 variable(double value, std::size_t dim, std::size_t index);

  /// Builds a jet from raw parts. The Hessian is symmetrized from its upper
  /// triangle so the stored matrix is exactly symmetric.
  static Jet2 from_parts(double value, Eigen::VectorXd grad, Eigen::MatrixXd hess);

  double value() const { return value_; }
  const Eigen::VectorXd& grad() const { return grad_; }
  const Eigen::MatrixXd& hess() const { return hess_; }
  std::size_t dim() const { return static_cast<std::size_t>(grad_.size()); }

  Jet2 operator-() const;

  friend Jet2 operator+(const Jet2& a, const Jet2& b);
  friend Jet2 operator-(const Jet2& a, const Jet2& b);
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator/(const Jet2& a, const Jet2& b);

  /// f(a) given f(a.value), f'(a.value), f''(a.value).
  friend Jet2 compose(const Jet2& a, double f, double df, double d2f);

 private:
  Jet2(double value, std::size_t dim) : value_(value), grad_(Eigen::VectorXd::Zero(dim)), hess_(Eigen::MatrixXd::Zero(dim, dim)) {}

  double value_ = 0.0;
  Eigen::VectorXd grad_;
  Eigen::MatrixXd hess_;
};

enum class ArithOp { Add, Sub, Mul, Div };
enum class Function { Sin, Cos, Tan, Exp, Sqrt };

/// One independent-variable jet per coordinate.
std::vector<Jet2> seed_point(std::span<const double> coords);

Jet2 jet_arith(const Jet2& a, const Jet2& b, ArithOp op);
Jet2 jet_func(const Jet2& a, Function f);
Jet2 pow(const Jet2& a, double exponent);

double apply_value(Function f, double x);
double pow_value(double x, double exponent);

/// max |H_ij - H_ji|; zero for every jet produced by this module.
double hessian_asymmetry(const Jet2& a);

}  // namespace subcheck::jets
