#pragma once

#include <Eigen/Dense>
#include <span>

#include "qcurv/expr.hpp"

namespace qcurv {

/// Second-order jet: value, gradient and Hessian with respect to the chart
/// coordinates. Arithmetic propagates exact derivatives (no truncation
/// error); the Hessian stays exactly symmetric by construction.
struct Jet2 {
  double val = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;

  Jet2() = default;
  explicit Jet2(int n)
      : grad(Eigen::VectorXd::Zero(n)), hess(Eigen::MatrixXd::Zero(n, n)) {}

  static Jet2 constant(double c, int n) {
    Jet2 j(n);
    j.val = c;
    return j;
  }

  static Jet2 variable(double x, int index, int n) {
    Jet2 j(n);
    j.val = x;
    j.grad[index] = 1.0;
    return j;
  }

  int dim() const { return static_cast<int>(grad.size()); }
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator*(const Jet2& a, const Jet2& b);

/// Evaluates `e` as a second-order jet at `point` (dimension = point size).
/// Derivatives are algebraic, exact to machine rounding. Domain violations
/// throw EvalError naming the offending subexpression.
Jet2 eval_jet2(const Expr& e, std::span<const double> point);
inline Jet2 eval_jet2(const ExprPtr& e, std::span<const double> point) {
  return eval_jet2(*e, point);
}

}  // namespace qcurv
