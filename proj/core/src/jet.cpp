#include "qcurv/jet.hpp"

#include <cmath>

namespace qcurv {

namespace {

[[noreturn]] void jet_fail(const std::string& what, const Expr& e) {
  throw EvalError(what + " in '" + print_expression(e) + "'");
}

void check_finite(const Jet2& j, const Expr& e) {
  if (!std::isfinite(j.val) || !j.grad.allFinite() || !j.hess.allFinite())
    jet_fail("non-finite result", e);
}

// Chain rule for a scalar function: f(u), f'(u)·Du, f'(u)·Hu + f''(u)·Du⊗Du.
// Hessians are filled from one computed triangle so symmetry is bitwise;
// expression-template evaluation may otherwise associate scalar factors
// with one side of the outer product and round (i,j) and (j,i) apart.
Jet2 compose(const Jet2& u, double f, double df, double ddf) {
  const int n = u.dim();
  Jet2 out(n);
  out.val = f;
  out.grad = df * u.grad;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = df * u.hess(i, j) + ddf * (u.grad[i] * u.grad[j]);
      out.hess(i, j) = v;
      out.hess(j, i) = v;
    }
  return out;
}

Jet2 reciprocal(const Jet2& u, const Expr& site) {
  if (u.val == 0.0) jet_fail("division by zero", site);
  double inv = 1.0 / u.val;
  return compose(u, inv, -inv * inv, 2.0 * inv * inv * inv);
}

Jet2 integer_power(const Jet2& u, long long k, const Expr& site) {
  if (k < 0) return reciprocal(integer_power(u, -k, site), site);
  Jet2 acc = Jet2::constant(1.0, u.dim());
  Jet2 base = u;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    if (k >>= 1) base = base * base;
  }
  return acc;
}

}  // namespace

Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 out(a.dim());
  out.val = a.val + b.val;
  out.grad = a.grad + b.grad;
  out.hess = a.hess + b.hess;
  return out;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 out(a.dim());
  out.val = a.val - b.val;
  out.grad = a.grad - b.grad;
  out.hess = a.hess - b.hess;
  return out;
}

Jet2 operator-(const Jet2& a) {
  Jet2 out(a.dim());
  out.val = -a.val;
  out.grad = -a.grad;
  out.hess = -a.hess;
  return out;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  const int n = a.dim();
  Jet2 out(n);
  out.val = a.val * b.val;
  out.grad = a.val * b.grad + b.val * a.grad;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = a.val * b.hess(i, j) + b.val * a.hess(i, j) +
                 (a.grad[i] * b.grad[j] + b.grad[i] * a.grad[j]);
      out.hess(i, j) = v;
      out.hess(j, i) = v;
    }
  return out;
}

Jet2 eval_jet2(const Expr& e, std::span<const double> point) {
  const int n = static_cast<int>(point.size());
  switch (e.kind) {
    case Expr::Kind::Number:
      return Jet2::constant(e.number, n);
    case Expr::Kind::Var:
      if (e.var < 0 || e.var >= n)
        jet_fail("coordinate index out of range", e);
      return Jet2::variable(point[e.var], e.var, n);
    case Expr::Kind::Neg:
      return -eval_jet2(*e.lhs, point);
    case Expr::Kind::Call: {
      Jet2 u = eval_jet2(*e.lhs, point);
      Jet2 out(n);
      switch (e.fn) {
        case Fn::Sin: {
          double s = std::sin(u.val), c = std::cos(u.val);
          out = compose(u, s, c, -s);
          break;
        }
        case Fn::Cos: {
          double s = std::sin(u.val), c = std::cos(u.val);
          out = compose(u, c, -s, -c);
          break;
        }
        case Fn::Tan: {
          double t = std::tan(u.val), sec2 = 1.0 + t * t;
          out = compose(u, t, sec2, 2.0 * t * sec2);
          break;
        }
        case Fn::Sinh: {
          double s = std::sinh(u.val), c = std::cosh(u.val);
          out = compose(u, s, c, s);
          break;
        }
        case Fn::Cosh: {
          double s = std::sinh(u.val), c = std::cosh(u.val);
          out = compose(u, c, s, c);
          break;
        }
        case Fn::Tanh: {
          double t = std::tanh(u.val), sech2 = 1.0 - t * t;
          out = compose(u, t, sech2, -2.0 * t * sech2);
          break;
        }
        case Fn::Exp: {
          double x = std::exp(u.val);
          out = compose(u, x, x, x);
          break;
        }
        case Fn::Log: {
          if (u.val <= 0.0) jet_fail("log of non-positive value", e);
          double inv = 1.0 / u.val;
          out = compose(u, std::log(u.val), inv, -inv * inv);
          break;
        }
        case Fn::Sqrt: {
          if (u.val < 0.0) jet_fail("sqrt of negative value", e);
          if (u.val == 0.0) jet_fail("derivative of sqrt at zero", e);
          double r = std::sqrt(u.val);
          out = compose(u, r, 0.5 / r, -0.25 / (u.val * r));
          break;
        }
      }
      check_finite(out, e);
      return out;
    }
    case Expr::Kind::Bin: {
      Jet2 a = eval_jet2(*e.lhs, point);
      Jet2 out(n);
      switch (e.op) {
        case BinOp::Add: out = a + eval_jet2(*e.rhs, point); break;
        case BinOp::Sub: out = a - eval_jet2(*e.rhs, point); break;
        case BinOp::Mul: out = a * eval_jet2(*e.rhs, point); break;
        case BinOp::Div: {
          Jet2 b = eval_jet2(*e.rhs, point);
          if (b.val == 0.0) jet_fail("division by zero", e);
          out = a * reciprocal(b, e);
          break;
        }
        case BinOp::Pow: {
          Jet2 b = eval_jet2(*e.rhs, point);
          const bool const_exponent = b.grad.isZero(0.0) && b.hess.isZero(0.0);
          const bool integral =
              b.val == std::nearbyint(b.val) && std::abs(b.val) <= 64.0;
          if (const_exponent && integral) {
            out = integer_power(a, static_cast<long long>(b.val), e);
          } else {
            // General a^b = exp(b·log a); requires a > 0.
            if (a.val <= 0.0)
              jet_fail("non-integer power of a non-positive base", e);
            double la = std::log(a.val);
            Jet2 log_a = compose(a, la, 1.0 / a.val, -1.0 / (a.val * a.val));
            double x = std::exp(b.val * la);
            out = compose(b * log_a, x, x, x);
          }
          break;
        }
      }
      check_finite(out, e);
      return out;
    }
  }
  jet_fail("malformed expression node", e);
}

}  // namespace qcurv
