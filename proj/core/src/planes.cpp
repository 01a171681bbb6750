#include "qcurv/planes.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qcurv {

TwoPlane TwoPlane::span(const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                        const MetricAtPoint& m) {
  double nv = m.norm(v);
  if (nv < 1e-12) throw NumericalError("degenerate plane: zero vector");
  Eigen::VectorXd e1 = v / nv;
  Eigen::VectorXd w2 = w - m.ip(e1, w) * e1;
  double nw = m.norm(w2);
  if (nw < 1e-10 * std::max(1.0, m.norm(w)))
    throw NumericalError("degenerate plane: vectors are parallel");
  return TwoPlane(std::move(e1), w2 / nw);
}

TwoPlane TwoPlane::orthonormal(Eigen::VectorXd v, Eigen::VectorXd w,
                               const MetricAtPoint& m, double tol) {
  if (std::abs(m.ip(v, v) - 1.0) > tol || std::abs(m.ip(w, w) - 1.0) > tol ||
      std::abs(m.ip(v, w)) > tol)
    throw NumericalError("plane basis is not g-orthonormal");
  return TwoPlane(std::move(v), std::move(w));
}

double plane_angle(const TwoPlane& a, const TwoPlane& b,
                   const MetricAtPoint& m) {
  Eigen::Matrix2d mat;
  mat(0, 0) = m.ip(a.v(), b.v());
  mat(0, 1) = m.ip(a.v(), b.w());
  mat(1, 0) = m.ip(a.w(), b.v());
  mat(1, 1) = m.ip(a.w(), b.w());
  double c = std::clamp(std::abs(mat.determinant()), 0.0, 1.0);
  return std::acos(c);
}

double sectional(const DenseTensor& riemann, const DenseTensor& g_wedge,
                 const TwoPlane& plane) {
  std::array<Eigen::VectorXd, 4> args = {plane.v(), plane.w(), plane.w(),
                                         plane.v()};
  double num = contract_vectors(riemann, args);
  double den = contract_vectors(g_wedge, args);
  if (den <= 0.0)
    throw NumericalError("sectional curvature of a degenerate plane");
  return num / den;
}

double sectional(const CurvaturePack& pack, const TwoPlane& plane) {
  return sectional(pack.riemann, pack.g_wedge, plane);
}

double weyl_sectional(double k, double rho_v, double rho_w, double tau,
                      int n) {
  if (n < 3)
    throw NumericalError("weyl_sectional requires dimension >= 3");
  return k - (rho_v + rho_w) / (n - 2) +
         tau / (static_cast<double>(n - 1) * (n - 2));
}

double ricci_direction(const DenseTensor& ricci, const Eigen::VectorXd& u,
                       const MetricAtPoint& m) {
  if (std::abs(m.ip(u, u) - 1.0) > 1e-9)
    throw NumericalError("ricci_direction requires a g-unit vector");
  std::array<Eigen::VectorXd, 2> args = {u, u};
  return contract_vectors(ricci, args);
}

DoubleSectional double_sectional(const CurvaturePack& pack,
                                 const TwoPlane& p1, const TwoPlane& p2,
                                 double tol_dep) {
  std::array<Eigen::VectorXd, 6> args = {p2.v(), p2.w(), p2.w(),
                                         p2.v(), p1.v(), p1.w()};
  DoubleSectional out;
  out.numerator = contract_vectors(pack.rr, args);
  out.denominator = contract_vectors(pack.tach_r, args);
  out.dependent =
      std::abs(out.denominator) > tol_dep * (1.0 + pack.norm_riemann);
  if (out.dependent) out.value = out.numerator / out.denominator;
  return out;
}

SixArgValues qcc_witness_values(const CurvaturePack& pack,
                                const Eigen::VectorXd& x,
                                const Eigen::VectorXd& x_perp,
                                const Eigen::VectorXd& y_perp) {
  const MetricAtPoint& m = pack.metric;
  const double tol = 1e-8;
  if (std::abs(m.ip(x, x) - 1.0) > tol ||
      std::abs(m.ip(x_perp, x_perp) - 1.0) > tol ||
      std::abs(m.ip(y_perp, y_perp) - 1.0) > tol ||
      std::abs(m.ip(x, x_perp)) > tol || std::abs(m.ip(x, y_perp)) > tol ||
      std::abs(m.ip(x_perp, y_perp)) > tol)
    throw NumericalError("qcc_witness_values requires orthonormal arguments");
  Eigen::VectorXd xt = (x + x_perp) / std::sqrt(2.0);
  std::array<Eigen::VectorXd, 6> args = {xt, y_perp, y_perp, xt, x, x_perp};
  SixArgValues out;
  out.tach = contract_vectors(pack.tach_r, args);
  out.rr = contract_vectors(pack.rr, args);
  return out;
}

double qcc_predicted_curvature(int q, double k, double k_bar, double k_perp,
                               double theta, double phi) {
  if (q < 1) throw NumericalError("qcc_predicted_curvature requires q >= 1");
  double ct = std::cos(theta), st = std::sin(theta);
  if (q == 1) return k_bar * ct * ct + k_perp * st * st;
  double cp = std::cos(phi), sp = std::sin(phi);
  return k * ct * ct * cp * cp + k_perp * st * st * sp * sp +
         k_bar * (ct * ct * sp * sp + st * st * cp * cp);
}

double qcc_ricci_profile(int q, int n, double k, double k_bar, double k_perp,
                         double psi) {
  double c2 = std::cos(psi) * std::cos(psi);
  double s2 = std::sin(psi) * std::sin(psi);
  if (q == 1) return k_bar + (n - 2) * (k_bar * c2 + k_perp * s2);
  return k_bar + (q - 1) * (k * c2 + k_bar * s2) +
         (n - q - 1) * (k_perp * s2 + k_bar * c2);
}

PlaneAngles plane_angles(const TwoPlane& plane,
                         const Eigen::MatrixXd& d_basis,
                         const MetricAtPoint& m) {
  const int q = static_cast<int>(d_basis.cols());
  Eigen::MatrixXd proj(2, q);
  for (int t = 0; t < q; ++t) {
    proj(0, t) = m.ip(plane.v(), d_basis.col(t));
    proj(1, t) = m.ip(plane.w(), d_basis.col(t));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(proj);
  PlaneAngles out;
  double s0 = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
  out.theta = std::acos(std::clamp(s0, 0.0, 1.0));
  if (q > 1) {
    double s1 =
        svd.singularValues().size() > 1 ? svd.singularValues()[1] : 0.0;
    out.phi = std::acos(std::clamp(s1, 0.0, 1.0));
  } else {
    out.phi = 0.0;
  }
  return out;
}

}  // namespace qcurv
