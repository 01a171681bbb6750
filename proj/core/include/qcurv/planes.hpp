#pragma once

#include <Eigen/Dense>

#include "qcurv/curvature.hpp"

namespace qcurv {

/// An ordered pair of g-orthonormal tangent vectors spanning a 2-plane.
class TwoPlane {
public:
  /// Gram-Schmidt in input order; throws NumericalError for a degenerate
  /// (parallel or zero) pair.
  static TwoPlane span(const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                       const MetricAtPoint& m);

  /// Accepts vectors that are already g-orthonormal (checked).
  static TwoPlane orthonormal(Eigen::VectorXd v, Eigen::VectorXd w,
                              const MetricAtPoint& m, double tol = 1e-10);

  const Eigen::VectorXd& v() const { return v_; }
  const Eigen::VectorXd& w() const { return w_; }

private:
  TwoPlane(Eigen::VectorXd v, Eigen::VectorXd w)
      : v_(std::move(v)), w_(std::move(w)) {}
  Eigen::VectorXd v_, w_;
};

/// Angle ψ ∈ [0, π/2] between two 2-planes at the same point, from
/// cos²ψ = (det M)² with M the 2×2 matrix of pairwise inner products.
/// Independent of the orthonormal bases chosen inside each plane.
double plane_angle(const TwoPlane& a, const TwoPlane& b,
                   const MetricAtPoint& m);

/// K(π) = R(v,w,w,v) / G(v,w,w,v).
double sectional(const DenseTensor& riemann, const DenseTensor& g_wedge,
                 const TwoPlane& plane);
double sectional(const CurvaturePack& pack, const TwoPlane& plane);

/// Sectional curvature of the conformal curvature tensor, from the scalar
/// relation K_C = K − (ρ(v)+ρ(w))/(n−2) + τ/((n−1)(n−2)); requires n >= 3
/// and an orthonormal plane.
double weyl_sectional(double k, double rho_v, double rho_w, double tau,
                      int n);

/// ρ(u) = S(u,u) for a g-unit vector u (checked).
double ricci_direction(const DenseTensor& ricci, const Eigen::VectorXd& u,
                       const MetricAtPoint& m);

struct DoubleSectional {
  bool dependent = false;  // false: the pair is curvature-independent
  double value = 0.0;      // quotient, when dependent
  double numerator = 0.0;
  double denominator = 0.0;
};

/// L(p, π1, π2) = (R·R)(v,w,w,v;x,y) / (∧g·R)(v,w,w,v;x,y) with (v,w)
/// spanning π2 and (x,y) spanning π1. The pair is flagged
/// curvature-independent when |denominator| <= tol_dep·(1+‖R‖).
DoubleSectional double_sectional(const CurvaturePack& pack,
                                 const TwoPlane& p1, const TwoPlane& p2,
                                 double tol_dep = 1e-7);

struct SixArgValues {
  double tach = 0.0;  // (∧g·R)((X+X⊥)/√2, Y⊥, Y⊥, (X+X⊥)/√2; X, X⊥)
  double rr = 0.0;    // (R·R) at the same argument list
};

/// The canonical six-argument evaluations used by the quasi-constant-
/// curvature checks; x, x_perp, y_perp must be g-orthonormal. On a QCC
/// space they equal (K⊥−K̄, K̄(K⊥−K̄)).
SixArgValues qcc_witness_values(const CurvaturePack& pack,
                                const Eigen::VectorXd& x,
                                const Eigen::VectorXd& x_perp,
                                const Eigen::VectorXd& y_perp);

/// Model sectional curvature of a plane at angles (θ, φ) to the
/// distinguished distribution. q == 1 ignores φ:
///   q = 1:  K̄ cos²θ + K⊥ sin²θ
///   q > 1:  K cos²θ cos²φ + K⊥ sin²θ sin²φ + K̄ (cos²θ sin²φ + sin²θ cos²φ)
double qcc_predicted_curvature(int q, double k, double k_bar, double k_perp,
                               double theta, double phi);

/// Ricci curvature of the direction U cosψ + U⊥ sinψ on a QCC space:
///   q = 1:  K̄ + (n−2)(K̄ cos²ψ + K⊥ sin²ψ)
///   q > 1:  K̄ + (q−1)(K cos²ψ + K̄ sin²ψ) + (n−q−1)(K⊥ sin²ψ + K̄ cos²ψ)
double qcc_ricci_profile(int q, int n, double k, double k_bar, double k_perp,
                         double psi);

struct PlaneAngles {
  double theta = 0.0;
  double phi = 0.0;  // meaningful only when dim(D) > 1
};

/// Principal angles between a plane and the distribution spanned by the
/// g-orthonormal columns of d_basis, via singular values of the projection.
PlaneAngles plane_angles(const TwoPlane& plane,
                         const Eigen::MatrixXd& d_basis,
                         const MetricAtPoint& m);

}  // namespace qcurv
