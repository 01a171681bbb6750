#pragma once

#include <span>

#include "qcurv/metric.hpp"
#include "qcurv/tensor.hpp"

namespace qcurv {

/// Everything the classifier needs at one point, over the chart basis.
/// All curvature-type tensors are stored fully covariant. Sign conventions
/// (see docs/conventions.md) are pinned by two facts: the unit sphere has
/// sectional curvature +1 (riemann == g_wedge on it), and
/// g_wedge(v,w,w,v) > 0 for independent v, w.
struct CurvaturePack {
  Eigen::VectorXd point;
  MetricAtPoint metric;

  DenseTensor gamma;     // Γ^k_{ij}, slots (Upper, Lower, Lower)
  DenseTensor riemann;   // (0,4) R
  DenseTensor g_wedge;   // (0,4) G, G_ijkl = g_il g_jk − g_ik g_jl
  DenseTensor ricci;     // (0,2) S
  DenseTensor ricci_op;  // (1,1) S with first index raised
  double scalar = 0.0;   // τ
  bool has_weyl = false; // n >= 3
  DenseTensor weyl;      // (0,4) C (zero tensor when n == 2)
  DenseTensor rr;        // (0,6) curvature derivation of R
  DenseTensor tach_r;    // (0,6) wedge derivation of R (Tachibana)
  DenseTensor rs;        // (0,4) curvature derivation of S
  DenseTensor tach_s;    // (0,4) wedge derivation of S

  // Frobenius norms, cached for residual tests.
  double norm_riemann = 0.0;
  double norm_g_wedge = 0.0;
  double norm_ricci = 0.0;
  double norm_weyl = 0.0;
  double norm_rr = 0.0;
  double norm_tach_r = 0.0;
  double norm_rs = 0.0;
  double norm_tach_s = 0.0;

  int dim() const { return metric.dim(); }
};

/// Γ^k_ij = ½ g^{kl} (∂_i g_jl + ∂_j g_il − ∂_l g_ij).
DenseTensor christoffel(const MetricField& m, std::span<const double> point);

/// (0,4) curvature tensor from ∂Γ + ΓΓ, lowered with g. The unit sphere
/// satisfies riemann == g_wedge (sectional curvature +1).
DenseTensor riemann_tensor(const MetricField& m,
                           std::span<const double> point);

/// G_ijkl = g_il g_jk − g_ik g_jl (so G(v,w,w,v) = |v|²|w|² − g(v,w)²).
DenseTensor metric_wedge_tensor(const MetricAtPoint& m);

struct RicciData {
  DenseTensor s;     // (0,2)
  DenseTensor s_op;  // (1,1)
  double tau = 0.0;
};

/// S_ij = g^{ab} R_iabj; τ = g^{ij} S_ij. Unit n-sphere: S = (n−1)g.
RicciData ricci_scalar(const DenseTensor& riemann, const MetricAtPoint& m);

/// Conformal curvature tensor; requires n >= 3. Fully trace-free.
DenseTensor weyl_tensor(const DenseTensor& riemann, const DenseTensor& ricci,
                        double tau, const MetricAtPoint& m);

/// Acts the curvature operator R(X,Y) as a derivation on each slot of a
/// (0,2) or (0,4) tensor, appending the (X,Y) slot pair:
///   (R·T)(V...;X,Y) = −Σ_s T(..., R(X,Y)V_s, ...).
DenseTensor curvature_derivative(const DenseTensor& t,
                                 const DenseTensor& riemann,
                                 const MetricAtPoint& m);

/// Same derivation template with the metric endomorphism
/// (X ∧ Y)V = g(Y,V)X − g(X,V)Y in place of R(X,Y).
DenseTensor wedge_derivative(const DenseTensor& t, const MetricAtPoint& m);

/// One-shot pipeline; in debug builds the result is verified (verify_pack).
CurvaturePack curvature_pack(const MetricField& m,
                             std::span<const double> point);

/// Checks curvature symmetries, first Bianchi, Ricci symmetry, τ and the
/// Weyl traces; throws NumericalError describing the first violation.
void verify_pack(const CurvaturePack& pack, double tol = 1e-9);

}  // namespace qcurv
