#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qcurv/curvature.hpp"
#include "qcurv/planes.hpp"

namespace qcurv {

struct ClassifyConfig {
  double tol_cluster = 1e-6;        // Ricci eigenvalue clustering gap
  double tol_label = 1e-8;          // residual threshold for labels
  double tol_distinct = 1e-6;       // "everywhere distinct" curvature gap
  double tol_dependent = 1e-7;      // curvature-dependence of plane pairs
  double tol_qcc_planes = 1e-7;     // sampled-plane agreement for QCC
  double tol_constant_type = 1e-7;  // spread of L across points
  int plane_budget = 200;
  std::uint64_t seed = 42;
};

struct RicciCluster {
  double value = 0.0;
  int multiplicity = 0;
};

/// Principal Ricci curvatures grouped into clusters (descending by value)
/// with a g-orthonormal eigenbasis whose columns are grouped accordingly.
struct RicciSpectrum {
  std::vector<RicciCluster> clusters;
  Eigen::MatrixXd basis;     // n×n, columns g-orthonormal
  std::vector<int> offsets;  // first basis column of each cluster

  Eigen::MatrixXd cluster_basis(int c) const {
    return basis.middleCols(offsets[c], clusters[c].multiplicity);
  }
};

RicciSpectrum ricci_spectrum(const DenseTensor& ricci, const MetricAtPoint& m,
                             double tol_cluster);

struct DeszczFit {
  bool trivially_cc = false;  // wedge derivation of R vanishes; L undefined
  double l = 0.0;
  double residual = 0.0;  // ‖R·R − L·(∧g·R)‖ / (1 + ‖R·R‖)
};

/// Least-squares proportionality factor between the curvature derivation of
/// R and its wedge derivation.
DeszczFit fit_deszcz_l(const CurvaturePack& pack, double tol_label);

struct QccStructure {
  int q = 0;
  int q_perp = 0;
  Eigen::MatrixXd d_basis;       // q columns
  Eigen::MatrixXd d_perp_basis;  // n−q columns
  double rho = 0.0;              // principal Ricci value on D
  double rho_perp = 0.0;
  double k_bar = 0.0;
  double k_perp = 0.0;
  double k = 0.0;                // q > 1 only
  double residual_planes = 0.0;  // worst sampled-plane deviation (relative)
  double midpoint_residual = 0.0;  // |K̄ − (K+K⊥)/2| for q > 1
};

struct NotQcc {
  std::string reason;
  double residual = 0.0;
};

/// Detects quasi-constant-curvature structure: the two Ricci eigenspaces
/// are the candidate distributions (D = smaller multiplicity; a tie keeps
/// the cluster with the larger eigenvalue), canonical plane curvatures are
/// measured, and the angle law is validated on `plane_budget` seeded random
/// planes. Requires exactly two clusters.
std::variant<QccStructure, NotQcc> detect_qcc(const CurvaturePack& pack,
                                              const RicciSpectrum& spectrum,
                                              const ClassifyConfig& cfg);

enum class Label {
  Flat,
  ConstantCurvature,
  Qcc,
  Einstein,
  QuasiEinstein,
  ConformallyFlat,
  SemiSymmetric,
  Deszcz,
  RicciDeszcz,
};

std::string_view label_name(Label l);
std::optional<Label> label_from_name(std::string_view name);

struct PointClassification {
  Eigen::VectorXd point;
  std::set<Label> labels;

  double res_flat = 0.0;          // ‖R‖ / (1+‖G‖)
  double res_cc = 0.0;            // ‖∧g·R‖ / (1+‖G‖·‖R‖)
  double res_einstein = 0.0;      // ‖S − (τ/n)g‖ / (1+‖S‖)
  double res_weyl = 0.0;          // ‖C‖ / (1+‖R‖)
  double res_semi = 0.0;          // ‖R·R‖ / (1+‖R‖²)
  double res_deszcz = 0.0;        // fit residual (0 when trivially CC)
  double res_ricci_deszcz = 0.0;  // ‖R·S − L_S·(∧g·S)‖ / (1+‖R·S‖)

  std::optional<double> l;   // from the R·R fit; absent when trivially CC
  double cc_curvature = 0.0; // τ / (n(n−1))
  RicciSpectrum spectrum;
  std::optional<QccStructure> qcc;
  std::optional<std::string> qcc_rejection;
  bool wildly_anisotropic = false;  // three or more Ricci clusters
};

PointClassification classify_point(const CurvaturePack& pack,
                                   const ClassifyConfig& cfg);

/// ‖R·S − L·(∧g·S)‖ / (1 + ‖R·S‖) for a given L.
double ricci_deszcz_residual(const CurvaturePack& pack, double l);

/// Checks the implication lattice between labels; returns human-readable
/// descriptions of any violations (empty = consistent).
std::vector<std::string> lattice_violations(const PointClassification& pc,
                                            int dim,
                                            const ClassifyConfig& cfg);

struct ClassificationReport {
  std::string metric_name;
  int dim = 0;
  ClassifyConfig config;
  int sample_count = 0;
  std::uint64_t seed = 0;
  std::vector<PointClassification> points;

  std::set<Label> aggregate;  // labels holding at every sampled point
  std::optional<double> constant_type;
  std::optional<std::pair<double, double>> l_range;
  bool non_constant_multiplicity = false;
};

/// Intersection labels, multiplicity-constancy enforcement and the
/// constant-type verdict over a deterministic point order.
ClassificationReport aggregate_report(std::string metric_name, int dim,
                                      const ClassifyConfig& cfg,
                                      std::vector<PointClassification> pts);

}  // namespace qcurv
