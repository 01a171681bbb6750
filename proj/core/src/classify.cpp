#include "qcurv/classify.hpp"

#include <algorithm>
#include <cmath>

#include "qcurv/rng.hpp"

namespace qcurv {

RicciSpectrum ricci_spectrum(const DenseTensor& ricci, const MetricAtPoint& m,
                             double tol_cluster) {
  const int n = m.dim();
  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = ricci.at({i, j});

  // S v = λ g v: eigenvectors come out g-orthonormal.
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, m.g);
  if (solver.info() != Eigen::Success)
    throw NumericalError("Ricci eigensolver failed");

  // Descending by eigenvalue.
  Eigen::VectorXd values = solver.eigenvalues().reverse();
  Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();

  const double scale = 1.0 + values.cwiseAbs().maxCoeff();
  RicciSpectrum out;
  out.basis = vectors;
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || values[i - 1] - values[i] > tol_cluster * scale) {
      RicciCluster c;
      c.multiplicity = i - start;
      c.value = values.segment(start, c.multiplicity).mean();
      out.clusters.push_back(c);
      out.offsets.push_back(start);
      start = i;
    }
  }

  // Re-orthonormalize within each cluster (g-Gram-Schmidt).
  for (std::size_t c = 0; c < out.clusters.size(); ++c) {
    int off = out.offsets[c];
    for (int a = 0; a < out.clusters[c].multiplicity; ++a) {
      Eigen::VectorXd v = out.basis.col(off + a);
      for (int b = 0; b < a; ++b)
        v -= m.ip(out.basis.col(off + b), v) * out.basis.col(off + b);
      double nv = m.norm(v);
      if (nv < 1e-12)
        throw NumericalError("degenerate Ricci eigenbasis");
      out.basis.col(off + a) = v / nv;
    }
  }
  return out;
}

DeszczFit fit_deszcz_l(const CurvaturePack& pack, double tol_label) {
  DeszczFit fit;
  const double cc_residual = scaled_residual(
      pack.norm_tach_r, pack.norm_g_wedge * pack.norm_riemann);
  if (cc_residual <= tol_label) {
    fit.trivially_cc = true;
    fit.residual =
        scaled_residual(pack.norm_rr, pack.norm_riemann * pack.norm_riemann);
    return fit;
  }
  double tt = inner_product(pack.tach_r, pack.tach_r, pack.metric);
  double rt = inner_product(pack.rr, pack.tach_r, pack.metric);
  fit.l = rt / tt;
  DenseTensor diff = pack.rr - fit.l * pack.tach_r;
  fit.residual =
      frobenius_norm(diff, pack.metric) / (1.0 + pack.norm_rr);
  return fit;
}

std::variant<QccStructure, NotQcc> detect_qcc(const CurvaturePack& pack,
                                              const RicciSpectrum& spectrum,
                                              const ClassifyConfig& cfg) {
  const int n = pack.dim();
  if (n < 3) return NotQcc{"dimension below 3", 0.0};
  if (spectrum.clusters.size() != 2)
    return NotQcc{"needs exactly two principal Ricci curvatures, found " +
                      std::to_string(spectrum.clusters.size()),
                  0.0};

  // D = smaller-multiplicity eigenspace; a tie keeps cluster 0 (the larger
  // eigenvalue, since clusters are descending).
  int cd = spectrum.clusters[0].multiplicity <=
                   spectrum.clusters[1].multiplicity
               ? 0
               : 1;
  int cp = 1 - cd;

  QccStructure qs;
  qs.q = spectrum.clusters[cd].multiplicity;
  qs.q_perp = spectrum.clusters[cp].multiplicity;
  qs.d_basis = spectrum.cluster_basis(cd);
  qs.d_perp_basis = spectrum.cluster_basis(cp);
  qs.rho = spectrum.clusters[cd].value;
  qs.rho_perp = spectrum.clusters[cp].value;

  // Canonical plane curvatures: K̄ mixes the distributions, K⊥ lies in D⊥,
  // K (q > 1) lies in D.
  const MetricAtPoint& m = pack.metric;
  qs.k_bar = sectional(
      pack, TwoPlane::orthonormal(qs.d_basis.col(0), qs.d_perp_basis.col(0),
                                  m, 1e-8));
  qs.k_perp = sectional(
      pack, TwoPlane::orthonormal(qs.d_perp_basis.col(0),
                                  qs.d_perp_basis.col(1), m, 1e-8));
  if (qs.q > 1) {
    qs.k = sectional(pack,
                     TwoPlane::orthonormal(qs.d_basis.col(0),
                                           qs.d_basis.col(1), m, 1e-8));
    qs.midpoint_residual = std::abs(qs.k_bar - 0.5 * (qs.k + qs.k_perp));
  }

  // The defining functions must be distinct at this point; otherwise the
  // space sits on the constant-curvature boundary.
  const double kscale =
      1.0 + std::abs(qs.k_bar) + std::abs(qs.k_perp) + std::abs(qs.k);
  double gap = qs.q == 1 ? std::abs(qs.k_bar - qs.k_perp)
                         : std::abs(qs.k - qs.k_perp);
  if (gap <= cfg.tol_distinct * kscale)
    return NotQcc{"constant-curvature boundary: defining curvatures are not "
                  "distinct",
                  gap};

  // Validate the angle law on seeded random planes.
  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
  double worst = 0.0;
  for (int trial = 0; trial < cfg.plane_budget; ++trial) {
    Eigen::VectorXd a = rng.vector(n), b = rng.vector(n);
    TwoPlane plane = [&]() {
      while (true) {
        try {
          return TwoPlane::span(a, b, m);
        } catch (const NumericalError&) {
          a = rng.vector(n);
          b = rng.vector(n);
        }
      }
    }();
    PlaneAngles ang = plane_angles(plane, qs.d_basis, m);
    double predicted = qcc_predicted_curvature(qs.q, qs.k, qs.k_bar,
                                               qs.k_perp, ang.theta, ang.phi);
    double actual = sectional(pack, plane);
    worst = std::max(worst, std::abs(actual - predicted) / kscale);
  }
  qs.residual_planes = worst;
  if (worst > cfg.tol_qcc_planes)
    return NotQcc{"sampled planes violate the angle law", worst};
  return qs;
}

std::string_view label_name(Label l) {
  switch (l) {
    case Label::Flat: return "flat";
    case Label::ConstantCurvature: return "constant_curvature";
    case Label::Qcc: return "qcc";
    case Label::Einstein: return "einstein";
    case Label::QuasiEinstein: return "quasi_einstein";
    case Label::ConformallyFlat: return "conformally_flat";
    case Label::SemiSymmetric: return "semi_symmetric";
    case Label::Deszcz: return "deszcz";
    case Label::RicciDeszcz: return "ricci_deszcz";
  }
  return "?";
}

std::optional<Label> label_from_name(std::string_view name) {
  static const Label all[] = {
      Label::Flat,           Label::ConstantCurvature, Label::Qcc,
      Label::Einstein,       Label::QuasiEinstein,     Label::ConformallyFlat,
      Label::SemiSymmetric,  Label::Deszcz,            Label::RicciDeszcz};
  for (Label l : all)
    if (label_name(l) == name) return l;
  return std::nullopt;
}

double ricci_deszcz_residual(const CurvaturePack& pack, double l) {
  DenseTensor diff = pack.rs - l * pack.tach_s;
  return frobenius_norm(diff, pack.metric) / (1.0 + pack.norm_rs);
}

PointClassification classify_point(const CurvaturePack& pack,
                                   const ClassifyConfig& cfg) {
  const int n = pack.dim();
  PointClassification pc;
  pc.point = pack.point;

  pc.res_flat = scaled_residual(pack.norm_riemann, pack.norm_g_wedge);
  pc.res_cc = scaled_residual(pack.norm_tach_r,
                              pack.norm_g_wedge * pack.norm_riemann);
  pc.cc_curvature = pack.scalar / (static_cast<double>(n) * (n - 1));

  {
    DenseTensor traceless = pack.ricci;
    double rho = pack.scalar / n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        traceless.at({i, j}) -= rho * pack.metric.g(i, j);
    pc.res_einstein =
        frobenius_norm(traceless, pack.metric) / (1.0 + pack.norm_ricci);
  }

  pc.res_weyl = scaled_residual(pack.norm_weyl, pack.norm_riemann);
  pc.res_semi = scaled_residual(pack.norm_rr,
                                pack.norm_riemann * pack.norm_riemann);

  DeszczFit fit = fit_deszcz_l(pack, cfg.tol_label);
  pc.res_deszcz = fit.trivially_cc ? 0.0 : fit.residual;
  if (!fit.trivially_cc) pc.l = fit.l;

  {
    double tach_s_residual =
        scaled_residual(pack.norm_tach_s, pack.norm_ricci);
    if (tach_s_residual <= cfg.tol_label) {
      // Einstein-type degeneracy: both derivations of S must vanish.
      pc.res_ricci_deszcz = scaled_residual(
          pack.norm_rs, pack.norm_riemann * pack.norm_ricci);
    } else {
      double tt = inner_product(pack.tach_s, pack.tach_s, pack.metric);
      double rt = inner_product(pack.rs, pack.tach_s, pack.metric);
      pc.res_ricci_deszcz = ricci_deszcz_residual(pack, rt / tt);
    }
  }

  pc.spectrum = ricci_spectrum(pack.ricci, pack.metric, cfg.tol_cluster);
  pc.wildly_anisotropic = pc.spectrum.clusters.size() >= 3;

  const double tol = cfg.tol_label;
  if (pc.res_flat <= tol) pc.labels.insert(Label::Flat);
  if (pc.res_cc <= tol) pc.labels.insert(Label::ConstantCurvature);
  if (pc.res_einstein <= tol) pc.labels.insert(Label::Einstein);
  if (n >= 3 && pc.res_weyl <= tol) pc.labels.insert(Label::ConformallyFlat);
  if (pc.res_semi <= tol) pc.labels.insert(Label::SemiSymmetric);
  if (fit.trivially_cc || pc.res_deszcz <= tol)
    pc.labels.insert(Label::Deszcz);
  if (pc.res_ricci_deszcz <= tol) pc.labels.insert(Label::RicciDeszcz);
  if (pc.spectrum.clusters.size() == 2)
    pc.labels.insert(Label::QuasiEinstein);

  if (pc.spectrum.clusters.size() == 2) {
    auto qcc = detect_qcc(pack, pc.spectrum, cfg);
    if (auto* qs = std::get_if<QccStructure>(&qcc)) {
      pc.qcc = *qs;
      pc.labels.insert(Label::Qcc);
    } else {
      pc.qcc_rejection = std::get<NotQcc>(qcc).reason;
    }
  }
  return pc;
}

std::vector<std::string> lattice_violations(const PointClassification& pc,
                                            int dim,
                                            const ClassifyConfig& cfg) {
  std::vector<std::string> out;
  auto has = [&](Label l) { return pc.labels.count(l) > 0; };
  auto imply = [&](bool premise, bool conclusion, const char* text) {
    if (premise && !conclusion) out.emplace_back(text);
  };

  imply(has(Label::Flat), has(Label::ConstantCurvature),
        "flat must imply constant curvature");
  imply(has(Label::ConstantCurvature), has(Label::Einstein),
        "constant curvature must imply Einstein");
  imply(has(Label::ConstantCurvature), has(Label::SemiSymmetric),
        "constant curvature must imply semi-symmetric");
  imply(has(Label::SemiSymmetric), has(Label::Deszcz),
        "semi-symmetric must imply Deszcz");
  if (has(Label::SemiSymmetric) && pc.l &&
      std::abs(*pc.l) > 1e3 * cfg.tol_label)
    out.emplace_back("semi-symmetric requires L = 0");
  imply(has(Label::Qcc), has(Label::QuasiEinstein),
        "QCC must imply quasi-Einstein");
  imply(has(Label::Einstein), !has(Label::QuasiEinstein),
        "Einstein and quasi-Einstein are exclusive");
  if (dim == 3) {
    imply(has(Label::QuasiEinstein), has(Label::Qcc),
          "3D: quasi-Einstein must imply QCC");
    imply(has(Label::Deszcz),
          has(Label::ConstantCurvature) || has(Label::Qcc),
          "3D: Deszcz must imply constant curvature or QCC");
  }
  if (dim >= 4 && has(Label::ConformallyFlat)) {
    imply(has(Label::QuasiEinstein), has(Label::Qcc),
          "conformally flat: quasi-Einstein must imply QCC");
    imply(has(Label::Einstein), has(Label::ConstantCurvature),
          "conformally flat Einstein must be constant curvature");
    imply(has(Label::Deszcz),
          has(Label::ConstantCurvature) || has(Label::Qcc),
          "conformally flat Deszcz must be constant curvature or QCC");
  }
  if (pc.qcc && pc.l &&
      std::abs(*pc.l - pc.qcc->k_bar) >
          1e-7 * (1.0 + std::abs(pc.qcc->k_bar)))
    out.emplace_back("detected QCC requires L = K̄");
  return out;
}

ClassificationReport aggregate_report(std::string metric_name, int dim,
                                      const ClassifyConfig& cfg,
                                      std::vector<PointClassification> pts) {
  if (pts.empty())
    throw std::invalid_argument("aggregate_report: empty sample");
  ClassificationReport rep;
  rep.metric_name = std::move(metric_name);
  rep.dim = dim;
  rep.config = cfg;
  rep.seed = cfg.seed;
  rep.sample_count = static_cast<int>(pts.size());

  rep.points = std::move(pts);
  const auto& points = rep.points;

  rep.aggregate = points.front().labels;
  for (const auto& pc : points) {
    std::set<Label> keep;
    std::set_intersection(rep.aggregate.begin(), rep.aggregate.end(),
                          pc.labels.begin(), pc.labels.end(),
                          std::inserter(keep, keep.begin()));
    rep.aggregate = std::move(keep);
  }

  // Fixed-multiplicity requirement: q must not vary across points.
  if (rep.aggregate.count(Label::QuasiEinstein)) {
    int q = -1;
    for (const auto& pc : points) {
      int mult = pc.spectrum.clusters.size() == 2
                     ? std::min(pc.spectrum.clusters[0].multiplicity,
                                pc.spectrum.clusters[1].multiplicity)
                     : -1;
      if (q < 0) q = mult;
      if (mult != q) {
        rep.non_constant_multiplicity = true;
        break;
      }
    }
    if (rep.non_constant_multiplicity) {
      rep.aggregate.erase(Label::QuasiEinstein);
      rep.aggregate.erase(Label::Qcc);
    }
  }

  std::vector<double> ls;
  for (const auto& pc : points)
    if (pc.l) ls.push_back(*pc.l);
  if (!ls.empty()) {
    auto [lo, hi] = std::minmax_element(ls.begin(), ls.end());
    rep.l_range = std::make_pair(*lo, *hi);
  }

  if (rep.aggregate.count(Label::ConstantCurvature)) {
    rep.constant_type = 0.0;  // both derivations of R vanish identically
  } else if (rep.aggregate.count(Label::Deszcz) &&
             ls.size() == points.size()) {
    double mean = 0.0;
    for (double v : ls) mean += v;
    mean /= static_cast<double>(ls.size());
    double spread = 0.0;
    for (double v : ls) spread = std::max(spread, std::abs(v - mean));
    if (spread <= cfg.tol_constant_type * (1.0 + std::abs(mean)))
      rep.constant_type = mean;
  }
  return rep;
}

}  // namespace qcurv
