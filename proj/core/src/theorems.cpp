#include "qcurv/theorems.hpp"

#include <cmath>
#include <numbers>

#include "qcurv/rng.hpp"

namespace qcurv {

std::string_view check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::NotApplicable: return "NOT-APPLICABLE";
  }
  return "?";
}

namespace {

std::string describe_point(const MetricInput& in, std::size_t idx) {
  std::string s = in.name + " point " + std::to_string(idx) + " (";
  const auto& p = in.report->points[idx].point;
  for (int d = 0; d < p.size(); ++d)
    s += (d ? "," : "") + format_double(p[d]);
  return s + ")";
}

// A labelled condition with a diagnostic residual ("how far from holding").
struct Side {
  std::function<bool(const PointClassification&)> holds;
  std::function<double(const PointClassification&)> residual;
};

Side label_side(Label l) {
  return Side{[l](const PointClassification& pc) {
                return pc.labels.count(l) > 0;
              },
              [l](const PointClassification& pc) {
                switch (l) {
                  case Label::Flat: return pc.res_flat;
                  case Label::ConstantCurvature: return pc.res_cc;
                  case Label::Einstein: return pc.res_einstein;
                  case Label::ConformallyFlat: return pc.res_weyl;
                  case Label::SemiSymmetric: return pc.res_semi;
                  case Label::Deszcz: return pc.res_deszcz;
                  case Label::RicciDeszcz: return pc.res_ricci_deszcz;
                  case Label::QuasiEinstein:
                  case Label::Qcc:
                    return pc.qcc ? pc.qcc->residual_planes : 1.0;
                }
                return 1.0;
              }};
}

Side and_side(Side a, Side b) {
  return Side{[=](const PointClassification& pc) {
                return a.holds(pc) && b.holds(pc);
              },
              [=](const PointClassification& pc) {
                return std::max(a.residual(pc), b.residual(pc));
              }};
}

Side or_side(Side a, Side b) {
  return Side{[=](const PointClassification& pc) {
                return a.holds(pc) || b.holds(pc);
              },
              [=](const PointClassification& pc) {
                return std::min(a.residual(pc), b.residual(pc));
              }};
}

using DimFilter = std::function<bool(int)>;
using PointFilter = std::function<bool(const PointClassification&)>;

const PointFilter kAnyPoint = [](const PointClassification&) { return true; };

/// Bidirectional pointwise equivalence over every input metric passing the
/// dimension filter and every point passing `premise`.
CheckResult eval_equivalence(const std::string& id,
                             std::span<const MetricInput> inputs,
                             const DimFilter& dims, const PointFilter& premise,
                             const Side& lhs, const Side& rhs) {
  CheckResult res;
  res.id = id;
  bool failed = false;
  for (const auto& in : inputs) {
    if (!dims(in.report->dim)) continue;
    for (std::size_t i = 0; i < in.report->points.size(); ++i) {
      const auto& pc = in.report->points[i];
      if (!premise(pc)) continue;
      if (lhs.holds(pc)) {
        ++res.instances;
        if (rhs.holds(pc)) {
          res.worst_residual =
              std::max(res.worst_residual, rhs.residual(pc));
        } else {
          if (!failed)
            res.witness = describe_point(in, i) + ": forward direction";
          failed = true;
        }
      }
      if (rhs.holds(pc)) {
        ++res.instances;
        if (lhs.holds(pc)) {
          res.worst_residual =
              std::max(res.worst_residual, lhs.residual(pc));
        } else {
          if (!failed)
            res.witness = describe_point(in, i) + ": reverse direction";
          failed = true;
        }
      }
    }
  }
  if (failed) res.status = CheckStatus::Fail;
  else res.status = res.instances > 0 ? CheckStatus::Pass
                                      : CheckStatus::NotApplicable;
  return res;
}

/// Per-point residual test with recomputed curvature packs; `fn` returns
/// the worst residual at the point or a negative value to skip it.
template <typename Fn>
CheckResult eval_with_packs(const std::string& id,
                            std::span<const MetricInput> inputs,
                            const DimFilter& dims, double tol, Fn&& fn) {
  CheckResult res;
  res.id = id;
  for (const auto& in : inputs) {
    if (!dims(in.report->dim)) continue;
    for (std::size_t i = 0; i < in.report->points.size(); ++i) {
      const auto& pc = in.report->points[i];
      std::vector<double> coords(pc.point.data(),
                                 pc.point.data() + pc.point.size());
      CurvaturePack pack = curvature_pack(*in.metric, coords);
      double r = fn(in, pc, pack);
      if (r < 0.0) continue;
      ++res.instances;
      if (r > res.worst_residual) {
        res.worst_residual = r;
        if (r > tol) {
          res.status = CheckStatus::Fail;
          res.witness = describe_point(in, i);
        }
      }
    }
  }
  if (res.status != CheckStatus::Fail)
    res.status = res.instances > 0 ? CheckStatus::Pass
                                   : CheckStatus::NotApplicable;
  return res;
}

const DimFilter dim3 = [](int n) { return n == 3; };
const DimFilter dim4up = [](int n) { return n >= 4; };
const DimFilter dim3up = [](int n) { return n >= 3; };

Side qe_side() { return label_side(Label::QuasiEinstein); }
Side qcc_side() { return label_side(Label::Qcc); }
Side cc_side() { return label_side(Label::ConstantCurvature); }
Side einstein_side() { return label_side(Label::Einstein); }
Side deszcz_side() { return label_side(Label::Deszcz); }
Side confflat_side() { return label_side(Label::ConformallyFlat); }
Side semi_side() { return label_side(Label::SemiSymmetric); }

PointFilter confflat_premise() {
  return [](const PointClassification& pc) {
    return pc.labels.count(Label::ConformallyFlat) > 0;
  };
}

/// Skips metrics whose Ricci multiplicities vary across the sample (the
/// fixed-multiplicity hypothesis of the Deszcz characterizations).
std::vector<MetricInput> constant_multiplicity(
    std::span<const MetricInput> inputs) {
  std::vector<MetricInput> out;
  for (const auto& in : inputs)
    if (!in.report->non_constant_multiplicity) out.push_back(in);
  return out;
}

std::vector<TheoremCheck> build_checks() {
  std::vector<TheoremCheck> checks;

  checks.push_back(
      {"TE",
       "a 3-dimensional Einstein space has constant curvature, and "
       "conversely",
       [](std::span<const MetricInput> inputs) {
         return eval_equivalence("TE", inputs, dim3, kAnyPoint,
                                 einstein_side(), cc_side());
       }});

  checks.push_back(
      {"TF",
       "a 3-dimensional space with constant Ricci multiplicities is Deszcz "
       "symmetric exactly when it is Einstein or quasi-Einstein",
       [](std::span<const MetricInput> inputs) {
         auto kept = constant_multiplicity(inputs);
         return eval_equivalence("TF", kept, dim3, kAnyPoint, deszcz_side(),
                                 or_side(einstein_side(), qe_side()));
       }});

  checks.push_back(
      {"TG",
       "the conformal curvature tensor of any 3-dimensional space vanishes",
       [](std::span<const MetricInput> inputs) {
         return eval_with_packs(
             "TG", inputs, dim3, 1e-9,
             [](const MetricInput&, const PointClassification& pc,
                const CurvaturePack&) { return pc.res_weyl; });
       }});

  checks.push_back(
      {"TH",
       "for dimension >= 4, the conformally-flat label coincides with a "
       "vanishing conformal curvature residual",
       [](std::span<const MetricInput> inputs) {
         CheckResult res;
         res.id = "TH";
         for (const auto& in : inputs) {
           if (!dim4up(in.report->dim)) continue;
           for (std::size_t i = 0; i < in.report->points.size(); ++i) {
             const auto& pc = in.report->points[i];
             ++res.instances;
             bool label = pc.labels.count(Label::ConformallyFlat) > 0;
             bool residual_ok = pc.res_weyl <= in.report->config.tol_label;
             if (label != residual_ok) {
               res.status = CheckStatus::Fail;
               res.witness = describe_point(in, i);
             }
             if (label)
               res.worst_residual =
                   std::max(res.worst_residual, pc.res_weyl);
           }
         }
         if (res.status != CheckStatus::Fail)
           res.status = res.instances > 0 ? CheckStatus::Pass
                                          : CheckStatus::NotApplicable;
         return res;
       }});

  checks.push_back(
      {"TJ",
       "a conformally flat Einstein space of dimension >= 4 has constant "
       "curvature, and conversely",
       [](std::span<const MetricInput> inputs) {
         return eval_equivalence("TJ", inputs, dim4up, kAnyPoint,
                                 and_side(confflat_side(), einstein_side()),
                                 cc_side());
       }});

  checks.push_back(
      {"T1",
       "a conformally flat quasi-Einstein space of dimension >= 4 has "
       "quasi-constant curvature, and conversely",
       [](std::span<const MetricInput> inputs) {
         return eval_equivalence("T1", inputs, dim4up, kAnyPoint,
                                 and_side(confflat_side(), qe_side()),
                                 qcc_side());
       }});

  checks.push_back(
      {"T2",
       "a 3-dimensional quasi-Einstein space has quasi-constant curvature, "
       "and conversely",
       [](std::span<const MetricInput> inputs) {
         return eval_equivalence("T2", inputs, dim3, kAnyPoint, qe_side(),
                                 qcc_side());
       }});

  checks.push_back(
      {"T3",
       "a 3-dimensional space is Deszcz symmetric exactly when it has "
       "constant or quasi-constant curvature",
       [](std::span<const MetricInput> inputs) {
         return eval_equivalence("T3", inputs, dim3, kAnyPoint, deszcz_side(),
                                 or_side(cc_side(), qcc_side()));
       }});

  checks.push_back(
      {"T4",
       "a conformally flat space of dimension >= 4 is Deszcz symmetric "
       "exactly when it has constant or quasi-constant curvature",
       [](std::span<const MetricInput> inputs) {
         return eval_equivalence("T4", inputs, dim4up, confflat_premise(),
                                 deszcz_side(),
                                 or_side(cc_side(), qcc_side()));
       }});

  checks.push_back(
      {"TK",
       "a conformally flat semi-symmetric space has constant curvature or "
       "quasi-constant curvature with vanishing mixed curvature, and "
       "conversely",
       [](std::span<const MetricInput> inputs) {
         Side qcc_kbar0{
             [](const PointClassification& pc) {
               return pc.qcc &&
                      std::abs(pc.qcc->k_bar) <=
                          1e-7 * (1.0 + std::abs(pc.qcc->k_perp));
             },
             [](const PointClassification& pc) {
               return pc.qcc ? std::abs(pc.qcc->k_bar) : 1.0;
             }};
         return eval_equivalence("TK", inputs, dim3up, confflat_premise(),
                                 semi_side(),
                                 or_side(cc_side(), qcc_kbar0));
       }});

  checks.push_back(
      {"TL",
       "on conformally flat spaces the factor fitted between the curvature "
       "derivations of R also binds the derivations of the Ricci tensor, "
       "and conversely",
       [](std::span<const MetricInput> inputs) {
         return eval_with_packs(
             "TL", inputs, dim3up, 1e-7,
             [](const MetricInput& in, const PointClassification& pc,
                const CurvaturePack& pack) -> double {
               if (pc.labels.count(Label::ConformallyFlat) == 0) return -1.0;
               double worst = 0.0;
               // Forward: L from the R derivations must bind the S pair.
               double l = pc.l ? *pc.l : 0.0;
               worst = std::max(worst, ricci_deszcz_residual(pack, l));
               // Reverse: a factor fitted on the S pair must bind the R
               // pair (when both denominators are meaningful).
               double tach_s_scale =
                   scaled_residual(pack.norm_tach_s, pack.norm_ricci);
               if (tach_s_scale > in.report->config.tol_label &&
                   pc.l.has_value()) {
                 double tt =
                     inner_product(pack.tach_s, pack.tach_s, pack.metric);
                 double rt = inner_product(pack.rs, pack.tach_s, pack.metric);
                 double ls = rt / tt;
                 DenseTensor diff = pack.rr - ls * pack.tach_r;
                 worst = std::max(worst,
                                  frobenius_norm(diff, pack.metric) /
                                      (1.0 + pack.norm_rr));
               }
               return worst;
             });
       }});

  checks.push_back(
      {"LEMMA",
       "in a principal Ricci frame of a detected QCC space, curvature "
       "components with three or more distinct arguments vanish",
       [](std::span<const MetricInput> inputs) {
         return eval_with_packs(
             "LEMMA", inputs, dim3up, 1e-8,
             [](const MetricInput&, const PointClassification& pc,
                const CurvaturePack& pack) -> double {
               if (!pc.qcc) return -1.0;
               const int n = pack.dim();
               Eigen::MatrixXd frame(n, n);
               frame.leftCols(pc.qcc->q) = pc.qcc->d_basis;
               frame.rightCols(pc.qcc->q_perp) = pc.qcc->d_perp_basis;
               DenseTensor r_frame =
                   transform_all_slots(pack.riemann, frame);
               double worst = 0.0;
               for (int a = 0; a < n; ++a)
                 for (int b = 0; b < n; ++b)
                   for (int c = 0; c < n; ++c)
                     for (int d = 0; d < n; ++d) {
                       int distinct = 1;
                       int idx[4] = {a, b, c, d};
                       for (int s = 1; s < 4; ++s) {
                         bool seen = false;
                         for (int t = 0; t < s; ++t)
                           if (idx[t] == idx[s]) seen = true;
                         if (!seen) ++distinct;
                       }
                       if (distinct < 3) continue;
                       worst = std::max(
                           worst,
                           scaled_residual(r_frame.at({a, b, c, d}),
                                           pack.norm_riemann));
                     }
               return worst;
             });
       }});

  checks.push_back(
      {"PROP",
       "a quasi-constant-curvature space is Deszcz symmetric with double "
       "sectional curvature equal to Kbar",
       [](std::span<const MetricInput> inputs) {
         return eval_with_packs(
             "PROP", inputs, dim3up, 1e-7,
             [](const MetricInput& in, const PointClassification& pc,
                const CurvaturePack& pack) -> double {
               if (!pc.qcc || !pc.l) return -1.0;
               double kbar = pc.qcc->k_bar;
               double scale = 1.0 + std::abs(kbar);
               double worst = std::abs(*pc.l - kbar) / scale;
               // Sampled curvature-dependent plane pairs must agree too.
               Rng rng(in.report->config.seed ^ 0xa5a5a5a5ull);
               const int n = pack.dim();
               int found = 0, attempts = 0;
               while (found < 100 && attempts < 2000) {
                 ++attempts;
                 try {
                   TwoPlane p1 = TwoPlane::span(rng.vector(n), rng.vector(n),
                                                pack.metric);
                   TwoPlane p2 = TwoPlane::span(rng.vector(n), rng.vector(n),
                                                pack.metric);
                   DoubleSectional ds = double_sectional(
                       pack, p1, p2, in.report->config.tol_dependent);
                   if (!ds.dependent) continue;
                   ++found;
                   worst = std::max(worst,
                                    std::abs(ds.value - kbar) / scale);
                 } catch (const NumericalError&) {
                   continue;
                 }
               }
               return worst;
             });
       }});

  checks.push_back(
      {"EQ1617",
       "the canonical six-argument derivation values on a QCC space equal "
       "(Kperp - Kbar) and Kbar (Kperp - Kbar)",
       [](std::span<const MetricInput> inputs) {
         return eval_with_packs(
             "EQ1617", inputs, dim3up, 1e-7,
             [](const MetricInput&, const PointClassification& pc,
                const CurvaturePack& pack) -> double {
               if (!pc.qcc || pc.qcc->q_perp < 2) return -1.0;
               SixArgValues v = qcc_witness_values(
                   pack, pc.qcc->d_basis.col(0), pc.qcc->d_perp_basis.col(0),
                   pc.qcc->d_perp_basis.col(1));
               double kbar = pc.qcc->k_bar, kperp = pc.qcc->k_perp;
               double scale = 1.0 + std::abs(kbar) + std::abs(kperp);
               double r1 = std::abs(v.tach - (kperp - kbar)) / scale;
               double r2 = std::abs(v.rr - kbar * (kperp - kbar)) / scale;
               return std::max(r1, r2);
             });
       }});

  checks.push_back(
      {"PROFILE",
       "the Ricci curvatures of a QCC space follow the closed-form angle "
       "profile, with extrema only in the distinguished directions",
       [](std::span<const MetricInput> inputs) {
         return eval_with_packs(
             "PROFILE", inputs, dim3up, 1e-8,
             [](const MetricInput& in, const PointClassification& pc,
                const CurvaturePack& pack) -> double {
               if (!pc.qcc) return -1.0;
               const QccStructure& qs = *pc.qcc;
               const int n = pack.dim();
               double scale =
                   1.0 + std::abs(qs.rho) + std::abs(qs.rho_perp);

               // Principal Ricci values from the plane curvatures.
               double rho_pred =
                   (qs.q - 1) * qs.k + qs.q_perp * qs.k_bar;
               double rho_perp_pred =
                   qs.q * qs.k_bar + (qs.q_perp - 1) * qs.k_perp;
               double worst =
                   std::abs(rho_pred - qs.rho) / scale;
               worst = std::max(
                   worst, std::abs(rho_perp_pred - qs.rho_perp) / scale);

               // Scalar curvature bookkeeping.
               double tau_pred =
                   qs.q * qs.rho + qs.q_perp * qs.rho_perp;
               worst = std::max(worst, std::abs(tau_pred - pack.scalar) /
                                           (1.0 + std::abs(pack.scalar)));

               // Angle profile against direct Ricci evaluations.
               Rng rng(in.report->config.seed ^ 0x5f5f5f5full);
               const Eigen::VectorXd u = qs.d_basis.col(0);
               const Eigen::VectorXd up = qs.d_perp_basis.col(0);
               for (int trial = 0; trial < 20; ++trial) {
                 double psi = rng.uniform(0.0, std::numbers::pi / 2);
                 Eigen::VectorXd dir =
                     std::cos(psi) * u + std::sin(psi) * up;
                 double direct =
                     ricci_direction(pack.ricci, dir, pack.metric);
                 double profile = qcc_ricci_profile(
                     qs.q, n, qs.k, qs.k_bar, qs.k_perp, psi);
                 worst =
                     std::max(worst, std::abs(direct - profile) / scale);
                 double two_value = qs.rho * std::cos(psi) * std::cos(psi) +
                                    qs.rho_perp * std::sin(psi) *
                                        std::sin(psi);
                 worst =
                     std::max(worst, std::abs(direct - two_value) / scale);
               }

               // Extrema of the sampled profile sit at the endpoints only.
               const int grid = 41;
               double end_lo = qcc_ricci_profile(qs.q, n, qs.k, qs.k_bar,
                                                 qs.k_perp, 0.0);
               double end_hi = qcc_ricci_profile(qs.q, n, qs.k, qs.k_bar,
                                                 qs.k_perp,
                                                 std::numbers::pi / 2);
               double lo = std::min(end_lo, end_hi);
               double hi = std::max(end_lo, end_hi);
               for (int i = 1; i + 1 < grid; ++i) {
                 double psi = std::numbers::pi / 2 * i / (grid - 1);
                 double v = qcc_ricci_profile(qs.q, n, qs.k, qs.k_bar,
                                              qs.k_perp, psi);
                 if (v < lo - 1e-8 * scale || v > hi + 1e-8 * scale)
                   return 1.0;  // interior extremum: fail loudly
               }
               return worst;
             });
       }});

  return checks;
}

}  // namespace

const std::vector<TheoremCheck>& theorem_checks() {
  static const std::vector<TheoremCheck> checks = build_checks();
  return checks;
}

const TheoremCheck* find_check(std::string_view id) {
  for (const auto& c : theorem_checks())
    if (c.id == id) return &c;
  return nullptr;
}

CheckResult run_check(const TheoremCheck& check,
                      std::span<const MetricInput> inputs) {
  return check.run(inputs);
}

}  // namespace qcurv
