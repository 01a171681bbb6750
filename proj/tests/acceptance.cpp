// Acceptance suite: exact model-geometry scalars and property checks, one
// line per criterion. Exits nonzero if any criterion fails.

#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "oracle.hpp"
#include "qcurv/catalog.hpp"
#include "qcurv/report.hpp"
#include "qcurv/theorems.hpp"

using namespace qcurv;

namespace {

struct Criterion {
  std::string name;
  std::function<void(std::ostringstream&)> run;  // throws on failure
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

void require_close(double got, double want, double tol,
                   const std::string& what) {
  if (!(std::abs(got - want) <= tol))
    throw Failure(what + ": got " + format_double(got) + ", want " +
                  format_double(want) + " +/- " + format_double(tol));
}

ClassificationReport classify_entry(const std::string& name,
                                    int samples = 50) {
  const CatalogEntry* e = find_entry(name);
  require(e != nullptr, "missing catalog entry " + name);
  RunConfig rc;
  rc.samples = samples;
  return run_classification(e->metric, name, rc);
}

struct Sweep {
  std::vector<std::pair<std::string, MetricField>> metrics;
  std::vector<ClassificationReport> reports;
  std::vector<MetricInput> inputs;
};

Sweep sweep(const std::vector<std::string>& names, int samples = 50) {
  Sweep out;
  for (const auto& name : names) {
    const CatalogEntry* e = find_entry(name);
    require(e != nullptr, "missing catalog entry " + name);
    out.metrics.emplace_back(e->name, e->metric);
  }
  RunConfig rc;
  rc.samples = samples;
  for (auto& [name, metric] : out.metrics)
    out.reports.push_back(run_classification(metric, name, rc));
  for (std::size_t i = 0; i < out.metrics.size(); ++i)
    out.inputs.push_back(MetricInput{out.metrics[i].first,
                                     &out.metrics[i].second,
                                     &out.reports[i]});
  return out;
}

void require_check(const Sweep& s, const char* id, double tol,
                   std::ostringstream& log) {
  const TheoremCheck* check = find_check(id);
  require(check != nullptr, std::string("unknown check ") + id);
  CheckResult r = run_check(*check, s.inputs);
  require(r.status == CheckStatus::Pass,
          std::string(id) + " did not pass: " +
              std::string(check_status_name(r.status)) + " " + r.witness);
  require(r.worst_residual <= tol,
          std::string(id) + " worst residual " +
              format_double(r.worst_residual) + " above " +
              format_double(tol));
  log << id << "=" << format_double(r.worst_residual) << " ";
}

// ---------------------------------------------------------------------------

void criterion_space_forms(std::ostringstream& log) {
  struct Case {
    const char* name;
    int n;
    double c;
  };
  const Case cases[] = {{"e3", 3, 0.0}, {"e4", 4, 0.0}, {"s3", 3, 1.0},
                        {"s4", 4, 1.0}, {"h3", 3, -1.0}, {"h4", 4, -1.0}};
  double worst_tach = 0.0, worst_k = 0.0, worst_ric = 0.0, worst_weyl = 0.0;
  for (const auto& cs : cases) {
    const CatalogEntry* e = find_entry(cs.name);
    auto points = sample_points(e->metric, 50, 42);
    Rng rng(42 ^ 0xbeef);
    int planes = 0;
    for (const auto& pt : points) {
      std::vector<double> p(pt.data(), pt.data() + pt.size());
      CurvaturePack pack = curvature_pack(e->metric, p);
      worst_tach = std::max(
          worst_tach, scaled_residual(pack.norm_tach_r,
                                      pack.norm_g_wedge * pack.norm_riemann));
      for (int trial = 0; trial < 4; ++trial, ++planes) {  // 4 x 50 = 200
        TwoPlane plane =
            TwoPlane::span(rng.vector(cs.n), rng.vector(cs.n), pack.metric);
        worst_k = std::max(worst_k, std::abs(sectional(pack, plane) - cs.c));
      }
      // Einstein with rho = (n-1)c.
      RicciSpectrum spec =
          ricci_spectrum(pack.ricci, pack.metric, 1e-6);
      require(spec.clusters.size() == 1,
              std::string(cs.name) + " is not Einstein");
      worst_ric = std::max(worst_ric, std::abs(spec.clusters[0].value -
                                               (cs.n - 1) * cs.c));
      worst_weyl = std::max(
          worst_weyl, scaled_residual(pack.norm_weyl, pack.norm_riemann));
    }
    require(planes == 200, "plane budget not exhausted");
  }
  require(worst_tach <= 1e-8, "wedge derivation of R above 1e-8: " +
                                  format_double(worst_tach));
  require(worst_k <= 1e-8,
          "sectional curvature off c by " + format_double(worst_k));
  require(worst_ric <= 1e-8,
          "principal Ricci off (n-1)c by " + format_double(worst_ric));
  require(worst_weyl <= 1e-9,
          "Weyl residual above 1e-9: " + format_double(worst_weyl));
  log << "tach=" << format_double(worst_tach)
      << " K=" << format_double(worst_k)
      << " ricci=" << format_double(worst_ric)
      << " weyl=" << format_double(worst_weyl);
}

void criterion_thurston(std::ostringstream& log) {
  ClassificationReport sol = classify_entry("sol");
  require(sol.constant_type.has_value(), "sol has no constant type");
  require_close(*sol.constant_type, -1.0, 1e-7, "sol constant type");

  ClassificationReport nil = classify_entry("nil");
  require(nil.constant_type.has_value(), "nil has no constant type");
  require_close(*nil.constant_type, 0.25, 1e-7, "nil constant type");
  require(*nil.constant_type > 0, "nil constant type must be positive");
  require(*sol.constant_type < 0, "sol constant type must be negative");

  for (const char* name : {"s2xe1", "h2xe1"}) {
    ClassificationReport rep = classify_entry(name);
    require(rep.aggregate.count(Label::SemiSymmetric) == 1,
            std::string(name) + " must be semi-symmetric");
    double expect_kperp = name[0] == 's' ? 1.0 : -1.0;
    for (const auto& pc : rep.points) {
      require(pc.res_semi <= 1e-8,
              std::string(name) + " semi residual above 1e-8");
      require(pc.qcc.has_value(), std::string(name) + " lost its QCC");
      require_close(pc.qcc->k_bar, 0.0, 1e-7, "Kbar");
      require_close(pc.qcc->k_perp, expect_kperp, 1e-7, "Kperp");
    }
  }
  log << "sol=" << format_double(*sol.constant_type)
      << " nil=" << format_double(*nil.constant_type);
}

void criterion_proposition(std::ostringstream& log) {
  double worst = 0.0;
  for (const char* name :
       {"sol", "nil", "sl2r", "s2xe1", "h2xe1", "s2xh2", "warped"}) {
    ClassificationReport rep = classify_entry(name);
    for (const auto& pc : rep.points) {
      require(pc.qcc.has_value(), std::string(name) + " point lost QCC");
      require(pc.l.has_value(), std::string(name) + " has no fitted L");
      worst = std::max(worst, std::abs(*pc.l - pc.qcc->k_bar) /
                                  (1.0 + std::abs(pc.qcc->k_bar)));
    }
  }
  require(worst <= 1e-7, "fitted L vs Kbar residual " + format_double(worst));

  // The warp has non-constant L with the closed form sin t/(2+sin t).
  ClassificationReport warped = classify_entry("warped");
  require(!warped.constant_type.has_value(),
          "warped must not have a constant type");
  double worst_formula = 0.0;
  for (const auto& pc : warped.points) {
    double t = pc.point[0];
    double expect = std::sin(t) / (2.0 + std::sin(t));
    worst_formula = std::max(worst_formula, std::abs(*pc.l - expect));
  }
  require(worst_formula <= 1e-7,
          "warped L vs closed form " + format_double(worst_formula));
  require(warped.l_range && warped.l_range->second - warped.l_range->first >
                                0.05,
          "warped L must vary across the sample");
  log << "LvsKbar=" << format_double(worst)
      << " warped=" << format_double(worst_formula);
}

void criterion_theorem1_instance(std::ostringstream& log) {
  ClassificationReport rep = classify_entry("s2xh2");
  for (const auto& pc : rep.points) {
    require(pc.labels.count(Label::ConformallyFlat) == 1,
            "s2xh2 must be conformally flat");
    require(pc.res_weyl <= 1e-9, "s2xh2 Weyl residual above 1e-9");
    require(pc.labels.count(Label::QuasiEinstein) == 1,
            "s2xh2 must be quasi-Einstein");
    require(pc.qcc.has_value() && pc.qcc->q == 2, "s2xh2 must be (2) QCC");
    require_close(pc.qcc->k, 1.0, 1e-7, "K");
    require_close(pc.qcc->k_perp, -1.0, 1e-7, "Kperp");
    require_close(pc.qcc->k_bar, 0.0, 1e-7, "Kbar");
    require(pc.qcc->midpoint_residual <= 1e-9,
            "midpoint identity above 1e-9: " +
                format_double(pc.qcc->midpoint_residual));
  }
  ClassificationReport generic = classify_entry("generic4");
  for (const auto& pc : generic.points) {
    require(pc.labels.count(Label::ConformallyFlat) == 0 &&
                pc.res_weyl > 1e-3,
            "generic4 must have nonzero Weyl curvature");
    require(pc.labels.count(Label::QuasiEinstein) == 0,
            "generic4 must not be quasi-Einstein");
    require(!pc.qcc.has_value() &&
                pc.labels.count(Label::Qcc) == 0,
            "generic4 must not be QCC");
  }
  log << "midpoint<=1e-9, generic4 fails both sides";
}

void criterion_theorems_2_4(std::ostringstream& log) {
  Sweep dim3 = sweep({"e3", "s3", "h3", "s2xe1", "h2xe1", "nil", "sol",
                      "sl2r", "warped"});
  require_check(dim3, "T2", 1e-7, log);
  require_check(dim3, "T3", 1e-7, log);
  Sweep dim4 = sweep({"e4", "s4", "h4", "s2xh2", "generic4"});
  require_check(dim4, "T1", 1e-7, log);
  require_check(dim4, "T4", 1e-7, log);
}

void criterion_theorem_l(std::ostringstream& log) {
  Sweep all = sweep({"e3", "s3", "h3", "e4", "s4", "h4", "s2xe1", "h2xe1",
                     "s2xh2", "nil", "sol", "sl2r", "warped"});
  require_check(all, "TL", 1e-7, log);
}

void criterion_six_arg_values(std::ostringstream& log) {
  // Solvgeometry: the canonical evaluations are exactly (2, -2).
  const CatalogEntry* sol = find_entry("sol");
  double worst_sol = 0.0;
  RunConfig rc;
  rc.samples = 50;
  ClassificationReport rep = run_classification(sol->metric, "sol", rc);
  for (const auto& pc : rep.points) {
    std::vector<double> p(pc.point.data(), pc.point.data() + 3);
    CurvaturePack pack = curvature_pack(sol->metric, p);
    SixArgValues v = qcc_witness_values(pack, pc.qcc->d_basis.col(0),
                                        pc.qcc->d_perp_basis.col(0),
                                        pc.qcc->d_perp_basis.col(1));
    worst_sol = std::max(worst_sol, std::abs(v.tach - 2.0));
    worst_sol = std::max(worst_sol, std::abs(v.rr - (-2.0)));
  }
  require(worst_sol <= 1e-8, "sol six-argument values off (2,-2) by " +
                                 format_double(worst_sol));

  Sweep qcc = sweep({"sol", "nil", "sl2r", "s2xe1", "h2xe1", "s2xh2",
                     "warped"});
  require_check(qcc, "EQ1617", 1e-7, log);
  log << "sol=" << format_double(worst_sol);
}

void criterion_ricci_bookkeeping(std::ostringstream& log) {
  Sweep qcc = sweep({"sol", "nil", "sl2r", "s2xe1", "h2xe1", "s2xh2",
                     "warped"});
  require_check(qcc, "PROFILE", 1e-8, log);
}

void criterion_robustness(std::ostringstream& log) {
  // Jets against central finite differences at 100 points per metric.
  double worst = 0.0;
  for (const auto& e : catalog()) {
    auto points = oracle::random_points(e.metric, 100, 2024);
    for (const auto& p : points) {
      for (int i = 0; i < e.metric.dim(); ++i)
        for (int j = 0; j <= i; ++j) {
          const ExprPtr& comp = e.metric.component(i, j);
          if (comp->kind == Expr::Kind::Number) continue;
          Jet2 jet = eval_jet2(comp, p);
          oracle::FdJet fd = oracle::fd_jet(*comp, p);
          for (int a = 0; a < e.metric.dim(); ++a) {
            worst = std::max(worst, std::abs(jet.grad[a] - fd.grad[a]) /
                                        (1.0 + std::abs(fd.grad[a])));
            for (int b = 0; b < e.metric.dim(); ++b)
              worst = std::max(worst,
                               std::abs(jet.hess(a, b) - fd.hess(a, b)) /
                                   (1.0 + std::abs(fd.hess(a, b))));
          }
        }
    }
  }
  require(worst <= 1e-5, "jets vs finite differences: " +
                             format_double(worst));

  // Label invariance under scaling.
  RunConfig rc;
  rc.samples = 10;
  for (const auto& e : catalog()) {
    ClassificationReport base = run_classification(e.metric, e.name, rc);
    for (double lambda2 : {0.25, 4.0}) {
      ClassificationReport scaled = run_classification(
          scale_metric(e.metric, lambda2), e.name, rc);
      require(scaled.aggregate == base.aggregate,
              e.name + " labels changed under scaling " +
                  format_double(lambda2));
    }
  }

  // Label invariance under one fixed seeded linear chart change.
  Rng rng(20240819);
  for (const char* name : {"sol", "s2xh2", "warped"}) {
    const CatalogEntry* e = find_entry(name);
    const int n = e->metric.dim();
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) += 0.2 * rng.uniform(-1.0, 1.0);
    for (int i = 0; i < n; ++i) a.row(i) /= a.row(i).cwiseAbs().sum();
    Eigen::VectorXd center(n);
    Eigen::MatrixXd b(n, n);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
      const auto& dom = e->metric.domain(i);
      center[i] = 0.5 * (dom.lo + dom.hi);
      b.row(i) = 0.45 * (dom.hi - dom.lo) * a.row(i);
      names.push_back("y" + std::to_string(i + 1));
    }
    MetricField moved = pullback_linear(
        e->metric, b, center, names,
        std::vector<CoordInterval>(n, CoordInterval{-1.0, 1.0}));
    ClassificationReport base = run_classification(e->metric, name, rc);
    ClassificationReport transformed =
        run_classification(moved, name, rc);
    require(transformed.aggregate == base.aggregate,
            std::string(name) + " labels changed under a chart change");
  }

  // Determinism: two identical runs render identical JSON.
  const CatalogEntry* nil = find_entry("nil");
  ClassificationReport r1 = run_classification(nil->metric, "nil", rc);
  ClassificationReport r2 = run_classification(nil->metric, "nil", rc);
  require(render_json(r1) == render_json(r2), "JSON output not stable");

  log << "jets=" << format_double(worst) << " scaling+chart+json ok";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1. space forms: wedge derivation, K = c, Einstein, Weyl",
       criterion_space_forms},
      {"2. Thurston: sol/nil constant types, products semi-symmetric",
       criterion_thurston},
      {"3. proposition: fitted L equals Kbar, warped non-constant",
       criterion_proposition},
      {"4. conformally flat quasi-Einstein instance on s2xh2 + control",
       criterion_theorem1_instance},
      {"5. 3D and 4D equivalences (T1-T4)", criterion_theorems_2_4},
      {"6. Ricci derivation proportionality (TL)", criterion_theorem_l},
      {"7. six-argument derivation values (EQ1617)",
       criterion_six_arg_values},
      {"8. Ricci bookkeeping and angle profile (PROFILE)",
       criterion_ricci_bookkeeping},
      {"9. oracles, scaling, chart change, determinism",
       criterion_robustness},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::ostringstream log;
    try {
      c.run(log);
      std::cout << "[PASS] " << c.name;
      if (!log.str().empty()) std::cout << "  (" << log.str() << ")";
      std::cout << "\n";
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "[FAIL] " << c.name << ": " << e.what() << "\n";
    }
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
