#include <doctest.h>

#include <cmath>
#include <set>

#include "oracle.hpp"
#include "qcurv/catalog.hpp"
#include "qcurv/report.hpp"

using namespace qcurv;

TEST_CASE("space form charts") {
  CHECK_THROWS_AS((void)make_space_form(1, 0.0), std::invalid_argument);

  // Curvature-c sphere chart: classified constant curvature with that c.
  MetricField s3c4 = make_space_form(3, 4.0);
  std::vector<double> p = {1.0, 1.2, 0.8};
  CurvaturePack pack = curvature_pack(s3c4, p);
  PointClassification pc = classify_point(pack, ClassifyConfig{});
  CHECK(pc.labels.count(Label::ConstantCurvature) == 1);
  CHECK(pc.cc_curvature == doctest::Approx(4.0).epsilon(1e-9));

  MetricField h4 = make_space_form(4, -1.0);
  std::vector<double> q = {0.7, 1.1, 1.3, 0.9};
  PointClassification hc = classify_point(curvature_pack(h4, q),
                                          ClassifyConfig{});
  CHECK(hc.labels.count(Label::ConstantCurvature) == 1);
  CHECK(hc.labels.count(Label::Einstein) == 1);
  CHECK(hc.labels.count(Label::ConformallyFlat) == 1);
  CHECK(hc.cc_curvature == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("products reject coordinate clashes") {
  MetricField a = make_space_form(2, 1.0);
  CHECK_THROWS_AS((void)make_product(a, a), std::invalid_argument);
  MetricField b = make_space_form(2, -1.0);
  MetricField prod = make_product(a, b);  // t*, u* prefixes are disjoint
  CHECK(prod.dim() == 4);
  std::vector<double> p = {1.0, 1.2, 0.9, 1.1};
  Eigen::MatrixXd g = prod.value(p);
  CHECK(g.block(0, 2, 2, 2).isZero(0.0));
}

TEST_CASE("warped products: flat, hyperbolic and quasi-constant cases") {
  ClassifyConfig cfg;

  // f == 1, k = 0: a flat product; not quasi-constant curvature.
  MetricField flat = make_warped(make_number(1.0), 0.0, 3);
  std::vector<double> p = {0.5, 0.2, -0.3};
  PointClassification pf = classify_point(curvature_pack(flat, p), cfg);
  CHECK(pf.labels.count(Label::Flat) == 1);
  CHECK(pf.labels.count(Label::Qcc) == 0);

  // f = cosh t over a curvature -1 fiber is hyperbolic space: the detector
  // must report constant curvature, not QCC.
  ExprPtr t = make_var(0, "t");
  MetricField hyp = make_warped(make_call(Fn::Cosh, t), -1.0, 3,
                                CoordInterval{0.1, 1.2});
  std::vector<double> q = {0.6, 0.5, 0.9};
  PointClassification ph = classify_point(curvature_pack(hyp, q), cfg);
  CHECK(ph.labels.count(Label::ConstantCurvature) == 1);
  CHECK(ph.labels.count(Label::Qcc) == 0);
  CHECK(ph.cc_curvature == doctest::Approx(-1.0).epsilon(1e-8));

  // The catalog warp has the closed-form plane curvatures.
  const CatalogEntry* warped = find_entry("warped");
  for (auto& w : oracle::random_points(warped->metric, 5, 91)) {
    PointClassification pc =
        classify_point(curvature_pack(warped->metric, w), cfg);
    REQUIRE(pc.qcc);
    double tt = w[0];
    CHECK(pc.qcc->k_bar ==
          doctest::Approx(std::sin(tt) / (2 + std::sin(tt))).epsilon(1e-8));
  }

  CHECK_THROWS_AS((void)make_warped(make_number(1.0), 0.0, 2),
                  std::invalid_argument);
}

TEST_CASE("negative control stays generic, also under scaling") {
  RunConfig rc;
  rc.samples = 10;
  const CatalogEntry* e = find_entry("generic4");
  ClassificationReport rep = run_classification(e->metric, "generic4", rc);
  CHECK(rep.aggregate.empty());
  for (const auto& pc : rep.points) {
    CHECK(pc.res_weyl > 1e-3);
    CHECK(pc.spectrum.clusters.size() >= 3);
    CHECK(pc.res_deszcz > 1e-2);
  }
  ClassificationReport scaled = run_classification(
      scale_metric(e->metric, 4.0), "generic4x4", rc);
  CHECK(scaled.aggregate.empty());
}

TEST_CASE("catalog contents") {
  CHECK(catalog().size() >= 12);
  for (const char* name : {"e3", "s3", "h3", "s2xe1", "h2xe1", "nil", "sol",
                           "sl2r", "e4", "s4", "h4", "s2xh2", "warped",
                           "generic4"})
    CHECK(find_entry(name) != nullptr);
  CHECK(find_entry("nope") == nullptr);
  for (const auto& e : catalog()) CHECK_FALSE(e.notes.empty());
}

TEST_CASE("every entry reproduces its expected labels at 50 seeded points") {
  RunConfig rc;
  rc.samples = 50;
  for (const auto& e : catalog()) {
    ClassificationReport rep = run_classification(e.metric, e.name, rc);

    std::set<std::string> got;
    for (Label l : rep.aggregate) got.insert(std::string(label_name(l)));
    std::set<std::string> want(e.expected_labels.begin(),
                               e.expected_labels.end());
    CAPTURE(e.name);
    CHECK(got == want);

    auto scalar = [&](const char* key) {
      auto it = e.expected_scalars.find(key);
      return it == e.expected_scalars.end()
                 ? std::optional<double>()
                 : std::optional<double>(it->second);
    };
    if (auto c = scalar("c")) {
      for (const auto& pc : rep.points)
        CHECK(pc.cc_curvature == doctest::Approx(*c).epsilon(1e-8));
    }
    if (auto ct = scalar("constant_type")) {
      REQUIRE(rep.constant_type);
      CHECK(std::abs(*rep.constant_type - *ct) <= 1e-7 * (1 + std::abs(*ct)));
    }
    if (auto q = scalar("q")) {
      for (const auto& pc : rep.points) {
        REQUIRE(pc.qcc);
        CHECK(pc.qcc->q == static_cast<int>(*q));
      }
    }
    for (const auto& pc : rep.points) {
      if (auto kbar = scalar("Kbar"))
        CHECK(std::abs(pc.qcc->k_bar - *kbar) <= 1e-7 * (1 + std::abs(*kbar)));
      if (auto kperp = scalar("Kperp"))
        CHECK(std::abs(pc.qcc->k_perp - *kperp) <=
              1e-7 * (1 + std::abs(*kperp)));
      if (auto k = scalar("K"))
        CHECK(std::abs(pc.qcc->k - *k) <= 1e-7 * (1 + std::abs(*k)));
      if (auto l = scalar("L")) {
        REQUIRE(pc.l);
        CHECK(std::abs(*pc.l - *l) <= 1e-7 * (1 + std::abs(*l)));
      }
    }
  }
}

TEST_CASE("export/classify round trip reproduces the report") {
  const CatalogEntry* sol = find_entry("sol");
  MetricField back = parse_metric_source(to_metric_source(sol->metric));
  RunConfig rc;
  rc.samples = 10;
  ClassificationReport a = run_classification(sol->metric, "sol", rc);
  ClassificationReport b = run_classification(back, "sol", rc);
  CHECK(render_json(a) == render_json(b));
}
