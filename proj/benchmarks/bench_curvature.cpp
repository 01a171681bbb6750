#include <benchmark/benchmark.h>

#include "qcurv/catalog.hpp"
#include "qcurv/report.hpp"

namespace {

void BM_MetricJets(benchmark::State& state) {
  const qcurv::CatalogEntry* e = qcurv::find_entry("sl2r");
  std::vector<double> p = {0.2, 1.1, -0.4};
  for (auto _ : state) {
    auto jets = e->metric.component_jets(p);
    benchmark::DoNotOptimize(jets);
  }
}
BENCHMARK(BM_MetricJets);

void BM_CurvaturePack3D(benchmark::State& state) {
  const qcurv::CatalogEntry* e = qcurv::find_entry("sol");
  std::vector<double> p = {0.1, 0.2, 0.3};
  for (auto _ : state) {
    qcurv::CurvaturePack pack = qcurv::curvature_pack(e->metric, p);
    benchmark::DoNotOptimize(pack.norm_rr);
  }
}
BENCHMARK(BM_CurvaturePack3D);

void BM_CurvaturePack4D(benchmark::State& state) {
  const qcurv::CatalogEntry* e = qcurv::find_entry("s2xh2");
  std::vector<double> p = {1.0, 1.2, 0.9, 1.1};
  for (auto _ : state) {
    qcurv::CurvaturePack pack = qcurv::curvature_pack(e->metric, p);
    benchmark::DoNotOptimize(pack.norm_rr);
  }
}
BENCHMARK(BM_CurvaturePack4D);

void BM_ClassifyPoint(benchmark::State& state) {
  const qcurv::CatalogEntry* e = qcurv::find_entry("sol");
  std::vector<double> p = {0.1, 0.2, 0.3};
  qcurv::CurvaturePack pack = qcurv::curvature_pack(e->metric, p);
  qcurv::ClassifyConfig cfg;
  cfg.plane_budget = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto pc = qcurv::classify_point(pack, cfg);
    benchmark::DoNotOptimize(pc.labels);
  }
}
BENCHMARK(BM_ClassifyPoint)->Arg(50)->Arg(200);

void BM_FullReport(benchmark::State& state) {
  const qcurv::CatalogEntry* e = qcurv::find_entry("nil");
  qcurv::RunConfig rc;
  rc.samples = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rep = qcurv::run_classification(e->metric, "nil", rc);
    benchmark::DoNotOptimize(rep.aggregate);
  }
}
BENCHMARK(BM_FullReport)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
