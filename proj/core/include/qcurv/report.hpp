#pragma once

#include <string>
#include <vector>

#include "qcurv/classify.hpp"
#include "qcurv/metric.hpp"

namespace qcurv {

/// One classification run: metric source, sampling and tolerances.
struct RunConfig {
  int samples = 50;
  ClassifyConfig classify;
  std::vector<Eigen::VectorXd> point_override;  // replaces sampling if set
};

/// Deterministic low-discrepancy sample of the chart box (Halton bases with
/// a seeded rotation). Identical seeds give identical points.
std::vector<Eigen::VectorXd> sample_points(const MetricField& m, int count,
                                           std::uint64_t seed);

/// Full pipeline: sample, build curvature packs, classify, aggregate.
ClassificationReport run_classification(const MetricField& m,
                                        const std::string& name,
                                        const RunConfig& config);

/// JSON rendering; schema documented in the README. Byte-identical for
/// identical reports.
std::string render_json(const ClassificationReport& rep, int indent = 2);

/// Human-readable rendering carrying the same labels and residuals.
std::string render_text(const ClassificationReport& rep);

}  // namespace qcurv
