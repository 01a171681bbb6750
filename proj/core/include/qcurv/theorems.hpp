#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qcurv/classify.hpp"
#include "qcurv/metric.hpp"

namespace qcurv {

enum class CheckStatus { Pass, Fail, NotApplicable };

std::string_view check_status_name(CheckStatus s);

struct CheckResult {
  std::string id;
  CheckStatus status = CheckStatus::NotApplicable;
  double worst_residual = 0.0;
  std::string witness;  // metric/point/plane description for failures
  int instances = 0;    // non-vacuous premise instances exercised
};

/// One metric together with its classification, the unit the checks
/// consume. The report's points define where pack-level checks evaluate.
struct MetricInput {
  std::string name;
  const MetricField* metric = nullptr;
  const ClassificationReport* report = nullptr;
};

/// Executable statement: stable id, plain-language claim, and the residual
/// test over classified metrics. Equivalences test both directions and
/// report NOT-APPLICABLE when every premise is vacuous on the input set.
struct TheoremCheck {
  std::string id;
  std::string statement;
  std::function<CheckResult(std::span<const MetricInput>)> run;
};

const std::vector<TheoremCheck>& theorem_checks();
const TheoremCheck* find_check(std::string_view id);

CheckResult run_check(const TheoremCheck& check,
                      std::span<const MetricInput> inputs);

}  // namespace qcurv
