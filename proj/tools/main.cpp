// qcurv: curvature evaluation and pointwise symmetry classification for
// coordinate Riemannian metrics.
//
// Exit codes: 0 success (and PASS / NOT-APPLICABLE for `verify`),
//             1 a verify check FAILed,
//             2 metric file or input errors,
//             3 numerical failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "qcurv/catalog.hpp"
#include "qcurv/report.hpp"
#include "qcurv/theorems.hpp"

namespace {

struct CommonOptions {
  std::string catalog_name;
  std::string file_path;
  int samples = 50;
  std::uint64_t seed = 42;
  int planes = 200;
  double tol_cluster = 1e-6;
  double tol_label = -1.0;  // default depends on the metric source
  double tol_distinct = 1e-6;
  double tol_dep = 1e-7;
  double tol_const = 1e-7;
  bool json = false;
  std::vector<std::string> points;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_points) {
  cmd->add_option("--catalog", opt.catalog_name, "built-in metric name");
  cmd->add_option("--file", opt.file_path, "metric file path");
  cmd->add_option("--samples", opt.samples, "sample point count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opt.seed, "sampling seed");
  cmd->add_option("--planes", opt.planes, "plane budget for QCC validation")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-cluster", opt.tol_cluster,
                  "Ricci eigenvalue clustering tolerance");
  cmd->add_option("--tol-label", opt.tol_label,
                  "label residual tolerance (default 1e-8 for catalog "
                  "metrics, 1e-5 for files)");
  cmd->add_option("--tol-distinct", opt.tol_distinct,
                  "distinctness tolerance for QCC curvatures");
  cmd->add_option("--tol-dep", opt.tol_dep,
                  "curvature-dependence tolerance for plane pairs");
  cmd->add_option("--tol-const", opt.tol_const,
                  "constant-type spread tolerance");
  cmd->add_flag("--json", opt.json, "machine-readable output");
  if (with_points)
    cmd->add_option("--point", opt.points,
                    "evaluate at this comma-separated point instead of "
                    "sampling (repeatable)");
}

qcurv::MetricField load_metric(const CommonOptions& opt, std::string& name) {
  const bool has_catalog = !opt.catalog_name.empty();
  const bool has_file = !opt.file_path.empty();
  if (has_catalog == has_file)
    throw CLI::ValidationError(
        "metric", "exactly one of --catalog or --file is required");
  if (has_catalog) {
    const qcurv::CatalogEntry* e = qcurv::find_entry(opt.catalog_name);
    if (!e)
      throw CLI::ValidationError("--catalog", "unknown catalog metric '" +
                                                  opt.catalog_name + "'");
    name = e->name;
    return e->metric;
  }
  std::ifstream in(opt.file_path);
  if (!in)
    throw qcurv::ParseError("cannot open '" + opt.file_path + "'", 0, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  name = opt.file_path;
  return qcurv::parse_metric_source(buf.str());
}

qcurv::RunConfig run_config(const CommonOptions& opt, int dim) {
  qcurv::RunConfig rc;
  rc.samples = opt.samples;
  rc.classify.seed = opt.seed;
  rc.classify.plane_budget = opt.planes;
  rc.classify.tol_cluster = opt.tol_cluster;
  rc.classify.tol_label =
      opt.tol_label > 0 ? opt.tol_label
                        : (opt.file_path.empty() ? 1e-8 : 1e-5);
  rc.classify.tol_distinct = opt.tol_distinct;
  rc.classify.tol_dependent = opt.tol_dep;
  rc.classify.tol_constant_type = opt.tol_const;
  for (const auto& text : opt.points) {
    Eigen::VectorXd p(dim);
    std::stringstream ss(text);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
      if (i >= dim)
        throw CLI::ValidationError("--point", "too many coordinates");
      p[i++] = std::stod(item);
    }
    if (i != dim)
      throw CLI::ValidationError("--point", "expected " +
                                                std::to_string(dim) +
                                                " coordinates");
    rc.point_override.push_back(std::move(p));
  }
  return rc;
}

int cmd_classify(const CommonOptions& opt) {
  std::string name;
  qcurv::MetricField metric = load_metric(opt, name);
  qcurv::RunConfig rc = run_config(opt, metric.dim());
  qcurv::ClassificationReport rep =
      qcurv::run_classification(metric, name, rc);
  if (opt.json)
    std::cout << qcurv::render_json(rep) << "\n";
  else
    std::cout << qcurv::render_text(rep);
  return 0;
}

int cmd_verify(const std::string& check_id, const CommonOptions& opt) {
  const qcurv::TheoremCheck* check = qcurv::find_check(check_id);
  if (!check) {
    std::cerr << "unknown check id '" << check_id << "'; known ids:";
    for (const auto& c : qcurv::theorem_checks()) std::cerr << ' ' << c.id;
    std::cerr << "\n";
    return 2;
  }

  // Default sweep: the whole catalog; --catalog restricts to one entry and
  // --file adds a user metric.
  std::vector<std::pair<std::string, qcurv::MetricField>> metrics;
  if (!opt.catalog_name.empty()) {
    const qcurv::CatalogEntry* e = qcurv::find_entry(opt.catalog_name);
    if (!e) {
      std::cerr << "unknown catalog metric '" << opt.catalog_name << "'\n";
      return 2;
    }
    metrics.emplace_back(e->name, e->metric);
  } else {
    for (const auto& e : qcurv::catalog())
      metrics.emplace_back(e.name, e.metric);
  }
  if (!opt.file_path.empty()) {
    std::ifstream in(opt.file_path);
    if (!in) {
      std::cerr << "cannot open '" << opt.file_path << "'\n";
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    metrics.emplace_back(opt.file_path,
                         qcurv::parse_metric_source(buf.str()));
  }

  std::vector<qcurv::ClassificationReport> reports;
  reports.reserve(metrics.size());
  std::vector<qcurv::MetricInput> inputs;
  for (auto& [mname, metric] : metrics) {
    qcurv::RunConfig rc = run_config(opt, metric.dim());
    reports.push_back(qcurv::run_classification(metric, mname, rc));
  }
  for (std::size_t i = 0; i < metrics.size(); ++i)
    inputs.push_back(qcurv::MetricInput{metrics[i].first, &metrics[i].second,
                                        &reports[i]});

  qcurv::CheckResult result = qcurv::run_check(*check, inputs);
  if (opt.json) {
    nlohmann::json j = {
        {"id", result.id},
        {"status", std::string(qcurv::check_status_name(result.status))},
        {"worst_residual", result.worst_residual},
        {"instances", result.instances},
        {"witness", result.witness},
        {"statement", check->statement}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << result.id << ": "
              << qcurv::check_status_name(result.status)
              << "  (worst residual " << qcurv::format_double(result.worst_residual)
              << ", " << result.instances << " instances)\n";
    std::cout << "  claim: " << check->statement << "\n";
    if (!result.witness.empty())
      std::cout << "  witness: " << result.witness << "\n";
  }
  return result.status == qcurv::CheckStatus::Fail ? 1 : 0;
}

int cmd_catalog_list(bool json) {
  if (json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : qcurv::catalog()) {
      nlohmann::json labels = nlohmann::json::array();
      for (const auto& l : e.expected_labels) labels.push_back(l);
      nlohmann::json notes = nlohmann::json::array();
      for (const auto& n : e.notes) notes.push_back(n);
      arr.push_back({{"name", e.name},
                     {"dim", e.metric.dim()},
                     {"description", e.description},
                     {"expected_labels", labels},
                     {"expected_scalars", e.expected_scalars},
                     {"notes", notes}});
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& e : qcurv::catalog()) {
      std::cout << e.name << " (dim " << e.metric.dim()
                << "): " << e.description << "\n  expected:";
      if (e.expected_labels.empty()) std::cout << " generic";
      for (const auto& l : e.expected_labels) std::cout << ' ' << l;
      std::cout << "\n";
      for (const auto& [k, v] : e.expected_scalars)
        std::cout << "    " << k << " = " << qcurv::format_double(v) << "\n";
      for (const auto& n : e.notes) std::cout << "  note: " << n << "\n";
    }
  }
  return 0;
}

int cmd_catalog_export(const std::string& name) {
  const qcurv::CatalogEntry* e = qcurv::find_entry(name);
  if (!e) {
    std::cerr << "unknown catalog metric '" << name << "'\n";
    return 2;
  }
  std::cout << qcurv::to_metric_source(e->metric);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvature evaluation and symmetry classification for "
               "coordinate Riemannian metrics"};
  app.require_subcommand(1);

  CommonOptions classify_opt;
  CLI::App* classify = app.add_subcommand(
      "classify", "classify a metric over sampled chart points");
  add_common(classify, classify_opt, true);

  CommonOptions verify_opt;
  std::string check_id;
  CLI::App* verify = app.add_subcommand(
      "verify", "run one named residual check over the catalog");
  verify->add_option("id", check_id, "check id (see README)")->required();
  add_common(verify, verify_opt, false);

  CLI::App* catalog = app.add_subcommand("catalog", "built-in metrics");
  bool list_json = false;
  CLI::App* list = catalog->add_subcommand("list", "list entries");
  list->add_flag("--json", list_json);
  std::string export_name;
  CLI::App* exp = catalog->add_subcommand(
      "export", "print an entry in the metric file format");
  exp->add_option("name", export_name)->required();
  catalog->require_subcommand(1);

  try {
    app.parse(argc, argv);
    if (classify->parsed()) return cmd_classify(classify_opt);
    if (verify->parsed()) return cmd_verify(check_id, verify_opt);
    if (list->parsed()) return cmd_catalog_list(list_json);
    if (exp->parsed()) return cmd_catalog_export(export_name);
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const qcurv::ParseError& e) {
    std::cerr << "metric error: " << e.what() << "\n";
    return 2;
  } catch (const qcurv::EvalError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return 3;
  } catch (const qcurv::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
