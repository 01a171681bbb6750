#include "qcurv/report.hpp"

#include <json.hpp>
#include <sstream>

#include "qcurv/rng.hpp"

namespace qcurv {

namespace {

double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

}  // namespace

std::vector<Eigen::VectorXd> sample_points(const MetricField& m, int count,
                                           std::uint64_t seed) {
  const int n = m.dim();
  if (n > static_cast<int>(std::size(kPrimes)))
    throw NumericalError("sampling supports at most 8 coordinates");
  Rng rng(seed);
  std::vector<double> shift(n);
  for (int d = 0; d < n; ++d) shift[d] = rng.uniform();

  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd p(n);
    for (int d = 0; d < n; ++d) {
      double u = halton(static_cast<std::uint64_t>(i) + 1, kPrimes[d]) +
                 shift[d];
      u -= std::floor(u);
      const CoordInterval& dom = m.domain(d);
      // Keep a small margin so finite-difference cross-checks stay inside.
      double lo = dom.lo + 0.02 * (dom.hi - dom.lo);
      double hi = dom.hi - 0.02 * (dom.hi - dom.lo);
      p[d] = lo + u * (hi - lo);
    }
    out.push_back(std::move(p));
  }
  return out;
}

ClassificationReport run_classification(const MetricField& m,
                                        const std::string& name,
                                        const RunConfig& config) {
  std::vector<Eigen::VectorXd> pts =
      config.point_override.empty()
          ? sample_points(m, config.samples, config.classify.seed)
          : config.point_override;

  std::vector<PointClassification> classified;
  classified.reserve(pts.size());
  for (const auto& p : pts) {
    std::vector<double> coords(p.data(), p.data() + p.size());
    CurvaturePack pack = curvature_pack(m, coords);
    classified.push_back(classify_point(pack, config.classify));
  }
  return aggregate_report(name, m.dim(), config.classify,
                          std::move(classified));
}

namespace {

nlohmann::json labels_json(const std::set<Label>& labels) {
  nlohmann::json arr = nlohmann::json::array();
  for (Label l : labels) arr.push_back(std::string(label_name(l)));
  return arr;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

std::string render_json(const ClassificationReport& rep, int indent) {
  nlohmann::json root;
  root["metric"] = {{"name", rep.metric_name}, {"dim", rep.dim}};
  root["config"] = {
      {"samples", rep.sample_count},
      {"seed", rep.seed},
      {"planes", rep.config.plane_budget},
      {"tolerances",
       {{"cluster", rep.config.tol_cluster},
        {"label", rep.config.tol_label},
        {"distinct", rep.config.tol_distinct},
        {"dependent", rep.config.tol_dependent},
        {"qcc_planes", rep.config.tol_qcc_planes},
        {"constant_type", rep.config.tol_constant_type}}}};

  nlohmann::json points = nlohmann::json::array();
  for (const auto& pc : rep.points) {
    nlohmann::json p;
    p["coords"] = vector_json(pc.point);
    p["labels"] = labels_json(pc.labels);
    p["residuals"] = {{"flat", pc.res_flat},
                      {"cc", pc.res_cc},
                      {"einstein", pc.res_einstein},
                      {"weyl", pc.res_weyl},
                      {"semi_symmetric", pc.res_semi},
                      {"deszcz", pc.res_deszcz},
                      {"ricci_deszcz", pc.res_ricci_deszcz}};
    p["L"] = pc.l ? nlohmann::json(*pc.l) : nlohmann::json();
    {
      nlohmann::json values = nlohmann::json::array();
      nlohmann::json mults = nlohmann::json::array();
      for (const auto& c : pc.spectrum.clusters) {
        values.push_back(c.value);
        mults.push_back(c.multiplicity);
      }
      p["ricci"] = {{"values", values}, {"mults", mults}};
    }
    if (pc.qcc) {
      p["qcc"] = {{"q", pc.qcc->q},
                  {"K", pc.qcc->q > 1 ? nlohmann::json(pc.qcc->k)
                                      : nlohmann::json()},
                  {"Kperp", pc.qcc->k_perp},
                  {"Kbar", pc.qcc->k_bar}};
    } else {
      p["qcc"] = nlohmann::json();
    }
    points.push_back(std::move(p));
  }
  root["points"] = std::move(points);

  nlohmann::json agg;
  agg["labels"] = labels_json(rep.aggregate);
  agg["constant_type"] = rep.constant_type
                             ? nlohmann::json(*rep.constant_type)
                             : nlohmann::json();
  agg["L_range"] = rep.l_range
                       ? nlohmann::json({rep.l_range->first,
                                         rep.l_range->second})
                       : nlohmann::json();
  agg["non_constant_multiplicity"] = rep.non_constant_multiplicity;
  root["aggregate"] = std::move(agg);

  return root.dump(indent);
}

std::string render_text(const ClassificationReport& rep) {
  std::ostringstream os;
  os << "metric: " << rep.metric_name << " (dim " << rep.dim << ")\n";
  os << "sample: " << rep.sample_count << " points, seed " << rep.seed
     << "\n\n";
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const auto& pc = rep.points[i];
    os << "point " << i << " (";
    for (int d = 0; d < pc.point.size(); ++d)
      os << (d ? ", " : "") << format_double(pc.point[d]);
    os << ")\n  labels:";
    if (pc.labels.empty()) os << " generic";
    for (Label l : pc.labels) os << ' ' << label_name(l);
    os << "\n  residuals: flat=" << format_double(pc.res_flat)
       << " cc=" << format_double(pc.res_cc)
       << " einstein=" << format_double(pc.res_einstein)
       << " weyl=" << format_double(pc.res_weyl)
       << " semi_symmetric=" << format_double(pc.res_semi)
       << " deszcz=" << format_double(pc.res_deszcz)
       << " ricci_deszcz=" << format_double(pc.res_ricci_deszcz) << "\n";
    os << "  ricci:";
    for (const auto& c : pc.spectrum.clusters)
      os << ' ' << format_double(c.value) << "(x" << c.multiplicity << ")";
    os << "\n";
    if (pc.l) os << "  L = " << format_double(*pc.l) << "\n";
    if (pc.qcc) {
      os << "  qcc: q=" << pc.qcc->q;
      if (pc.qcc->q > 1) os << " K=" << format_double(pc.qcc->k);
      os << " Kperp=" << format_double(pc.qcc->k_perp)
         << " Kbar=" << format_double(pc.qcc->k_bar) << "\n";
    } else if (pc.qcc_rejection) {
      os << "  qcc: rejected (" << *pc.qcc_rejection << ")\n";
    }
    if (pc.wildly_anisotropic) os << "  wildly anisotropic\n";
  }
  os << "\naggregate:";
  if (rep.aggregate.empty()) os << " generic";
  for (Label l : rep.aggregate) os << ' ' << label_name(l);
  os << "\n";
  if (rep.constant_type)
    os << "constant type: " << format_double(*rep.constant_type) << "\n";
  else if (rep.l_range)
    os << "L range: [" << format_double(rep.l_range->first) << ", "
       << format_double(rep.l_range->second) << "]\n";
  if (rep.non_constant_multiplicity)
    os << "warning: non-constant Ricci multiplicities; global "
          "quasi-Einstein and QCC labels withheld\n";
  return os.str();
}

}  // namespace qcurv
