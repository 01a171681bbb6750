#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcurv/expr.hpp"
#include "qcurv/jet.hpp"
#include "qcurv/tensor.hpp"

namespace qcurv {

struct CoordInterval {
  double lo = -1.0;
  double hi = 1.0;
};

/// A Riemannian metric given in coordinates: dimension, coordinate names,
/// lower-triangular component expressions g_ij and a sampling box.
/// Immutable after construction; evaluation is pure.
class MetricField {
public:
  MetricField(std::vector<std::string> coords,
              std::vector<ExprPtr> lower_triangular,
              std::vector<CoordInterval> domain);

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<std::string>& coords() const { return coords_; }
  const CoordInterval& domain(int i) const { return domain_.at(i); }
  const std::vector<CoordInterval>& domains() const { return domain_; }

  /// Component expression for any (i, j), 0-based; symmetry is implicit.
  const ExprPtr& component(int i, int j) const;

  /// Symmetric matrix of component values (no definiteness check).
  Eigen::MatrixXd value(std::span<const double> point) const;

  /// g, g⁻¹ at a point; throws NumericalError if not positive definite.
  MetricAtPoint at(std::span<const double> point) const;

  /// Jets of the lower-triangular components, in (i ≥ j) row order.
  std::vector<Jet2> component_jets(std::span<const double> point) const;

  static std::size_t tri_index(int i, int j) {  // requires i >= j
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  }

private:
  std::vector<std::string> coords_;
  std::vector<ExprPtr> comps_;  // lower-triangular, tri_index order
  std::vector<CoordInterval> domain_;
};

/// Parses the line-oriented metric file format:
///   dim = <n>
///   coords = c1, ..., cn
///   domain ci = [lo, hi]          (optional, default [-1, 1])
///   g[i][j] = <expr>              (1 <= j <= i <= n; omitted entries are 0)
/// '#' starts a comment; ';' separates statements like a newline.
MetricField parse_metric_source(std::string_view text);

/// Serializes so that parse_metric_source round-trips structurally.
std::string to_metric_source(const MetricField& m);

/// Metric with every component multiplied by `factor` (g → factor·g).
MetricField scale_metric(const MetricField& m, double factor);

/// Pullback along the affine chart change x = offset + A·y. The returned
/// metric has coordinates `new_coords` with sampling box `new_domains`;
/// components are g'_{ab}(y) = Σ A_{ia} A_{jb} g_{ij}(offset + A y).
MetricField pullback_linear(const MetricField& m, const Eigen::MatrixXd& A,
                            const Eigen::VectorXd& offset,
                            std::vector<std::string> new_coords,
                            std::vector<CoordInterval> new_domains);

}  // namespace qcurv
