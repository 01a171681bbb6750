#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcurv/metric.hpp"

namespace qcurv {

/// Built-in analytic metric with its known ground truth. `expected_labels`
/// are the aggregate classification labels; `expected_scalars` carry the
/// model constants (c, q, K, Kperp, Kbar, L, constant_type) where defined.
/// `notes` record how each expected value was obtained.
struct CatalogEntry {
  std::string name;
  std::string description;
  MetricField metric;
  std::vector<std::string> expected_labels;
  std::map<std::string, double> expected_scalars;
  std::vector<std::string> notes;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_entry(std::string_view name);

/// Space form of constant curvature c: identity chart (c = 0), polar
/// sphere chart scaled to curvature c (c > 0), hyperbolic polar chart
/// (c < 0). Chart domains avoid the coordinate singularities.
MetricField make_space_form(int n, double c, std::string prefix = "");

/// Block-diagonal product; coordinate names must be disjoint.
MetricField make_product(const MetricField& a, const MetricField& b);

/// Standard left-invariant metrics of the non-product Thurston geometries:
///   nil:  dx² + dy² + (dz − x dy)²
///   sol:  e^{2z} dx² + e^{−2z} dy² + dz²
///   sl2r: (dx² + dy²)/y² + (dz + dx/y)²  (unit tangent bundle chart)
MetricField make_thurston(std::string_view name);

/// Warped product dt² + f(t)²·(space form of curvature k, dimension n−1).
/// `f` is an expression in the variable t (index 0). Wherever they differ,
/// the plane curvatures are K̄ = −f″/f (planes containing ∂t) and
/// K⊥ = (k − f′²)/f² (planes tangent to the fiber).
MetricField make_warped(const ExprPtr& f, double fiber_curvature, int n,
                        CoordInterval t_domain = {0.1, 1.5});

/// Fixed 4D negative control: nonzero Weyl tensor, three or more principal
/// Ricci curvatures, not Deszcz at generic points.
MetricField make_generic4();

}  // namespace qcurv
