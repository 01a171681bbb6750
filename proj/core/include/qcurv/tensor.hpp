#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qcurv/errors.hpp"

namespace qcurv {

enum class Slot : unsigned char { Lower, Upper };

/// Metric data at one chart point: g, its inverse and the point itself.
/// Construction checks positive definiteness (Cholesky) and g·g⁻¹ ≈ I.
struct MetricAtPoint {
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inv;
  Eigen::VectorXd point;

  int dim() const { return static_cast<int>(g.rows()); }

  /// Inner product of tangent vectors (contravariant components).
  double ip(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    return a.dot(g * b);
  }

  double norm(const Eigen::VectorXd& a) const { return std::sqrt(ip(a, a)); }
};

MetricAtPoint metric_at_point(const Eigen::MatrixXd& g, Eigen::VectorXd point);

/// Dense tensor with all dimensions equal to n, stored row-major, with a
/// covariant/contravariant flag per slot. at() is bounds-checked; the flat
/// accessors are for hot loops.
class DenseTensor {
public:
  DenseTensor() = default;
  DenseTensor(int n, std::vector<Slot> slots);
  static DenseTensor covariant(int n, int rank);

  int dim() const { return n_; }
  int rank() const { return static_cast<int>(slots_.size()); }
  const std::vector<Slot>& slots() const { return slots_; }
  std::size_t size() const { return data_.size(); }

  double at(std::span<const int> idx) const { return data_[checked(idx)]; }
  double& at(std::span<const int> idx) { return data_[checked(idx)]; }
  double at(std::initializer_list<int> idx) const {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }
  double& at(std::initializer_list<int> idx) {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }
  double raw(std::size_t flat) const { return data_[flat]; }
  double& raw(std::size_t flat) { return data_[flat]; }

  /// Flat offset of a multi-index (no bounds check).
  std::size_t flat(std::span<const int> idx) const {
    std::size_t f = 0;
    for (int i : idx) f = f * n_ + static_cast<std::size_t>(i);
    return f;
  }

  DenseTensor& operator+=(const DenseTensor& o);
  DenseTensor& operator-=(const DenseTensor& o);
  DenseTensor& operator*=(double s);

private:
  std::size_t checked(std::span<const int> idx) const;

  int n_ = 0;
  std::vector<Slot> slots_;
  std::vector<double> data_;
};

DenseTensor operator-(DenseTensor a, const DenseTensor& b);
DenseTensor operator*(double s, DenseTensor a);

/// Full contraction of A against B, every slot paired through g or g⁻¹ as
/// its variance dictates. Symmetric and bilinear; throws on rank or
/// variance mismatch.
double inner_product(const DenseTensor& a, const DenseTensor& b,
                     const MetricAtPoint& m);

/// sqrt(inner_product(a, a)); the canonical "is this tensor zero" scale.
double frobenius_norm(const DenseTensor& a, const MetricAtPoint& m);

DenseTensor raise_slot(const DenseTensor& t, int slot, const MetricAtPoint& m);
DenseTensor lower_slot(const DenseTensor& t, int slot, const MetricAtPoint& m);

/// Components of an all-covariant tensor in the frame whose vectors are the
/// columns of `basis` (expressed in the current coordinates).
DenseTensor transform_all_slots(const DenseTensor& t,
                                const Eigen::MatrixXd& basis);

/// T(v1, ..., vk) for an all-covariant tensor and contravariant vectors.
double contract_vectors(const DenseTensor& t,
                        std::span<const Eigen::VectorXd> vectors);

double max_abs(const DenseTensor& t);

/// |value| / (1 + scale): the relative residual convention used throughout.
inline double scaled_residual(double value, double scale) {
  return std::abs(value) / (1.0 + std::abs(scale));
}

}  // namespace qcurv
