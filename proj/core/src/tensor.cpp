#include "qcurv/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace qcurv {

MetricAtPoint metric_at_point(const Eigen::MatrixXd& g,
                              Eigen::VectorXd point) {
  const int n = static_cast<int>(g.rows());
  if (g.cols() != n) throw NumericalError("metric matrix must be square");
  if (!g.isApprox(g.transpose(), 1e-12))
    throw NumericalError("metric matrix must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) {
    std::string where;
    for (int i = 0; i < point.size(); ++i)
      where += (i ? "," : "") + std::to_string(point[i]);
    throw NumericalError("metric is not positive definite at (" + where + ")");
  }
  MetricAtPoint m;
  m.g = g;
  m.g_inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  m.point = std::move(point);
  double err = (m.g * m.g_inv - Eigen::MatrixXd::Identity(n, n))
                   .cwiseAbs()
                   .maxCoeff();
  if (err > 1e-10)
    throw NumericalError("metric too ill-conditioned to invert reliably");
  return m;
}

DenseTensor::DenseTensor(int n, std::vector<Slot> slots)
    : n_(n), slots_(std::move(slots)) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < slots_.size(); ++i) count *= n_;
  data_.assign(count, 0.0);
}

DenseTensor DenseTensor::covariant(int n, int rank) {
  return DenseTensor(n, std::vector<Slot>(rank, Slot::Lower));
}

std::size_t DenseTensor::checked(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank())
    throw std::out_of_range("tensor index rank mismatch");
  std::size_t f = 0;
  for (int i : idx) {
    if (i < 0 || i >= n_) throw std::out_of_range("tensor index out of range");
    f = f * n_ + static_cast<std::size_t>(i);
  }
  return f;
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& o) {
  if (o.n_ != n_ || o.slots_ != slots_)
    throw std::invalid_argument("tensor shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator-=(const DenseTensor& o) {
  if (o.n_ != n_ || o.slots_ != slots_)
    throw std::invalid_argument("tensor shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

DenseTensor operator-(DenseTensor a, const DenseTensor& b) {
  a -= b;
  return a;
}

DenseTensor operator*(double s, DenseTensor a) {
  a *= s;
  return a;
}

namespace {

// Contracts `slot` with M (n×n), i.e. out[..., m, ...] = Σ_i M(m,i) t[..., i, ...].
DenseTensor contract_slot_with(const DenseTensor& t, int slot,
                               const Eigen::MatrixXd& M, Slot new_variance) {
  const int n = t.dim();
  const int k = t.rank();
  std::vector<Slot> slots = t.slots();
  slots[slot] = new_variance;
  DenseTensor out(n, std::move(slots));

  std::size_t stride = 1;
  for (int s = k - 1; s > slot; --s) stride *= n;
  const std::size_t block = stride * n;  // span of the contracted slot
  const std::size_t total = t.size();

  for (std::size_t base = 0; base < total; base += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      for (int m = 0; m < n; ++m) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
          acc += M(m, i) * t.raw(base + i * stride + inner);
        out.raw(base + m * stride + inner) = acc;
      }
    }
  }
  return out;
}

}  // namespace

DenseTensor raise_slot(const DenseTensor& t, int slot,
                       const MetricAtPoint& m) {
  if (t.slots().at(slot) != Slot::Lower)
    throw std::invalid_argument("raise_slot: slot already contravariant");
  return contract_slot_with(t, slot, m.g_inv, Slot::Upper);
}

DenseTensor lower_slot(const DenseTensor& t, int slot,
                       const MetricAtPoint& m) {
  if (t.slots().at(slot) != Slot::Upper)
    throw std::invalid_argument("lower_slot: slot already covariant");
  return contract_slot_with(t, slot, m.g, Slot::Lower);
}

double inner_product(const DenseTensor& a, const DenseTensor& b,
                     const MetricAtPoint& m) {
  if (a.rank() != b.rank())
    throw std::invalid_argument("inner_product: rank mismatch");
  if (a.slots() != b.slots())
    throw std::invalid_argument("inner_product: variance mismatch");
  if (a.dim() != b.dim() || a.dim() != m.dim())
    throw std::invalid_argument("inner_product: dimension mismatch");

  // Move every slot of b to the opposite variance, then dot flat arrays.
  DenseTensor dual = b;
  for (int s = 0; s < b.rank(); ++s)
    dual = b.slots()[s] == Slot::Lower ? raise_slot(dual, s, m)
                                       : lower_slot(dual, s, m);
  double acc = 0.0;
  auto da = a.data();
  auto db = dual.data();
  for (std::size_t i = 0; i < da.size(); ++i) acc += da[i] * db[i];
  return acc;
}

double frobenius_norm(const DenseTensor& a, const MetricAtPoint& m) {
  return std::sqrt(std::max(0.0, inner_product(a, a, m)));
}

DenseTensor transform_all_slots(const DenseTensor& t,
                                const Eigen::MatrixXd& basis) {
  for (Slot s : t.slots())
    if (s != Slot::Lower)
      throw std::invalid_argument(
          "transform_all_slots: expects an all-covariant tensor");
  // T'(e_a,...) = Σ T_{i...} B_{i a}...: contract each slot with Bᵀ.
  DenseTensor out = t;
  Eigen::MatrixXd bt = basis.transpose();
  for (int s = 0; s < t.rank(); ++s)
    out = contract_slot_with(out, s, bt, Slot::Lower);
  return out;
}

double contract_vectors(const DenseTensor& t,
                        std::span<const Eigen::VectorXd> vectors) {
  if (static_cast<int>(vectors.size()) != t.rank())
    throw std::invalid_argument("contract_vectors: rank mismatch");
  const int n = t.dim();
  const int k = t.rank();
  std::vector<int> idx(k, 0);
  double acc = 0.0;
  const std::size_t total = t.size();
  for (std::size_t f = 0; f < total; ++f) {
    double term = t.raw(f);
    if (term != 0.0) {
      std::size_t rem = f;
      for (int s = k - 1; s >= 0; --s) {
        idx[s] = static_cast<int>(rem % n);
        rem /= n;
      }
      for (int s = 0; s < k; ++s) term *= vectors[s][idx[s]];
      acc += term;
    }
  }
  return acc;
}

double max_abs(const DenseTensor& t) {
  double m = 0.0;
  for (double v : t.data()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace qcurv
