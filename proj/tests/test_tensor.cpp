#include <doctest.h>

#include "oracle.hpp"
#include "qcurv/curvature.hpp"
#include "qcurv/rng.hpp"
#include "qcurv/tensor.hpp"

using namespace qcurv;

namespace {

MetricAtPoint random_spd_metric(int n, Rng& rng) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  Eigen::MatrixXd g = a.transpose() * a + Eigen::MatrixXd::Identity(n, n);
  return metric_at_point(g, Eigen::VectorXd::Zero(n));
}

DenseTensor random_tensor(int n, int rank, Rng& rng) {
  DenseTensor t = DenseTensor::covariant(n, rank);
  for (double& v : t.data()) v = rng.uniform(-1.0, 1.0);
  return t;
}

}  // namespace

TEST_CASE("inner product of G with itself is 2n(n-1) in any metric") {
  Rng rng(3);
  for (int n : {3, 4}) {
    MetricAtPoint flat =
        metric_at_point(Eigen::MatrixXd::Identity(n, n),
                        Eigen::VectorXd::Zero(n));
    DenseTensor g4 = metric_wedge_tensor(flat);
    double expect = 2.0 * n * (n - 1);
    CHECK(inner_product(g4, g4, flat) == doctest::Approx(expect));

    MetricAtPoint curved = random_spd_metric(n, rng);
    DenseTensor g4c = metric_wedge_tensor(curved);
    CHECK(inner_product(g4c, g4c, curved) ==
          doctest::Approx(expect).epsilon(1e-10));
    // Brute-force cross-check of the raise-then-dot path.
    CHECK(inner_product(g4c, g4c, curved) ==
          doctest::Approx(oracle::bruteforce_inner(g4c, g4c, curved))
              .epsilon(1e-10));
  }
}

TEST_CASE("inner product is bilinear, symmetric, positive definite") {
  Rng rng(5);
  MetricAtPoint m = random_spd_metric(3, rng);
  for (int trial = 0; trial < 20; ++trial) {
    DenseTensor a = random_tensor(3, 3, rng);
    DenseTensor b = random_tensor(3, 3, rng);
    DenseTensor c = random_tensor(3, 3, rng);
    double alpha = rng.uniform(-2.0, 2.0);

    double ab = inner_product(a, b, m);
    CHECK(ab == doctest::Approx(inner_product(b, a, m)).epsilon(1e-11));

    DenseTensor lin = a;
    lin *= alpha;
    lin += c;
    CHECK(inner_product(lin, b, m) ==
          doctest::Approx(alpha * ab + inner_product(c, b, m))
              .epsilon(1e-10));

    CHECK(inner_product(a, a, m) > 0.0);
    CHECK(inner_product(a, b, m) ==
          doctest::Approx(oracle::bruteforce_inner(a, b, m)).epsilon(1e-10));
  }
  DenseTensor zero = DenseTensor::covariant(3, 3);
  DenseTensor a = random_tensor(3, 3, rng);
  CHECK(inner_product(a, zero, m) == 0.0);
  CHECK(frobenius_norm(zero, m) == 0.0);
}

TEST_CASE("rank and variance mismatches are rejected") {
  Rng rng(6);
  MetricAtPoint m = random_spd_metric(3, rng);
  DenseTensor a = random_tensor(3, 2, rng);
  DenseTensor b = random_tensor(3, 3, rng);
  CHECK_THROWS_AS((void)inner_product(a, b, m), std::invalid_argument);
  DenseTensor up(3, {Slot::Upper, Slot::Lower});
  CHECK_THROWS_AS((void)inner_product(a, up, m), std::invalid_argument);
}

TEST_CASE("raise then lower is the identity") {
  Rng rng(8);
  MetricAtPoint m = random_spd_metric(4, rng);
  DenseTensor t = random_tensor(4, 3, rng);
  for (int slot = 0; slot < 3; ++slot) {
    DenseTensor round = lower_slot(raise_slot(t, slot, m), slot, m);
    double scale = max_abs(t);
    for (std::size_t f = 0; f < t.size(); ++f)
      CHECK(std::abs(round.raw(f) - t.raw(f)) <= 1e-12 * (1.0 + scale));
  }
}

TEST_CASE("norms are invariant under orthonormal frame changes") {
  Rng rng(9);
  for (int n : {3, 4}) {
    MetricAtPoint m = random_spd_metric(n, rng);
    DenseTensor t = random_tensor(n, 4, rng);
    double reference = frobenius_norm(t, m);

    // Columns of L⁻ᵀ are g-orthonormal; any rotation of them stays so.
    Eigen::MatrixXd l = m.g.llt().matrixL();
    Eigen::MatrixXd frame0 = l.transpose()
                                 .triangularView<Eigen::Upper>()
                                 .solve(Eigen::MatrixXd::Identity(n, n));
    MetricAtPoint flat = metric_at_point(Eigen::MatrixXd::Identity(n, n),
                                         Eigen::VectorXd::Zero(n));
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::MatrixXd frame = frame0 * oracle::random_rotation(n, rng);
      DenseTensor moved = transform_all_slots(t, frame);
      CHECK(frobenius_norm(moved, flat) ==
            doctest::Approx(reference).epsilon(1e-9));
    }
  }
}

TEST_CASE("indexing is bounds-checked") {
  DenseTensor t = DenseTensor::covariant(3, 2);
  CHECK_THROWS_AS((void)t.at({3, 0}), std::out_of_range);
  CHECK_THROWS_AS((void)t.at({0, -1}), std::out_of_range);
  CHECK_THROWS_AS((void)t.at({0, 0, 0}), std::out_of_range);
  CHECK(t.at({2, 2}) == 0.0);
}

TEST_CASE("metric_at_point rejects non-SPD input") {
  Eigen::MatrixXd bad = -Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS((void)metric_at_point(bad, Eigen::VectorXd::Zero(3)),
                  NumericalError);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(3, 3);
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS((void)metric_at_point(asym, Eigen::VectorXd::Zero(3)),
                  NumericalError);
  // g·g⁻¹ = I within 1e-12 on clean input.
  Rng rng(10);
  MetricAtPoint m = random_spd_metric(4, rng);
  CHECK((m.g * m.g_inv - Eigen::MatrixXd::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
}
