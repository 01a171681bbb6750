#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>

namespace qcurv {

/// Deterministic RNG for plane sampling and tests. Doubles are produced
/// from the raw 64-bit stream so the sequence is identical across
/// platforms and standard-library versions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return std::ldexp(static_cast<double>(eng_() >> 11), -53);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  Eigen::VectorXd vector(int n, double lo = -1.0, double hi = 1.0) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

private:
  std::mt19937_64 eng_;
};

}  // namespace qcurv
