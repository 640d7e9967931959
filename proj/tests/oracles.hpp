// Copyright 2026 The Hyperbit Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference computations for the test suites. Nothing here calls into the
// library's numerical code; each oracle recomputes its quantity from scratch.

#ifndef HYPERBIT_TESTS_ORACLES_HPP
#define HYPERBIT_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>

#include <Eigen/Dense>

namespace oracle {

using CMat = Eigen::MatrixXcd;

/// Dense Kronecker product by explicit index arithmetic.
inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Tr((A ⊗ B) rho) by forming the full product.
inline std::complex<double> born(const CMat& a, const CMat& b, const CMat& rho) {
  return (kron(a, b) * rho).trace();
}

/// For |Φ+>: <A ⊗ B> = Tr(A B^T) / 2.
inline double phi_plus_correlation(const CMat& a, const CMat& b) {
  return (a * b.transpose()).trace().real() / 2.0;
}

/// Feasible z range for a point of the disk: |z| <= 1 and |y + x z| <= 1.
inline std::pair<double, double> z_range(double x, double y) {
  double lo = -1.0, hi = 1.0;
  if (std::abs(x) > 0.0) {
    const double a = (-1.0 - y) / x, b = (1.0 - y) / x;
    lo = std::max(lo, std::min(a, b));
    hi = std::min(hi, std::max(a, b));
  }
  return {lo, hi};
}

/// Brute force over the 10^-3 simplex lattice: is there k with k1-k2 = y and
/// k3-k4 = x, each to within one lattice step plus `slack`? With k3 + k4
/// fixed, k3 - k4 moves in steps of 2h, so h is the covering radius.
inline bool simplex_grid_feasible(double x, double y, int n = 1000, double slack = 0.0) {
  const double h = 1.0 / n;
  const double tol = h + slack;
  for (int k1 = 0; k1 <= n; ++k1) {
    const int k2_centre = static_cast<int>(std::lround(k1 - y * n));
    for (int k2 = std::max(0, k2_centre - 1); k2 <= std::min(n - k1, k2_centre + 1); ++k2) {
      if (std::abs((k1 - k2) * h - y) > tol) continue;
      const int rest = n - k1 - k2;
      for (int k3 = 0; k3 <= rest; ++k3) {
        const int k4 = rest - k3;
        if (std::abs((k3 - k4) * h - x) <= tol) return true;
      }
    }
  }
  return false;
}

/// min over a lattice of (i, s) with |i| + |s| <= 1 of max over the feasible
/// z range of |y + x z - i - s z|. Affine in z, so the endpoints suffice.
inline double grid_gap(double x, double y, int n = 2000) {
  const auto [lo, hi] = z_range(x, y);
  double best = std::numeric_limits<double>::infinity();
  for (int a = -n; a <= n; ++a) {
    const double i = static_cast<double>(a) / n;
    const int m = n - std::abs(a);
    for (int b = -m; b <= m; ++b) {
      const double s = static_cast<double>(b) / n;
      const double worst = std::max(std::abs(y + x * lo - i - s * lo), std::abs(y + x * hi - i - s * hi));
      best = std::min(best, worst);
    }
  }
  return best;
}

/// Volume of {x^2 + y^2 <= 1, |z| <= 1, |y + x z| <= 1} by midpoint quadrature in (x, y).
inline double volume_C(int n = 2000) {
  const double h = 2.0 / n;
  double vol = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -1.0 + (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      const double y = -1.0 + (j + 0.5) * h;
      if (x * x + y * y > 1.0) continue;
      const auto [lo, hi] = z_range(x, y);
      if (hi > lo) vol += (hi - lo) * h * h;
    }
  }
  return vol;
}

/// |x| + |y| <= 1 has area 2; times the z extent of 2.
inline constexpr double kVolumeD = 4.0;

/// Standard error of a mean of N draws of ±1 with expectation m.
inline double pm1_standard_error(double m, std::uint64_t n) {
  return std::sqrt(std::max(0.0, 1.0 - m * m) / static_cast<double>(n));
}

/// Haar-ish random unitary from the QR of a complex Gaussian matrix.
inline CMat random_unitary(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<CMat> qr(m);
  return qr.householderQ() * CMat::Identity(d, d);
}

/// Random point of the closed disk of radius r.
inline std::pair<double, double> disk_point(std::mt19937_64& rng, double r = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const double x = u(rng), y = u(rng);
    if (x * x + y * y <= 1.0) return {r * x, r * y};
  }
}

}  // namespace oracle

#endif  // HYPERBIT_TESTS_ORACLES_HPP
