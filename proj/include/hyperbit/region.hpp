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

#ifndef HYPERBIT_REGION_HPP
#define HYPERBIT_REGION_HPP

// Geometry of the target t(x, y, z) = y + x z: the quantum region C, the
// parallelepiped D where a fixed post-processing reproduces t, z-aware
// strategies, and the minimax gap that certifies failure on C \ D.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "hyperbit/protocol.hpp"
#include "hyperbit/types.hpp"

namespace hyperbit {

enum class RegionLabel { inside_d, in_c_not_d, outside_c };

std::string_view to_string(RegionLabel label);

double target_t(const RegionPoint& p);

/// x^2 + y^2 <= 1, |t| <= 1, |z| <= 1, each with tolerance tol.region.
bool in_C(const RegionPoint& p, const Tolerances& tol = {});
/// |z| <= 1 and |x| + |y| <= 1.
bool in_D(const RegionPoint& p, const Tolerances& tol = {});
RegionLabel classify(const RegionPoint& p, const Tolerances& tol = {});

/// Either weights or the amount by which the constraint is violated.
struct WeightsResult {
  std::optional<StrategyWeights> weights;
  double violation = 0.0;

  explicit operator bool() const { return weights.has_value(); }
};

/// Weights with k1 - k2 = i and k3 - k4 = s, slack split equally between the
/// discard pair and the pass pair. Requires |i| + |s| <= 1 (+ tol).
StrategyWeights weights_from_biases(double i, double s, const Tolerances& tol = {});

/// z-independent strategy reproducing y + x z for every z. Infeasible iff |x| + |y| > 1.
WeightsResult weights_for(double x, double y, const Tolerances& tol = {});

/// Strategy solving k1 - k2 - y + (k3 - k4 - x) z = 0 for this z, with k3 - k4
/// as close to x as the simplex allows. Infeasible iff |t| > 1.
WeightsResult z_aware_weights(double x, double y, double z, const Tolerances& tol = {});

/// z = (y - k1 + k2) / (k3 - k4 - x); empty when k3 - k4 = x.
std::optional<double> solve_z_from_weights(double x, double y, const StrategyWeights& k, const Tolerances& tol = {});

struct ZInterval {
  double lo = -1.0;
  double hi = 1.0;
};

/// {z : |z| <= 1, |y + x z| <= 1}. Throws EmptyInterval.
ZInterval admissible_z_interval(double x, double y, const Tolerances& tol = {});

struct GapReport {
  double x = 0.0;
  double y = 0.0;
  ZInterval admissible_z;
  StrategyWeights best_weights = StrategyWeights::make(0.0, 0.0, 1.0, 0.0);
  double worst_z = 0.0;
  double gap = 0.0;
};

/// min over strategies of max over admissible z of |t - g|. Solved exactly as a
/// linear program in (k1 - k2, k3 - k4, eps); the inner max sits at the interval
/// endpoints because both t and g are affine in z.
GapReport minimax_gap(double x, double y, const Tolerances& tol = {});

/// (cos τ, b sin τ, b (1 - sin τ) / cos τ), with the τ = π/2 limit z = 0.
RegionPoint helix_point(double tau, int branch);

struct ScanGrid {
  std::size_t nx = 21;
  std::size_t ny = 21;
  std::size_t nz = 21;
  bool with_gap = false;
  std::uint64_t volume_samples = 1'000'000;
  std::uint64_t seed = 0;
};

struct ScanRecord {
  RegionPoint point;
  double t = 0.0;
  bool in_c = false;
  bool in_d = false;
  RegionLabel label = RegionLabel::outside_c;
  std::optional<double> q;  // empty when |y| = 1
  bool q_valid = false;
  std::optional<double> gap;  // only when requested and x^2 + y^2 <= 1
};

struct ScanSummary {
  std::size_t inside_d = 0;
  std::size_t in_c_not_d = 0;
  std::size_t outside_c = 0;
  double volume_fraction = 0.0;  // vol(D) / vol(C), Monte Carlo
  std::uint64_t volume_samples = 0;
  std::uint64_t seed = 0;
};

struct ScanResult {
  std::vector<ScanRecord> records;  // x-major, then y, then z
  ScanSummary summary;
};

/// Uniform grid over [-1, 1]^3 (each axis includes both endpoints).
ScanResult scan_region(const ScanGrid& grid, Exec exec = Exec::parallel, const Tolerances& tol = {});

/// Hit counts of uniform samples in [-1, 1]^3 landing in C and in D.
struct VolumeCounts {
  std::uint64_t in_c = 0;
  std::uint64_t in_d = 0;
  std::uint64_t samples = 0;
};

VolumeCounts volume_counts(std::uint64_t samples, std::uint64_t seed, Exec exec = Exec::parallel,
                           const Tolerances& tol = {});

}  // namespace hyperbit

#endif  // HYPERBIT_REGION_HPP
