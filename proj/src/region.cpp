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

#include "hyperbit/region.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "hyperbit/error.hpp"
#include "hyperbit/rng.hpp"

namespace hyperbit {

std::string_view to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::inside_d: return "InsideD";
    case RegionLabel::in_c_not_d: return "InCNotD";
    case RegionLabel::outside_c: return "OutsideC";
  }
  return "Unknown";
}

double target_t(const RegionPoint& p) { return p.y + p.x * p.z; }

bool in_C(const RegionPoint& p, const Tolerances& tol) {
  const double limit = 1.0 + tol.region;
  return std::hypot(p.x, p.y) <= limit && std::abs(target_t(p)) <= limit && std::abs(p.z) <= limit;
}

bool in_D(const RegionPoint& p, const Tolerances& tol) {
  const double limit = 1.0 + tol.region;
  return std::abs(p.z) <= limit && std::abs(p.x) + std::abs(p.y) <= limit;
}

RegionLabel classify(const RegionPoint& p, const Tolerances& tol) {
  if (in_D(p, tol)) return RegionLabel::inside_d;
  return in_C(p, tol) ? RegionLabel::in_c_not_d : RegionLabel::outside_c;
}

StrategyWeights weights_from_biases(double i, double s, const Tolerances& tol) {
  const double used = std::abs(i) + std::abs(s);
  if (used > 1.0 + tol.region) {
    throw Error(ErrorKind::invalid_weights, "|k1-k2| + |k3-k4| exceeds 1", used);
  }
  if (used > 1.0) {
    i /= used;
    s /= used;
  }
  const double slack = std::max(0.0, 1.0 - std::abs(i) - std::abs(s));
  const double discard_mass = std::abs(i) + 0.5 * slack;
  const double pass_mass = std::abs(s) + 0.5 * slack;
  return StrategyWeights::make(0.5 * (discard_mass + i), 0.5 * (discard_mass - i), 0.5 * (pass_mass + s),
                               0.5 * (pass_mass - s));
}

WeightsResult weights_for(double x, double y, const Tolerances& tol) {
  const double used = std::abs(x) + std::abs(y);
  if (used > 1.0 + tol.region) return {std::nullopt, used - 1.0};
  return {weights_from_biases(y, x, tol), 0.0};
}

WeightsResult z_aware_weights(double x, double y, double z, const Tolerances& tol) {
  if (!(std::abs(z) <= 1.0 + tol.region)) {
    throw Error(ErrorKind::expectation_out_of_range, "|z| > 1", z);
  }
  const double t = y + x * z;
  if (std::abs(t) > 1.0 + tol.region) return {std::nullopt, std::abs(t) - 1.0};
  if (std::abs(x) + std::abs(y) <= 1.0 + tol.region) return weights_for(x, y, tol);

  // Feasible slopes s satisfy |t - s z| + |s| <= 1: a convex set containing
  // s = 0 but not s = x, so the slope closest to x lies on [0, x].
  const double target = std::clamp(t, -1.0, 1.0);
  const auto load = [&](double s) { return std::abs(target - s * z) + std::abs(s); };
  double lo = 0.0;  // fraction of x known feasible
  double hi = 1.0;  // fraction of x known infeasible
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (load(mid * x) <= 1.0 ? lo : hi) = mid;
  }
  const double s = lo * x;
  const double i = target - s * z;
  return {weights_from_biases(i, s, tol), 0.0};
}

std::optional<double> solve_z_from_weights(double x, double y, const StrategyWeights& k, const Tolerances& tol) {
  const double denom = k.pass_bias() - x;
  if (std::abs(denom) <= tol.region) return std::nullopt;
  return (y - k.discard_bias()) / denom;
}

ZInterval admissible_z_interval(double x, double y, const Tolerances& tol) {
  if (x == 0.0) {
    if (std::abs(y) > 1.0 + tol.region) throw Error(ErrorKind::empty_interval, "|y| > 1 with x = 0", y);
    return {-1.0, 1.0};
  }
  double lo = (-1.0 - y) / x;
  double hi = (1.0 - y) / x;
  if (lo > hi) std::swap(lo, hi);
  lo = std::max(lo, -1.0);
  hi = std::min(hi, 1.0);
  if (lo > hi + tol.region) throw Error(ErrorKind::empty_interval, "no z satisfies |z| <= 1 and |t| <= 1");
  if (lo > hi) lo = hi;
  return {lo, hi};
}

namespace {

// Variables v = (i, s, eps); each row a · v <= b.
struct Constraint {
  Eigen::Vector3d a;
  double b;
};

}  // namespace

GapReport minimax_gap(double x, double y, const Tolerances& tol) {
  GapReport report;
  report.x = x;
  report.y = y;
  report.admissible_z = admissible_z_interval(x, y, tol);
  const std::array<double, 2> zs{report.admissible_z.lo, report.admissible_z.hi};

  if (auto fixed = weights_for(x, y, tol)) {
    report.best_weights = *fixed.weights;
    report.worst_z = zs[0];
    report.gap = 0.0;
    return report;
  }

  std::vector<Constraint> rows;
  for (double si : {1.0, -1.0}) {
    for (double ss : {1.0, -1.0}) rows.push_back({{si, ss, 0.0}, 1.0});
  }
  for (double z : zs) {
    const double t = y + x * z;
    rows.push_back({{-1.0, -z, -1.0}, -t});  // t - i - s z <= eps
    rows.push_back({{1.0, z, -1.0}, t});     // i + s z - t <= eps
  }

  double best = std::numeric_limits<double>::infinity();
  Eigen::Vector3d best_v = Eigen::Vector3d::Zero();
  const std::size_t m = rows.size();
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p + 1; q < m; ++q) {
      for (std::size_t r = q + 1; r < m; ++r) {
        Eigen::Matrix3d a;
        a.row(0) = rows[p].a.transpose();
        a.row(1) = rows[q].a.transpose();
        a.row(2) = rows[r].a.transpose();
        if (std::abs(a.determinant()) < 1e-12) continue;
        const Eigen::Vector3d v = a.fullPivLu().solve(Eigen::Vector3d(rows[p].b, rows[q].b, rows[r].b));
        bool feasible = true;
        for (const auto& row : rows) {
          if (row.a.dot(v) > row.b + 1e-12) {
            feasible = false;
            break;
          }
        }
        if (feasible && v(2) < best - 1e-15) {
          best = v(2);
          best_v = v;
        }
      }
    }
  }
  if (!std::isfinite(best)) throw Error(ErrorKind::not_found, "minimax LP has no vertex");

  report.gap = std::max(0.0, best);
  report.best_weights = weights_from_biases(best_v(0), best_v(1), tol);
  const auto residual = [&](double z) { return std::abs(y + x * z - best_v(0) - best_v(1) * z); };
  report.worst_z = residual(zs[1]) > residual(zs[0]) ? zs[1] : zs[0];
  return report;
}

RegionPoint helix_point(double tau, int branch) {
  const double b = branch < 0 ? -1.0 : 1.0;
  const double c = std::cos(tau);
  const double s = std::sin(tau);
  // (1 - sin τ) / cos τ = cos τ / (1 + sin τ); the second form has no cancellation.
  const double z = std::abs(c) < 1e-8 ? 0.0 : b * c / (1.0 + s);
  return {c, b * s, z};
}

namespace {

double axis_value(std::size_t k, std::size_t n) {
  return n <= 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(n - 1);
}

ScanRecord scan_point(const RegionPoint& p, const std::optional<double>& gap, const Tolerances& tol) {
  ScanRecord rec;
  rec.point = p;
  rec.t = target_t(p);
  rec.in_c = in_C(p, tol);
  rec.in_d = in_D(p, tol);
  rec.label = classify(p, tol);
  if (1.0 - std::abs(p.y) > tol.region) {
    const FlipProbability q = pw_q(p.x, p.y, tol);
    rec.q = q.value;
    rec.q_valid = q.valid;
  }
  rec.gap = gap;
  return rec;
}

VolumeCounts volume_batch(std::uint64_t samples, std::uint64_t seed, std::uint64_t batch, const Tolerances& tol) {
  auto rng = batch_engine(seed, Stream::volume, batch);
  const std::uint64_t begin = batch * kBatchSize;
  const std::uint64_t end = std::min(samples, begin + kBatchSize);
  VolumeCounts counts;
  for (std::uint64_t i = begin; i < end; ++i) {
    RegionPoint p;
    p.x = 2.0 * uniform01(rng) - 1.0;
    p.y = 2.0 * uniform01(rng) - 1.0;
    p.z = 2.0 * uniform01(rng) - 1.0;
    counts.in_c += in_C(p, tol) ? 1 : 0;
    counts.in_d += in_D(p, tol) ? 1 : 0;
    ++counts.samples;
  }
  return counts;
}

}  // namespace

VolumeCounts volume_counts(std::uint64_t samples, std::uint64_t seed, Exec exec, const Tolerances& tol) {
  const std::uint64_t batches = batch_count(samples);
  std::vector<VolumeCounts> per_batch(batches);
  if (exec == Exec::parallel) {
    const auto n = static_cast<std::int64_t>(batches);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < n; ++b) {
      per_batch[static_cast<std::size_t>(b)] = volume_batch(samples, seed, static_cast<std::uint64_t>(b), tol);
    }
  } else {
    for (std::uint64_t b = 0; b < batches; ++b) per_batch[b] = volume_batch(samples, seed, b, tol);
  }
  VolumeCounts total;
  for (const auto& c : per_batch) {
    total.in_c += c.in_c;
    total.in_d += c.in_d;
    total.samples += c.samples;
  }
  return total;
}

ScanResult scan_region(const ScanGrid& grid, Exec exec, const Tolerances& tol) {
  if (grid.nx == 0 || grid.ny == 0 || grid.nz == 0) {
    throw Error(ErrorKind::invalid_argument, "scan resolutions must be positive");
  }
  const std::size_t plane = grid.nx * grid.ny;

  // The gap depends on (x, y) only.
  std::vector<std::optional<double>> gaps(plane);
  if (grid.with_gap) {
    const auto fill_gap = [&](std::size_t k) {
      const double x = axis_value(k / grid.ny, grid.nx);
      const double y = axis_value(k % grid.ny, grid.ny);
      if (std::hypot(x, y) <= 1.0 + tol.region) gaps[k] = minimax_gap(x, y, tol).gap;
    };
    if (exec == Exec::parallel) {
      const auto n = static_cast<std::int64_t>(plane);
#pragma omp parallel for schedule(dynamic, 16)
      for (std::int64_t k = 0; k < n; ++k) fill_gap(static_cast<std::size_t>(k));
    } else {
      for (std::size_t k = 0; k < plane; ++k) fill_gap(k);
    }
  }

  ScanResult result;
  result.records.resize(plane * grid.nz);
  const auto fill = [&](std::size_t idx) {
    const std::size_t iz = idx % grid.nz;
    const std::size_t ixy = idx / grid.nz;
    const RegionPoint p{axis_value(ixy / grid.ny, grid.nx), axis_value(ixy % grid.ny, grid.ny),
                        axis_value(iz, grid.nz)};
    result.records[idx] = scan_point(p, gaps[ixy], tol);
  };
  if (exec == Exec::parallel) {
    const auto n = static_cast<std::int64_t>(result.records.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n; ++k) fill(static_cast<std::size_t>(k));
  } else {
    for (std::size_t k = 0; k < result.records.size(); ++k) fill(k);
  }

  ScanSummary& summary = result.summary;
  for (const auto& rec : result.records) {
    switch (rec.label) {
      case RegionLabel::inside_d: ++summary.inside_d; break;
      case RegionLabel::in_c_not_d: ++summary.in_c_not_d; break;
      case RegionLabel::outside_c: ++summary.outside_c; break;
    }
  }
  summary.seed = grid.seed;
  summary.volume_samples = grid.volume_samples;
  if (grid.volume_samples > 0) {
    const VolumeCounts counts = volume_counts(grid.volume_samples, grid.seed, exec, tol);
    summary.volume_fraction =
        counts.in_c == 0 ? 0.0 : static_cast<double>(counts.in_d) / static_cast<double>(counts.in_c);
  }
  return result;
}

}  // namespace hyperbit
