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

#ifndef HYPERBIT_PROTOCOL_HPP
#define HYPERBIT_PROTOCOL_HPP

// Hyperbit side of the communication task: raw expectation of a hyperbit
// against an effect, Bob's post-processing strategies, and the Monte Carlo
// pipeline that runs them sample by sample.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include "hyperbit/tsirelson.hpp"
#include "hyperbit/types.hpp"

namespace hyperbit {

/// Element of the unit hyperball.
class Hyperbit {
 public:
  explicit Hyperbit(CorrelationVector v, const Tolerances& tol = {});
  const CorrelationVector& vector() const { return vector_; }

 private:
  CorrelationVector vector_;
};

struct SharedRandomBit {
  Outcome value = Outcome::plus;
  std::uint64_t source_seed = 0;
};

/// Fair ±1 bit number `index` of the shared stream for `seed`.
SharedRandomBit draw_shared_bit(std::uint64_t seed, std::uint64_t index);

/// <h, effect>. Throws NormViolation when |effect| > 1 + tol.
double raw_expectation(const Hyperbit& h, const CorrelationVector& effect, const Tolerances& tol = {});

/// +1 with probability (1 + E) / 2. Throws ExpectationOutOfRange for |E| > 1 + tol.
Outcome sample_outcome(double expectation, std::mt19937_64& rng, const Tolerances& tol = {});

/// f1(s) = +1, f2(s) = -1, f3(s) = s, f4(s) = -s. `which` is 1-based.
Outcome apply_deterministic(int which, Outcome s);

/// Convex weights over f1..f4 (a point of the strategy tetrahedron).
class StrategyWeights {
 public:
  /// Throws InvalidWeights unless k_i >= 0 and sum k_i = 1 within 1e-12.
  static StrategyWeights make(double k1, double k2, double k3, double k4);

  double k(int i) const { return k_.at(static_cast<std::size_t>(i - 1)); }
  const std::array<double, 4>& values() const { return k_; }
  /// k1 - k2: the z-independent part of g.
  double discard_bias() const { return k_[0] - k_[1]; }
  /// k3 - k4: the slope of g in z.
  double pass_bias() const { return k_[2] - k_[3]; }

 private:
  explicit StrategyWeights(std::array<double, 4> k) : k_(k) {}
  std::array<double, 4> k_;
};

/// g = k1 - k2 + (k3 - k4) z.
double strategy_expectation(const StrategyWeights& k, double z);

/// Discard with probability |y| to sign(y), otherwise flip with probability q.
struct PWStrategy {
  double discard_prob = 0.0;
  int discard_sign = 1;
  double flip_prob = 0.5;

  /// Throws InvalidFlipProbability (carrying q) unless 0 <= q <= 1.
  static PWStrategy make(double y, double q, const Tolerances& tol = {});
  double y() const { return discard_sign * discard_prob; }
};

/// q = (1 - x / (1 - |y|)) / 2 with its validity flag. Out-of-range values are
/// reported as is, never clamped.
struct FlipProbability {
  double value = 0.0;
  bool valid = false;
};

/// Throws DegenerateDiscard when |y| = 1 (within tol).
FlipProbability pw_q(double x, double y, const Tolerances& tol = {});

/// y + (1 - |y|) z (1 - 2q). Throws InvalidFlipProbability for q outside [0, 1].
double pw_expectation(double y, double q, double z, const Tolerances& tol = {});
double pw_expectation(const PWStrategy& pw, double z);

/// Tetrahedron point of a PW protocol: k1 - k2 = y, k1 + k2 = |y|,
/// k3 + k4 = 1 - |y|, k3 - k4 = (1 - |y|)(1 - 2q).
StrategyWeights pw_to_weights(double y, double q);

using Strategy = std::variant<StrategyWeights, PWStrategy>;

double analytic_expectation(const Strategy& strategy, double z);
std::string describe(const Strategy& strategy);

enum class SharedBitMode {
  alice_outcome,  // r = A: the branch's z is already the measured expectation
  independent,    // fresh fair r per sample; hyperbit r x, Bob multiplies by his copy of r
};

struct SimulationReport {
  RegionPoint point;
  std::string strategy;
  double empirical_mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double analytic = 0.0;
  bool pass = false;
  std::optional<double> shared_bit_mean;  // independent mode only
};

/// Run the per-sample pipeline at `point` (only z enters the sampling; x and y
/// are recorded). `pass` iff |empirical - analytic| <= 5 std_error.
SimulationReport simulate_protocol(const RegionPoint& point, const Strategy& strategy, std::uint64_t samples,
                                   std::uint64_t seed, SharedBitMode mode = SharedBitMode::alice_outcome,
                                   Exec exec = Exec::parallel, const Tolerances& tol = {});

}  // namespace hyperbit

#endif  // HYPERBIT_PROTOCOL_HPP
