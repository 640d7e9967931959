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

#ifndef HYPERBIT_EQUIVALENCE_HPP
#define HYPERBIT_EQUIVALENCE_HPP

// End-to-end comparison of entanglement-assisted one-bit communication with
// one-hyperbit communication, branch by branch.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperbit/protocol.hpp"
#include "hyperbit/quantum_core.hpp"
#include "hyperbit/region.hpp"
#include "hyperbit/types.hpp"

namespace hyperbit {

struct InstanceSpec {
  std::size_t dim_alice = 2;  // must be even
  std::size_t dim_bob = 2;
  std::size_t alice_settings = 2;
  std::size_t bob_settings = 2;
  std::uint64_t seed = 0;
  /// Bob observables are eta * (±1-spectrum), eta uniform in [bob_sharpness_min, 1].
  double bob_sharpness_min = 1.0;
};

/// Random unbiased instance. Alice's marginal is made maximally mixed by a local
/// filter on her side and her observables have balanced ±1 spectra.
/// Throws RejectionBudgetExceeded, InvalidArgument, DimensionCap.
BipartiteInstance random_instance(const InstanceSpec& spec, const Tolerances& tol = {});

/// Bitstring labels "0", "1", ... padded to a common width.
std::vector<Setting> setting_labels(std::size_t count);

/// |Φ+>, A in {Z, X}, B in {(Z+X)/√2, (Z-X)/√2} for both Alice outcomes.
BipartiteInstance bell_chsh_instance();

/// cos(π/8)|00> + sin(π/8)|11>, A = X. Bob "0" sits at (x, y) = (√3/2, 1/2),
/// outside D; Bob "1" = X sits on D's boundary at (1, 0).
BipartiteInstance outside_d_instance();

enum class StrategyMode { pw, fixed, z_aware };

std::string_view to_string(StrategyMode mode);
StrategyMode parse_mode(std::string_view text);

struct BranchRecord {
  Setting a;
  Setting b;
  Outcome outcome = Outcome::plus;
  double quantum = 0.0;
  RegionPoint coords;
  double t = 0.0;
  std::optional<double> q;  // empty when |y| = 1
  bool q_valid = false;
  std::optional<double> hyperbit;  // empty on failure
  std::string failure;
  double diff = 0.0;  // NaN on failure
  bool pass = false;
};

struct EquivalenceReport {
  StrategyMode mode = StrategyMode::pw;
  std::vector<BranchRecord> branches;  // (a, b, A) order, A = +1 first
  std::size_t failures = 0;
  bool verdict = false;
};

/// Quantum side via steering, hyperbit side via coordinates and the strategy of
/// `mode`. In pw mode an invalid q is a failed branch, not an error.
EquivalenceReport verify_equivalence(const BipartiteInstance& inst, StrategyMode mode, const Tolerances& tol = {});

struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t nx = 101;
  double y_min = -1.0;
  double y_max = 1.0;
  std::size_t ny = 201;
};

struct CounterexampleRecord {
  RegionPoint point;  // z = the endpoint where the best fixed strategy fails most
  std::array<double, 2> witness_z{};
  std::vector<StrategyWeights> candidate_weights;
  std::vector<double> candidate_violations;  // max over the witness pair, per candidate
  double max_violation = 0.0;  // certified lower bound for every fixed strategy
};

/// Certificate that no fixed strategy reproduces t at both witness z values.
/// Throws NotFound when (x, y) is inside D.
CounterexampleRecord certify_counterexample(double x, double y, const Tolerances& tol = {});

/// Grid point of C \ D with the largest minimax gap. Throws NotFound.
CounterexampleRecord find_counterexample(const GridSpec& grid, const Tolerances& tol = {});

}  // namespace hyperbit

#endif  // HYPERBIT_EQUIVALENCE_HPP
