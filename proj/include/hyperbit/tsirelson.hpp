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

#ifndef HYPERBIT_TSIRELSON_HPP
#define HYPERBIT_TSIRELSON_HPP

// Tsirelson map: operator families under the state inner product
// <X, Y>_rho = Re Tr(X^† Y rho) become real Euclidean vectors whose inner
// products reproduce the Born correlations.

#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "hyperbit/quantum_core.hpp"
#include "hyperbit/types.hpp"

namespace hyperbit {

using CorrelationVector = Eigen::VectorXd;

enum class OperatorRole { identity, alice, alice_projector, bob };

/// Which operator of the family a Gram row belongs to.
struct OperatorLabel {
  OperatorRole role = OperatorRole::identity;
  Setting setting;
  Outcome outcome = Outcome::plus;  // meaningful for alice_projector and bob

  friend bool operator==(const OperatorLabel&, const OperatorLabel&) = default;
};

struct GramMatrix {
  Eigen::MatrixXd values;
  std::vector<OperatorLabel> labels;
};

/// The family {1⊗1, A_a⊗1, P_a^±⊗1, 1⊗B_{b,A}} in Gram-row order, lifted to H_A ⊗ H_B.
std::vector<std::pair<OperatorLabel, ComplexMatrix>> operator_family(const BipartiteInstance& inst);

/// Re Tr(X_i^† X_j rho) for an arbitrary family. Throws NonPSDGram.
Eigen::MatrixXd state_gram(const std::vector<ComplexMatrix>& ops, const QuantumState& state,
                           const Tolerances& tol = {});

GramMatrix build_gram(const BipartiteInstance& inst, const Tolerances& tol = {});

/// Columns of the returned matrix are vectors v_k with v_k · v_l = gram(k, l).
/// The row count is the numerical rank.
Eigen::MatrixXd factorize_gram(const Eigen::MatrixXd& gram, const Tolerances& tol = {});

struct TsirelsonImage {
  std::size_t dimension = 0;
  CorrelationVector identity_vector;  // x_1 = y_1
  std::map<Setting, CorrelationVector> alice_vectors;
  std::map<std::pair<Setting, Outcome>, CorrelationVector> alice_projector_vectors;
  std::map<BobKey, CorrelationVector> bob_vectors;

  const CorrelationVector& alice(const Setting& a) const;
  const CorrelationVector& alice_projector(const Setting& a, Outcome o) const;
  const CorrelationVector& bob(const Setting& b, Outcome o) const;
};

TsirelsonImage factorize_to_image(const GramMatrix& gram, const Tolerances& tol = {});

inline TsirelsonImage tsirelson_image(const BipartiteInstance& inst, const Tolerances& tol = {}) {
  return factorize_to_image(build_gram(inst, tol), tol);
}

/// y_{b,A} = c y_1 + n ŷ_⊥ with ŷ_⊥ a unit vector orthogonal to y_1.
struct BobEffectDecomposition {
  double c = 0.0;
  double n = 0.0;
  CorrelationVector y_perp_hat;
  bool degenerate = false;  // n below tol: ŷ_⊥ is the zero vector
};

BobEffectDecomposition decompose_bob_effect(const TsirelsonImage& image, const Setting& b, Outcome outcome,
                                            const Tolerances& tol = {});

/// x = n, y = c, z = A <x_a, ŷ_⊥>. Throws BiasedAlice unless <x_a, x_1> = 0.
RegionPoint coordinates(const TsirelsonImage& image, const Setting& a, const Setting& b, Outcome outcome,
                        const Tolerances& tol = {});

}  // namespace hyperbit

#endif  // HYPERBIT_TSIRELSON_HPP
