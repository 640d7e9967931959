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

#ifndef HYPERBIT_QUANTUM_CORE_HPP
#define HYPERBIT_QUANTUM_CORE_HPP

// Dense complex-matrix machinery for small bipartite systems.
//
// Index ordering convention: every tensor product is Alice-major, i.e. the
// basis state |i>_A |k>_B has flat index i * dim_bob + k.

#include <complex>
#include <cstddef>
#include <map>

#include <Eigen/Dense>

#include "hyperbit/types.hpp"

namespace hyperbit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

ComplexMatrix identity(std::size_t n);

bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_unitary(const ComplexMatrix& m, double tol);
/// Hermitian and every eigenvalue >= -tol.
bool is_psd(const ComplexMatrix& m, double tol);
/// Eigenvalues of the Hermitian part, ascending.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m);

/// Kronecker product a ⊗ b, Alice (left) factor major.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr_A of an operator on H_A ⊗ H_B.
ComplexMatrix partial_trace_alice(const ComplexMatrix& m, std::size_t dim_alice, std::size_t dim_bob);
/// Tr_B of an operator on H_A ⊗ H_B.
ComplexMatrix partial_trace_bob(const ComplexMatrix& m, std::size_t dim_alice, std::size_t dim_bob);

/// Density operator on H_A ⊗ H_B. Validated on construction, immutable after.
class QuantumState {
 public:
  QuantumState(std::size_t dim_alice, std::size_t dim_bob, ComplexMatrix rho, const Tolerances& tol = {});

  std::size_t dim_alice() const { return dim_alice_; }
  std::size_t dim_bob() const { return dim_bob_; }
  std::size_t dim() const { return dim_alice_ * dim_bob_; }
  const ComplexMatrix& rho() const { return rho_; }

 private:
  std::size_t dim_alice_;
  std::size_t dim_bob_;
  ComplexMatrix rho_;
};

/// Hermitian operator with -1 <= A <= 1. `projective()` iff A^2 = 1.
class DichotomicObservable {
 public:
  DichotomicObservable(ComplexMatrix matrix, Setting label = {}, const Tolerances& tol = {});

  const ComplexMatrix& matrix() const { return matrix_; }
  const Setting& label() const { return label_; }
  bool projective() const { return projective_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  ComplexMatrix matrix_;
  Setting label_;
  bool projective_;
};

struct ProjectorPair {
  ComplexMatrix plus;
  ComplexMatrix minus;

  const ComplexMatrix& of(Outcome o) const { return o == Outcome::plus ? plus : minus; }
};

/// P± = (1 ± A) / 2. Throws NotProjective unless A^2 = 1.
ProjectorPair projectors_from_observable(const DichotomicObservable& obs);

/// Shared state plus Alice's observables per input and Bob's per (input, Alice outcome).
class BipartiteInstance {
 public:
  using AliceMap = std::map<Setting, DichotomicObservable>;
  using BobMap = std::map<BobKey, DichotomicObservable>;

  BipartiteInstance(QuantumState state, AliceMap alice, BobMap bob);

  const QuantumState& state() const { return state_; }
  const AliceMap& alice() const { return alice_; }
  const BobMap& bob() const { return bob_; }

  /// Throws UnknownSetting.
  const DichotomicObservable& alice_observable(const Setting& a) const;
  const DichotomicObservable& bob_observable(const Setting& b, Outcome alice_outcome) const;

 private:
  QuantumState state_;
  AliceMap alice_;
  BobMap bob_;
};

/// Tr((A ⊗ B) rho). Throws NonRealCorrelation when the imaginary part exceeds tol.
double born_correlation(const BipartiteInstance& inst, const DichotomicObservable& a_obs,
                        const DichotomicObservable& b_obs, const Tolerances& tol = {});

/// Tr((A_a ⊗ 1) rho).
double alice_bias(const BipartiteInstance& inst, const Setting& a, const Tolerances& tol = {});

/// Bob's conditional state after Alice's projective outcome on setting a.
/// The result has dim_alice() == 1.
QuantumState steering_state(const BipartiteInstance& inst, const Setting& a, Outcome outcome,
                            const Tolerances& tol = {});

/// Tr(B_{b,A} rho_{a,A}), cross-checked against 2 Tr(P_a^A ⊗ B_{b,A} rho).
double bob_quantum_expectation(const BipartiteInstance& inst, const Setting& a, const Setting& b, Outcome outcome,
                               const Tolerances& tol = {});

/// The doubled joint trace 2 Tr(P_a^A ⊗ B_{b,A} rho) on its own.
double bob_joint_trace_expectation(const BipartiteInstance& inst, const Setting& a, const Setting& b,
                                   Outcome outcome, const Tolerances& tol = {});

}  // namespace hyperbit

#endif  // HYPERBIT_QUANTUM_CORE_HPP
