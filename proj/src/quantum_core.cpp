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

#include "hyperbit/quantum_core.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "hyperbit/error.hpp"

namespace hyperbit {

namespace {

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::dimension_mismatch, std::string(what) + " is not square");
  }
}

std::string key_string(const Setting& b, Outcome o) {
  return b + "|" + (o == Outcome::plus ? "+1" : "-1");
}

}  // namespace

ComplexMatrix identity(std::size_t n) { return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m.adjoint() * m - identity(m.rows())) <= tol;
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  const ComplexMatrix h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

bool is_psd(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  if (m.size() == 0) return true;
  return hermitian_eigenvalues(m).minCoeff() >= -tol;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace_alice(const ComplexMatrix& m, std::size_t dim_alice, std::size_t dim_bob) {
  const auto da = static_cast<Eigen::Index>(dim_alice);
  const auto db = static_cast<Eigen::Index>(dim_bob);
  if (m.rows() != da * db || m.cols() != da * db) {
    throw Error(ErrorKind::dimension_mismatch, "partial_trace_alice: matrix is " + std::to_string(m.rows()) + "x" +
                                                   std::to_string(m.cols()) + ", expected " +
                                                   std::to_string(da * db) + " square");
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < da; ++i) {
    out += m.block(i * db, i * db, db, db);
  }
  return out;
}

ComplexMatrix partial_trace_bob(const ComplexMatrix& m, std::size_t dim_alice, std::size_t dim_bob) {
  const auto da = static_cast<Eigen::Index>(dim_alice);
  const auto db = static_cast<Eigen::Index>(dim_bob);
  if (m.rows() != da * db || m.cols() != da * db) {
    throw Error(ErrorKind::dimension_mismatch, "partial_trace_bob: dimension mismatch");
  }
  ComplexMatrix out(da, da);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out(i, j) = m.block(i * db, j * db, db, db).trace();
    }
  }
  return out;
}

QuantumState::QuantumState(std::size_t dim_alice, std::size_t dim_bob, ComplexMatrix rho, const Tolerances& tol)
    : dim_alice_(dim_alice), dim_bob_(dim_bob), rho_(std::move(rho)) {
  if (dim_alice == 0 || dim_bob == 0) {
    throw Error(ErrorKind::dimension_mismatch, "state dimensions must be positive");
  }
  if (dim_alice > tol.max_dim || dim_bob > tol.max_dim) {
    throw Error(ErrorKind::dimension_cap, "local dimension exceeds cap of " + std::to_string(tol.max_dim));
  }
  const auto n = static_cast<Eigen::Index>(dim());
  if (rho_.rows() != n || rho_.cols() != n) {
    throw Error(ErrorKind::dimension_mismatch, "rho must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (!is_hermitian(rho_, tol.hermitian)) throw Error(ErrorKind::not_hermitian, "rho is not Hermitian");
  const Complex tr = rho_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol.hermitian) {
    throw Error(ErrorKind::not_unit_trace, "Tr(rho) = " + std::to_string(tr.real()), tr.real());
  }
  const double lambda_min = hermitian_eigenvalues(rho_).minCoeff();
  if (lambda_min < -tol.hermitian) throw Error(ErrorKind::not_psd, "rho has eigenvalue below -tol", lambda_min);
}

DichotomicObservable::DichotomicObservable(ComplexMatrix matrix, Setting label, const Tolerances& tol)
    : matrix_(std::move(matrix)), label_(std::move(label)), projective_(false) {
  require_square(matrix_, "observable");
  if (matrix_.rows() == 0) throw Error(ErrorKind::dimension_mismatch, "empty observable");
  if (static_cast<std::size_t>(matrix_.rows()) > tol.max_dim) {
    throw Error(ErrorKind::dimension_cap, "observable dimension exceeds cap");
  }
  if (!is_hermitian(matrix_, tol.hermitian)) throw Error(ErrorKind::not_hermitian, "observable '" + label_ + "'");
  const Eigen::VectorXd ev = hermitian_eigenvalues(matrix_);
  if (ev.minCoeff() < -1.0 - tol.hermitian || ev.maxCoeff() > 1.0 + tol.hermitian) {
    throw Error(ErrorKind::spectrum_out_of_range, "observable '" + label_ + "' has spectrum outside [-1, 1]");
  }
  projective_ = max_abs(matrix_ * matrix_ - identity(matrix_.rows())) <= tol.hermitian;
}

ProjectorPair projectors_from_observable(const DichotomicObservable& obs) {
  if (!obs.projective()) {
    throw Error(ErrorKind::not_projective, "observable '" + obs.label() + "' does not square to the identity");
  }
  const ComplexMatrix one = identity(obs.dim());
  return {(one + obs.matrix()) * 0.5, (one - obs.matrix()) * 0.5};
}

BipartiteInstance::BipartiteInstance(QuantumState state, AliceMap alice, BobMap bob)
    : state_(std::move(state)), alice_(std::move(alice)), bob_(std::move(bob)) {
  for (const auto& [a, obs] : alice_) {
    if (obs.dim() != state_.dim_alice()) {
      throw Error(ErrorKind::dimension_mismatch, "Alice observable '" + a + "' does not act on dim_alice");
    }
  }
  for (const auto& [key, obs] : bob_) {
    if (obs.dim() != state_.dim_bob()) {
      throw Error(ErrorKind::dimension_mismatch,
                  "Bob observable '" + key_string(key.first, key.second) + "' does not act on dim_bob");
    }
  }
}

const DichotomicObservable& BipartiteInstance::alice_observable(const Setting& a) const {
  const auto it = alice_.find(a);
  if (it == alice_.end()) throw Error(ErrorKind::unknown_setting, "no Alice observable for '" + a + "'");
  return it->second;
}

const DichotomicObservable& BipartiteInstance::bob_observable(const Setting& b, Outcome alice_outcome) const {
  const auto it = bob_.find({b, alice_outcome});
  if (it == bob_.end()) {
    throw Error(ErrorKind::unknown_setting, "no Bob observable for '" + key_string(b, alice_outcome) + "'");
  }
  return it->second;
}

namespace {

double checked_real(Complex value, double tol, const char* what) {
  if (std::abs(value.imag()) > tol) {
    throw Error(ErrorKind::non_real_correlation, std::string(what) + " has imaginary part", value.imag());
  }
  return value.real();
}

// Tr((X ⊗ Y) rho) without forming the Kronecker product.
Complex joint_trace(const ComplexMatrix& x, const ComplexMatrix& y, const QuantumState& state) {
  const auto da = static_cast<Eigen::Index>(state.dim_alice());
  const auto db = static_cast<Eigen::Index>(state.dim_bob());
  const ComplexMatrix& rho = state.rho();
  Complex acc{0.0, 0.0};
  // Tr((X⊗Y) rho) = sum_{i,j} X(i,j) Tr(Y rho_{j,i}) with rho_{j,i} the (j,i) Bob block.
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      if (x(i, j) == Complex{0.0, 0.0}) continue;
      acc += x(i, j) * (y * rho.block(j * db, i * db, db, db)).trace();
    }
  }
  return acc;
}

}  // namespace

double born_correlation(const BipartiteInstance& inst, const DichotomicObservable& a_obs,
                        const DichotomicObservable& b_obs, const Tolerances& tol) {
  if (a_obs.dim() != inst.state().dim_alice() || b_obs.dim() != inst.state().dim_bob()) {
    throw Error(ErrorKind::dimension_mismatch, "born_correlation: observable dimensions do not match the state");
  }
  return checked_real(joint_trace(a_obs.matrix(), b_obs.matrix(), inst.state()), tol.hermitian,
                      "Tr(A⊗B rho)");
}

double alice_bias(const BipartiteInstance& inst, const Setting& a, const Tolerances& tol) {
  const auto& obs = inst.alice_observable(a);
  return checked_real(joint_trace(obs.matrix(), identity(inst.state().dim_bob()), inst.state()), tol.hermitian,
                      "Tr(A⊗1 rho)");
}

namespace {

// Unnormalized Tr_A((P ⊗ 1) rho) and its trace, with the branch gates applied.
std::pair<ComplexMatrix, double> steered_block(const BipartiteInstance& inst, const Setting& a, Outcome outcome,
                                               const Tolerances& tol) {
  const auto& obs = inst.alice_observable(a);
  const ProjectorPair proj = projectors_from_observable(obs);
  const QuantumState& st = inst.state();
  const ComplexMatrix lifted = tensor_product(proj.of(outcome), identity(st.dim_bob())) * st.rho();
  ComplexMatrix block = partial_trace_alice(lifted, st.dim_alice(), st.dim_bob());
  const double norm = checked_real(block.trace(), tol.hermitian, "Tr(P⊗1 rho)");
  if (norm < tol.zero_branch) {
    throw Error(ErrorKind::zero_probability_branch, "steering branch '" + a + "' has vanishing probability", norm);
  }
  if (std::abs(norm - 0.5) > tol.hermitian) {
    throw Error(ErrorKind::biased_alice, "Tr(P⊗1 rho) deviates from 1/2 for setting '" + a + "'", norm);
  }
  return {std::move(block), norm};
}

}  // namespace

QuantumState steering_state(const BipartiteInstance& inst, const Setting& a, Outcome outcome, const Tolerances& tol) {
  auto [block, norm] = steered_block(inst, a, outcome, tol);
  ComplexMatrix rho = block / norm;
  rho = (rho + rho.adjoint()).eval() * 0.5;
  return QuantumState(1, inst.state().dim_bob(), std::move(rho), tol);
}

double bob_joint_trace_expectation(const BipartiteInstance& inst, const Setting& a, const Setting& b,
                                   Outcome outcome, const Tolerances& tol) {
  const auto& bob = inst.bob_observable(b, outcome);
  (void)steered_block(inst, a, outcome, tol);
  const ProjectorPair proj = projectors_from_observable(inst.alice_observable(a));
  return 2.0 * checked_real(joint_trace(proj.of(outcome), bob.matrix(), inst.state()), tol.hermitian,
                            "Tr(P⊗B rho)");
}

double bob_quantum_expectation(const BipartiteInstance& inst, const Setting& a, const Setting& b, Outcome outcome,
                               const Tolerances& tol) {
  const auto& bob = inst.bob_observable(b, outcome);
  const QuantumState steered = steering_state(inst, a, outcome, tol);
  const double via_steering = checked_real((bob.matrix() * steered.rho()).trace(), tol.hermitian, "Tr(B rho_aA)");
  const double via_joint = bob_joint_trace_expectation(inst, a, b, outcome, tol);
  if (std::abs(via_steering - via_joint) > tol.match) {
    throw Error(ErrorKind::biased_alice, "steering and joint-trace expectations disagree",
                via_steering - via_joint);
  }
  return via_steering;
}

}  // namespace hyperbit
