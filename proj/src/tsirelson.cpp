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

#include "hyperbit/tsirelson.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperbit/error.hpp"

namespace hyperbit {

std::vector<std::pair<OperatorLabel, ComplexMatrix>> operator_family(const BipartiteInstance& inst) {
  const QuantumState& st = inst.state();
  const ComplexMatrix id_a = identity(st.dim_alice());
  const ComplexMatrix id_b = identity(st.dim_bob());

  std::vector<std::pair<OperatorLabel, ComplexMatrix>> family;
  family.push_back({{OperatorRole::identity, {}, Outcome::plus}, identity(st.dim())});
  for (const auto& [a, obs] : inst.alice()) {
    family.push_back({{OperatorRole::alice, a, Outcome::plus}, tensor_product(obs.matrix(), id_b)});
  }
  for (const auto& [a, obs] : inst.alice()) {
    const ProjectorPair proj = projectors_from_observable(obs);
    family.push_back({{OperatorRole::alice_projector, a, Outcome::plus}, tensor_product(proj.plus, id_b)});
    family.push_back({{OperatorRole::alice_projector, a, Outcome::minus}, tensor_product(proj.minus, id_b)});
  }
  for (const auto& [key, obs] : inst.bob()) {
    family.push_back({{OperatorRole::bob, key.first, key.second}, tensor_product(id_a, obs.matrix())});
  }
  return family;
}

Eigen::MatrixXd state_gram(const std::vector<ComplexMatrix>& ops, const QuantumState& state, const Tolerances& tol) {
  const auto n = static_cast<Eigen::Index>(ops.size());
  const ComplexMatrix& rho = state.rho();
  std::vector<ComplexMatrix> right;
  right.reserve(ops.size());
  for (const auto& op : ops) {
    if (op.rows() != rho.rows() || op.cols() != rho.cols()) {
      throw Error(ErrorKind::dimension_mismatch, "state_gram: operator does not act on the joint space");
    }
    right.push_back(op * rho);
  }
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      // Re Tr(X_i^† M) = Re sum_{kl} conj(X_i(k,l)) M(k,l), M = X_j rho
      const double v = ops[i].cwiseProduct(right[j].conjugate()).sum().real();
      gram(i, j) = v;
      gram(j, i) = v;
    }
  }
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    const double lambda_min = es.eigenvalues().minCoeff();
    if (lambda_min < -tol.hermitian) {
      throw Error(ErrorKind::non_psd_gram, "Gram matrix has a negative eigenvalue", lambda_min);
    }
  }
  return gram;
}

GramMatrix build_gram(const BipartiteInstance& inst, const Tolerances& tol) {
  auto family = operator_family(inst);
  std::vector<ComplexMatrix> ops;
  GramMatrix out;
  ops.reserve(family.size());
  out.labels.reserve(family.size());
  for (auto& [label, op] : family) {
    out.labels.push_back(std::move(label));
    ops.push_back(std::move(op));
  }
  out.values = state_gram(ops, inst.state(), tol);
  return out;
}

Eigen::MatrixXd factorize_gram(const Eigen::MatrixXd& gram, const Tolerances& tol) {
  if (gram.rows() != gram.cols()) throw Error(ErrorKind::dimension_mismatch, "Gram matrix is not square");
  if (gram.size() == 0) return Eigen::MatrixXd(0, 0);
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > tol.hermitian) {
    throw Error(ErrorKind::non_psd_gram, "Gram matrix is not symmetric");
  }
  const Eigen::MatrixXd sym = (gram + gram.transpose()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const Eigen::VectorXd& lambda = es.eigenvalues();
  if (lambda.minCoeff() < -tol.hermitian) {
    throw Error(ErrorKind::non_psd_gram, "Gram matrix has a negative eigenvalue", lambda.minCoeff());
  }
  const double cutoff = tol.rank_cutoff * std::max(lambda.maxCoeff(), 0.0);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index j = lambda.size() - 1; j >= 0; --j) {
    if (lambda(j) > cutoff && lambda(j) > 0.0) kept.push_back(j);
  }
  Eigen::MatrixXd vectors(static_cast<Eigen::Index>(kept.size()), gram.cols());
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const Eigen::Index j = kept[r];
    vectors.row(static_cast<Eigen::Index>(r)) = std::sqrt(lambda(j)) * es.eigenvectors().col(j).transpose();
  }
  return vectors;
}

TsirelsonImage factorize_to_image(const GramMatrix& gram, const Tolerances& tol) {
  if (static_cast<std::size_t>(gram.values.rows()) != gram.labels.size()) {
    throw Error(ErrorKind::dimension_mismatch, "Gram labels do not match its size");
  }
  const Eigen::MatrixXd vectors = factorize_gram(gram.values, tol);
  TsirelsonImage image;
  image.dimension = static_cast<std::size_t>(vectors.rows());
  bool have_identity = false;
  for (std::size_t k = 0; k < gram.labels.size(); ++k) {
    const OperatorLabel& label = gram.labels[k];
    CorrelationVector v = vectors.col(static_cast<Eigen::Index>(k));
    switch (label.role) {
      case OperatorRole::identity:
        image.identity_vector = std::move(v);
        have_identity = true;
        break;
      case OperatorRole::alice:
        image.alice_vectors[label.setting] = std::move(v);
        break;
      case OperatorRole::alice_projector:
        image.alice_projector_vectors[{label.setting, label.outcome}] = std::move(v);
        break;
      case OperatorRole::bob:
        image.bob_vectors[{label.setting, label.outcome}] = std::move(v);
        break;
    }
  }
  if (!have_identity) throw Error(ErrorKind::invalid_argument, "operator family lacks the identity");
  return image;
}

namespace {

template <typename Map, typename Key>
const CorrelationVector& lookup(const Map& map, const Key& key, const std::string& what) {
  const auto it = map.find(key);
  if (it == map.end()) throw Error(ErrorKind::unknown_setting, "no vector for " + what);
  return it->second;
}

std::string outcome_suffix(Outcome o) { return o == Outcome::plus ? "|+1" : "|-1"; }

}  // namespace

const CorrelationVector& TsirelsonImage::alice(const Setting& a) const {
  return lookup(alice_vectors, a, "Alice setting '" + a + "'");
}

const CorrelationVector& TsirelsonImage::alice_projector(const Setting& a, Outcome o) const {
  return lookup(alice_projector_vectors, std::pair{a, o}, "Alice projector '" + a + outcome_suffix(o) + "'");
}

const CorrelationVector& TsirelsonImage::bob(const Setting& b, Outcome o) const {
  return lookup(bob_vectors, std::pair{b, o}, "Bob setting '" + b + outcome_suffix(o) + "'");
}

BobEffectDecomposition decompose_bob_effect(const TsirelsonImage& image, const Setting& b, Outcome outcome,
                                            const Tolerances& tol) {
  const CorrelationVector& y = image.bob(b, outcome);
  const CorrelationVector& one = image.identity_vector;
  BobEffectDecomposition d;
  d.c = one.dot(y);
  CorrelationVector perp = y - d.c * one;
  d.n = perp.norm();
  if (d.n < tol.hermitian) {
    d.n = 0.0;
    d.degenerate = true;
    d.y_perp_hat = CorrelationVector::Zero(y.size());
  } else {
    d.y_perp_hat = perp / d.n;
  }
  return d;
}

RegionPoint coordinates(const TsirelsonImage& image, const Setting& a, const Setting& b, Outcome outcome,
                        const Tolerances& tol) {
  const CorrelationVector& xa = image.alice(a);
  const double bias = xa.dot(image.identity_vector);
  if (std::abs(bias) > tol.hermitian) {
    throw Error(ErrorKind::biased_alice, "<x_a, x_1> != 0 for setting '" + a + "'", bias);
  }
  const BobEffectDecomposition d = decompose_bob_effect(image, b, outcome, tol);
  const double z = d.degenerate ? 0.0 : sign(outcome) * xa.dot(d.y_perp_hat);
  return {d.n, d.c, z};
}

}  // namespace hyperbit
