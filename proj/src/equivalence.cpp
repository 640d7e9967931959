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

#include "hyperbit/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "hyperbit/error.hpp"
#include "hyperbit/rng.hpp"
#include "hyperbit/tsirelson.hpp"

namespace hyperbit {

namespace {

constexpr int kRejectionBudget = 64;

ComplexMatrix gaussian_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(n, rng));
  return qr.householderQ() * ComplexMatrix::Identity(qr.rows(), qr.cols());
}

// eta * U diag(+1 x plus_count, -1 x rest) U^†
ComplexMatrix random_pm_observable(std::size_t n, std::size_t plus_count, double eta, std::mt19937_64& rng) {
  const ComplexMatrix u = random_unitary(n, rng);
  Eigen::VectorXcd diag(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) diag(static_cast<Eigen::Index>(i)) = i < plus_count ? 1.0 : -1.0;
  ComplexMatrix m = eta * (u * diag.asDiagonal() * u.adjoint());
  return (m + m.adjoint()).eval() * 0.5;
}

// Random density operator with Alice's marginal equal to I / d_A, or empty on rejection.
std::optional<ComplexMatrix> filtered_state(std::size_t da, std::size_t db, std::mt19937_64& rng) {
  const ComplexMatrix g = gaussian_matrix(da * db, rng);
  ComplexMatrix rho0 = g * g.adjoint();
  rho0 /= rho0.trace().real();
  const ComplexMatrix sigma = partial_trace_bob(rho0, da, db);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((sigma + sigma.adjoint()) * 0.5);
  if (es.eigenvalues().minCoeff() < 0.05 / static_cast<double>(da)) return std::nullopt;
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse() / std::sqrt(static_cast<double>(da));
  const ComplexMatrix filter = es.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  const ComplexMatrix lifted = tensor_product(filter, identity(db));
  ComplexMatrix rho = lifted * rho0 * lifted.adjoint();
  rho = (rho + rho.adjoint()).eval() * 0.5;
  rho /= rho.trace().real();
  return rho;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix pure_state(const Eigen::VectorXcd& psi) { return psi * psi.adjoint(); }

}  // namespace

std::vector<Setting> setting_labels(std::size_t count) {
  std::size_t width = 1;
  while ((std::size_t{1} << width) < count) ++width;
  std::vector<Setting> labels;
  labels.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Setting s(width, '0');
    for (std::size_t bit = 0; bit < width; ++bit) {
      if ((k >> bit) & 1U) s[width - 1 - bit] = '1';
    }
    labels.push_back(std::move(s));
  }
  return labels;
}

BipartiteInstance random_instance(const InstanceSpec& spec, const Tolerances& tol) {
  const std::size_t da = spec.dim_alice;
  const std::size_t db = spec.dim_bob;
  if (da < 2 || db < 2) throw Error(ErrorKind::invalid_argument, "dimensions must be >= 2");
  if (da > tol.max_dim || db > tol.max_dim) throw Error(ErrorKind::dimension_cap, "dimension exceeds cap");
  if (da % 2 != 0) {
    throw Error(ErrorKind::invalid_argument, "dim_alice must be even for balanced ±1 Alice observables");
  }
  if (spec.alice_settings == 0 || spec.bob_settings == 0) {
    throw Error(ErrorKind::invalid_argument, "need at least one setting per party");
  }
  if (!(spec.bob_sharpness_min > 0.0 && spec.bob_sharpness_min <= 1.0)) {
    throw Error(ErrorKind::invalid_argument, "bob_sharpness_min must lie in (0, 1]");
  }

  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(Stream::instance)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit;

  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    const auto rho = filtered_state(da, db, rng);
    if (!rho) continue;
    QuantumState state(da, db, *rho, tol);

    BipartiteInstance::AliceMap alice;
    for (const Setting& a : setting_labels(spec.alice_settings)) {
      alice.emplace(a, DichotomicObservable(random_pm_observable(da, da / 2, 1.0, rng), a, tol));
    }
    BipartiteInstance::BobMap bob;
    for (const Setting& b : setting_labels(spec.bob_settings)) {
      for (Outcome o : {Outcome::plus, Outcome::minus}) {
        const std::size_t plus_count = 1 + static_cast<std::size_t>(unit(rng) * static_cast<double>(db - 1));
        const double eta =
            spec.bob_sharpness_min >= 1.0 ? 1.0 : spec.bob_sharpness_min + (1.0 - spec.bob_sharpness_min) * unit(rng);
        bob.emplace(BobKey{b, o},
                    DichotomicObservable(random_pm_observable(db, std::min(plus_count, db - 1), eta, rng), b, tol));
      }
    }
    BipartiteInstance inst(std::move(state), std::move(alice), std::move(bob));

    // Filter, never repair: any setting with residual bias rejects the draw.
    bool unbiased = true;
    for (const auto& [a, obs] : inst.alice()) {
      if (std::abs(alice_bias(inst, a, tol)) > tol.hermitian) unbiased = false;
    }
    if (unbiased) return inst;
  }
  throw Error(ErrorKind::rejection_budget_exceeded, "no acceptable instance within the rejection budget");
}

BipartiteInstance bell_chsh_instance() {
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  QuantumState state(2, 2, pure_state(phi));
  const ComplexMatrix z = pauli_z();
  const ComplexMatrix x = pauli_x();
  BipartiteInstance::AliceMap alice;
  alice.emplace("0", DichotomicObservable(z, "0"));
  alice.emplace("1", DichotomicObservable(x, "1"));
  BipartiteInstance::BobMap bob;
  const ComplexMatrix plus = (z + x) / std::sqrt(2.0);
  const ComplexMatrix minus = (z - x) / std::sqrt(2.0);
  for (Outcome o : {Outcome::plus, Outcome::minus}) {
    bob.emplace(BobKey{"0", o}, DichotomicObservable(plus, "0"));
    bob.emplace(BobKey{"1", o}, DichotomicObservable(minus, "1"));
  }
  return BipartiteInstance(std::move(state), std::move(alice), std::move(bob));
}

BipartiteInstance outside_d_instance() {
  const double theta = std::acos(-1.0) / 8.0;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = std::cos(theta);
  psi(3) = std::sin(theta);
  QuantumState state(2, 2, pure_state(psi));
  const ComplexMatrix z = pauli_z();
  const ComplexMatrix x = pauli_x();
  BipartiteInstance::AliceMap alice;
  alice.emplace("0", DichotomicObservable(x, "0"));
  // Bloch direction at 45° from z: <B> on Bob's marginal diag(cos²θ, sin²θ) is 1/2.
  const ComplexMatrix tilted = (z + x) / std::sqrt(2.0);
  BipartiteInstance::BobMap bob;
  for (Outcome o : {Outcome::plus, Outcome::minus}) {
    bob.emplace(BobKey{"0", o}, DichotomicObservable(tilted, "0"));
    bob.emplace(BobKey{"1", o}, DichotomicObservable(x, "1"));
  }
  return BipartiteInstance(std::move(state), std::move(alice), std::move(bob));
}

std::string_view to_string(StrategyMode mode) {
  switch (mode) {
    case StrategyMode::pw: return "pw";
    case StrategyMode::fixed: return "fixed";
    case StrategyMode::z_aware: return "z-aware";
  }
  return "unknown";
}

StrategyMode parse_mode(std::string_view text) {
  if (text == "pw") return StrategyMode::pw;
  if (text == "fixed" || text == "general_fixed_k") return StrategyMode::fixed;
  if (text == "z-aware" || text == "z_aware") return StrategyMode::z_aware;
  throw Error(ErrorKind::invalid_argument, "unknown mode '" + std::string(text) + "'");
}

namespace {

void evaluate_strategy(BranchRecord& rec, StrategyMode mode, const Tolerances& tol) {
  const RegionPoint& p = rec.coords;
  switch (mode) {
    case StrategyMode::pw: {
      if (!rec.q) {
        // Pure discard: the flip never acts.
        rec.hyperbit = pw_expectation(p.y, 0.5, p.z, tol);
      } else if (rec.q_valid) {
        rec.hyperbit = pw_expectation(p.y, std::clamp(*rec.q, 0.0, 1.0), p.z, tol);
      } else {
        rec.failure = "InvalidFlipProbability q=" + std::to_string(*rec.q);
      }
      break;
    }
    case StrategyMode::fixed: {
      const WeightsResult w = weights_for(p.x, p.y, tol);
      if (w) {
        rec.hyperbit = strategy_expectation(*w.weights, p.z);
      } else {
        rec.failure = "Infeasible by " + std::to_string(w.violation);
      }
      break;
    }
    case StrategyMode::z_aware: {
      const WeightsResult w = z_aware_weights(p.x, p.y, p.z, tol);
      if (w) {
        rec.hyperbit = strategy_expectation(*w.weights, p.z);
      } else {
        rec.failure = "Infeasible by " + std::to_string(w.violation);
      }
      break;
    }
  }
}

}  // namespace

EquivalenceReport verify_equivalence(const BipartiteInstance& inst, StrategyMode mode, const Tolerances& tol) {
  const TsirelsonImage image = tsirelson_image(inst, tol);
  std::set<Setting> bob_settings;
  for (const auto& [key, obs] : inst.bob()) bob_settings.insert(key.first);

  EquivalenceReport report;
  report.mode = mode;
  for (const auto& [a, alice_obs] : inst.alice()) {
    for (const Setting& b : bob_settings) {
      for (Outcome outcome : {Outcome::plus, Outcome::minus}) {
        BranchRecord rec;
        rec.a = a;
        rec.b = b;
        rec.outcome = outcome;
        rec.quantum = bob_quantum_expectation(inst, a, b, outcome, tol);
        rec.coords = coordinates(image, a, b, outcome, tol);
        rec.t = target_t(rec.coords);
        if (1.0 - std::abs(rec.coords.y) > tol.region) {
          const FlipProbability q = pw_q(rec.coords.x, rec.coords.y, tol);
          rec.q = q.value;
          rec.q_valid = q.valid;
        } else {
          rec.q_valid = true;
        }
        evaluate_strategy(rec, mode, tol);
        if (rec.hyperbit) {
          rec.diff = std::abs(rec.quantum - *rec.hyperbit);
          rec.pass = rec.diff <= tol.match;
        } else {
          rec.diff = std::numeric_limits<double>::quiet_NaN();
          rec.pass = false;
        }
        if (!rec.pass) ++report.failures;
        report.branches.push_back(std::move(rec));
      }
    }
  }
  report.verdict = report.failures == 0;
  return report;
}

CounterexampleRecord certify_counterexample(double x, double y, const Tolerances& tol) {
  const GapReport gap = minimax_gap(x, y, tol);
  if (!(gap.gap > 0.0)) throw Error(ErrorKind::not_found, "(x, y) admits a fixed strategy");
  CounterexampleRecord rec;
  rec.point = {x, y, gap.worst_z};
  rec.witness_z = {gap.admissible_z.lo, gap.admissible_z.hi};
  rec.max_violation = gap.gap;

  rec.candidate_weights.push_back(gap.best_weights);
  for (double z : rec.witness_z) {
    if (auto w = z_aware_weights(x, y, z, tol)) rec.candidate_weights.push_back(*w.weights);
  }
  for (const auto& k : rec.candidate_weights) {
    double worst = 0.0;
    for (double z : rec.witness_z) worst = std::max(worst, std::abs(y + x * z - strategy_expectation(k, z)));
    rec.candidate_violations.push_back(worst);
  }
  return rec;
}

CounterexampleRecord find_counterexample(const GridSpec& grid, const Tolerances& tol) {
  if (grid.nx == 0 || grid.ny == 0) throw Error(ErrorKind::invalid_argument, "grid resolutions must be positive");
  const auto axis = [](double lo, double hi, std::size_t n, std::size_t k) {
    return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  };
  double best_gap = 0.0;
  std::optional<std::pair<double, double>> best;
  for (std::size_t i = 0; i < grid.nx; ++i) {
    const double x = axis(grid.x_min, grid.x_max, grid.nx, i);
    for (std::size_t j = 0; j < grid.ny; ++j) {
      const double y = axis(grid.y_min, grid.y_max, grid.ny, j);
      if (std::hypot(x, y) > 1.0 + tol.region) continue;
      if (std::abs(x) + std::abs(y) <= 1.0 + tol.region) continue;
      const double g = minimax_gap(x, y, tol).gap;
      if (g > best_gap) {
        best_gap = g;
        best = {x, y};
      }
    }
  }
  if (!best) throw Error(ErrorKind::not_found, "grid does not reach C \\ D");
  return certify_counterexample(best->first, best->second, tol);
}

}  // namespace hyperbit
