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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hyperbit/equivalence.hpp"
#include "hyperbit/error.hpp"
#include "hyperbit/region.hpp"
#include "oracles.hpp"

using namespace hyperbit;

TEST(equivalence, setting_labels_are_padded_bitstrings) {
  EXPECT_EQ(setting_labels(1), (std::vector<Setting>{"0"}));
  EXPECT_EQ(setting_labels(2), (std::vector<Setting>{"0", "1"}));
  EXPECT_EQ(setting_labels(3), (std::vector<Setting>{"00", "01", "10"}));
}

TEST(equivalence, random_instances_are_unbiased_and_reproducible) {
  InstanceSpec spec;
  spec.dim_alice = 4;
  spec.dim_bob = 3;
  spec.alice_settings = 3;
  spec.bob_settings = 2;
  spec.seed = 99;
  const BipartiteInstance a = random_instance(spec);
  const BipartiteInstance b = random_instance(spec);
  EXPECT_EQ(a.state().dim_alice(), 4u);
  EXPECT_EQ(a.state().dim_bob(), 3u);
  EXPECT_EQ(a.alice().size(), 3u);
  EXPECT_EQ(a.bob().size(), 4u);
  EXPECT_EQ(a.state().rho(), b.state().rho());
  for (const auto& [s, obs] : a.alice()) {
    EXPECT_TRUE(obs.projective());
    EXPECT_NEAR(alice_bias(a, s), 0.0, 1e-9);
  }
  spec.seed = 100;
  EXPECT_NE(random_instance(spec).state().rho(), a.state().rho());
}

TEST(equivalence, random_instance_argument_checks) {
  InstanceSpec odd;
  odd.dim_alice = 3;
  EXPECT_THROW(random_instance(odd), Error);
  InstanceSpec big;
  big.dim_bob = 18;
  EXPECT_THROW(random_instance(big), Error);
  InstanceSpec sharp;
  sharp.bob_sharpness_min = 0.0;
  EXPECT_THROW(random_instance(sharp), Error);
}

TEST(equivalence, bell_instance_passes_every_mode) {
  const BipartiteInstance inst = bell_chsh_instance();
  for (StrategyMode mode : {StrategyMode::pw, StrategyMode::fixed, StrategyMode::z_aware}) {
    const EquivalenceReport r = verify_equivalence(inst, mode);
    EXPECT_TRUE(r.verdict) << to_string(mode);
    EXPECT_EQ(r.branches.size(), 8u);
    EXPECT_EQ(r.failures, 0u);
    for (const BranchRecord& b : r.branches) {
      EXPECT_NEAR(b.quantum, oracle::phi_plus_correlation(inst.alice_observable(b.a).matrix(),
                                                          inst.bob_observable(b.b, b.outcome).matrix()) *
                                 sign(b.outcome),
                  1e-10);
      EXPECT_NEAR(std::abs(b.quantum), 1.0 / std::sqrt(2.0), 1e-10);
    }
  }
}

TEST(equivalence, branch_order_is_a_b_then_plus_first) {
  const EquivalenceReport r = verify_equivalence(bell_chsh_instance(), StrategyMode::pw);
  ASSERT_EQ(r.branches.size(), 8u);
  EXPECT_EQ(r.branches[0].a, "0");
  EXPECT_EQ(r.branches[0].b, "0");
  EXPECT_EQ(r.branches[0].outcome, Outcome::plus);
  EXPECT_EQ(r.branches[1].outcome, Outcome::minus);
  EXPECT_EQ(r.branches[2].b, "1");
  EXPECT_EQ(r.branches[4].a, "1");
}

TEST(equivalence, outside_d_instance_separates_the_modes) {
  const BipartiteInstance inst = outside_d_instance();
  const EquivalenceReport pw = verify_equivalence(inst, StrategyMode::pw);
  EXPECT_FALSE(pw.verdict);
  bool saw_invalid_q = false;
  for (const BranchRecord& b : pw.branches) {
    if (b.q && !b.q_valid) {
      saw_invalid_q = true;
      EXPECT_NEAR(*b.q, 0.5 * (1.0 - b.coords.x / (1.0 - std::abs(b.coords.y))), 1e-12);
      EXPECT_FALSE(b.hyperbit.has_value());
      EXPECT_EQ(b.failure.rfind("InvalidFlipProbability", 0), 0u);
    }
  }
  EXPECT_TRUE(saw_invalid_q);
  EXPECT_FALSE(verify_equivalence(inst, StrategyMode::fixed).verdict);
  EXPECT_TRUE(verify_equivalence(inst, StrategyMode::z_aware).verdict);
}

TEST(equivalence, z_aware_passes_random_instances_and_pw_tracks_D) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    InstanceSpec spec;
    spec.seed = 500 + seed;
    spec.dim_alice = 2 + 2 * (seed % 2);
    spec.dim_bob = 2 + seed % 3;
    spec.bob_sharpness_min = 0.5;
    const BipartiteInstance inst = random_instance(spec);
    EXPECT_TRUE(verify_equivalence(inst, StrategyMode::z_aware).verdict) << seed;
    for (const BranchRecord& b : verify_equivalence(inst, StrategyMode::pw).branches) {
      EXPECT_EQ(b.pass, in_D(b.coords)) << seed;
      EXPECT_NEAR(b.t, b.quantum, 1e-9);
    }
  }
}

TEST(equivalence, mode_names_round_trip) {
  for (StrategyMode m : {StrategyMode::pw, StrategyMode::fixed, StrategyMode::z_aware}) {
    EXPECT_EQ(parse_mode(to_string(m)), m);
  }
  EXPECT_EQ(parse_mode("general_fixed_k"), StrategyMode::fixed);
  EXPECT_THROW(parse_mode("nope"), Error);
}

TEST(equivalence, certified_counterexample_bounds_every_fixed_strategy) {
  const double r = 1.0 / std::sqrt(2.0);
  const CounterexampleRecord c = certify_counterexample(r, r);
  EXPECT_GT(c.max_violation, 0.2);
  ASSERT_EQ(c.candidate_weights.size(), c.candidate_violations.size());
  for (double v : c.candidate_violations) EXPECT_GE(v, c.max_violation - 1e-12);

  std::mt19937_64 rng(31);
  std::exponential_distribution<double> e;
  for (int i = 0; i < 5000; ++i) {
    double k[4], total = 0.0;
    for (double& ki : k) total += (ki = e(rng));
    const StrategyWeights w = StrategyWeights::make(k[0] / total, k[1] / total, k[2] / total, 1.0 - (k[0] + k[1] + k[2]) / total);
    double worst = 0.0;
    for (double z : c.witness_z) worst = std::max(worst, std::abs(r + r * z - strategy_expectation(w, z)));
    EXPECT_GE(worst, c.max_violation - 1e-12);
  }
  EXPECT_THROW(certify_counterexample(0.3, 0.3), Error);
}

TEST(equivalence, counterexample_search_returns_grid_maximum) {
  const GridSpec grid{0.0, 1.0, 21, -1.0, 1.0, 41};
  const CounterexampleRecord c = find_counterexample(grid);
  EXPECT_GT(c.max_violation, 0.2);
  EXPECT_GT(std::abs(c.point.x) + std::abs(c.point.y), 1.0);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    for (std::size_t j = 0; j < grid.ny; ++j) {
      const double x = i / 20.0, y = -1.0 + j / 20.0;
      if (std::hypot(x, y) > 1.0 + 1e-9) continue;
      EXPECT_LE(minimax_gap(x, y).gap, c.max_violation + 1e-12);
    }
  }
  const GridSpec inside{0.0, 0.4, 5, -0.4, 0.4, 5};
  EXPECT_THROW(find_counterexample(inside), Error);
}
