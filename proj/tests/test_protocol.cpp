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

#include "hyperbit/error.hpp"
#include "hyperbit/protocol.hpp"
#include "hyperbit/rng.hpp"
#include "oracles.hpp"

using namespace hyperbit;

namespace {

CorrelationVector vec(std::initializer_list<double> xs) {
  CorrelationVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST(protocol, hyperbit_norm_and_raw_expectation) {
  EXPECT_NO_THROW(Hyperbit(vec({0.6, 0.8})));
  EXPECT_THROW(Hyperbit(vec({0.8, 0.8})), Error);
  const Hyperbit h(vec({0.6, 0.0, 0.8}));
  EXPECT_DOUBLE_EQ(raw_expectation(h, vec({1.0, 0.0, 0.0})), 0.6);
  EXPECT_THROW(raw_expectation(h, vec({1.0, 1.0, 0.0})), Error);
}

TEST(protocol, sample_outcome_frequency_and_range) {
  std::mt19937_64 rng(9);
  const int n = 200000;
  long sum = 0;
  for (int i = 0; i < n; ++i) sum += sign(sample_outcome(0.3, rng));
  EXPECT_NEAR(static_cast<double>(sum) / n, 0.3, 5.0 * oracle::pm1_standard_error(0.3, n));
  EXPECT_EQ(sample_outcome(1.0, rng), Outcome::plus);
  EXPECT_EQ(sample_outcome(-1.0, rng), Outcome::minus);
  try {
    sample_outcome(1.5, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::expectation_out_of_range);
  }
}

TEST(protocol, deterministic_postprocessings) {
  for (Outcome s : {Outcome::plus, Outcome::minus}) {
    EXPECT_EQ(apply_deterministic(1, s), Outcome::plus);
    EXPECT_EQ(apply_deterministic(2, s), Outcome::minus);
    EXPECT_EQ(apply_deterministic(3, s), s);
    EXPECT_EQ(apply_deterministic(4, s), flip(s));
  }
}

TEST(protocol, weights_validation) {
  EXPECT_NO_THROW(StrategyWeights::make(0.25, 0.25, 0.25, 0.25));
  EXPECT_THROW(StrategyWeights::make(0.5, 0.5, 0.5, -0.5), Error);
  EXPECT_THROW(StrategyWeights::make(0.3, 0.3, 0.3, 0.3), Error);
  const StrategyWeights k = StrategyWeights::make(0.1, 0.2, 0.6, 0.1);
  EXPECT_NEAR(strategy_expectation(k, 0.4), -0.1 + 0.5 * 0.4, 1e-15);
}

TEST(protocol, pw_q_closed_form_and_validity) {
  const FlipProbability q = pw_q(0.3, 0.4);
  EXPECT_NEAR(q.value, 0.5 * (1.0 - 0.3 / 0.6), 1e-15);
  EXPECT_TRUE(q.valid);
  const FlipProbability bad = pw_q(0.9, 0.5);
  EXPECT_FALSE(bad.valid);
  EXPECT_NEAR(bad.value, -0.4, 1e-15);
  try {
    pw_q(0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate_discard);
  }
  try {
    PWStrategy::make(0.5, bad.value);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_flip_probability);
    EXPECT_NEAR(e.value().value_or(0.0), -0.4, 1e-15);
  }
}

TEST(protocol, pw_matches_target_and_weights_for_random_points_in_D) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  while (checked < 5000) {
    const double x = u(rng), y = u(rng), z = u(rng);
    if (std::abs(x) + std::abs(y) > 1.0) continue;
    ++checked;
    const FlipProbability q = pw_q(x, y);
    ASSERT_TRUE(q.valid);
    EXPECT_NEAR(pw_expectation(y, q.value, z), y + x * z, 1e-12);
    const StrategyWeights k = pw_to_weights(y, q.value);
    double total = 0.0;
    for (double ki : k.values()) {
      EXPECT_GE(ki, 0.0);
      total += ki;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(k.discard_bias(), y, 1e-12);
    EXPECT_NEAR(k.pass_bias(), x, 1e-12);
    EXPECT_NEAR(strategy_expectation(k, z), pw_expectation(y, q.value, z), 1e-12);
    EXPECT_NEAR(analytic_expectation(PWStrategy::make(y, q.value), z), y + x * z, 1e-12);
  }
}

TEST(protocol, shared_bit_stream_is_deterministic_and_fair) {
  long sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const SharedRandomBit b = draw_shared_bit(77, static_cast<std::uint64_t>(i));
    EXPECT_EQ(b.value, draw_shared_bit(77, static_cast<std::uint64_t>(i)).value);
    EXPECT_EQ(b.source_seed, 77u);
    sum += sign(b.value);
  }
  EXPECT_LT(std::abs(static_cast<double>(sum) / n), 5.0 * oracle::pm1_standard_error(0.0, n));
}

TEST(protocol, serial_and_parallel_simulations_are_bit_identical) {
  const RegionPoint p{0.3, -0.2, 0.7};
  const std::vector<Strategy> strategies = {PWStrategy::make(p.y, pw_q(p.x, p.y).value),
                                            StrategyWeights::make(0.1, 0.3, 0.5, 0.1)};
  for (const Strategy& s : strategies) {
    for (SharedBitMode mode : {SharedBitMode::alice_outcome, SharedBitMode::independent}) {
      const auto serial = simulate_protocol(p, s, 3 * kBatchSize + 17, 5, mode, Exec::serial);
      const auto parallel = simulate_protocol(p, s, 3 * kBatchSize + 17, 5, mode, Exec::parallel);
      EXPECT_EQ(serial.empirical_mean, parallel.empirical_mean);
      EXPECT_EQ(serial.std_error, parallel.std_error);
      EXPECT_EQ(serial.shared_bit_mean, parallel.shared_bit_mean);
    }
  }
}

TEST(protocol, simulation_statistics) {
  const RegionPoint p{0.5, 0.25, -0.6};
  const Strategy s = PWStrategy::make(p.y, pw_q(p.x, p.y).value);
  const SimulationReport r = simulate_protocol(p, s, 400000, 13);
  EXPECT_NEAR(r.analytic, p.y + p.x * p.z, 1e-12);
  EXPECT_NEAR(r.std_error, oracle::pm1_standard_error(r.empirical_mean, r.samples), 1e-6);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.shared_bit_mean.has_value());

  const SimulationReport ind = simulate_protocol(p, s, 400000, 13, SharedBitMode::independent);
  EXPECT_TRUE(ind.pass);
  ASSERT_TRUE(ind.shared_bit_mean.has_value());
  EXPECT_LT(std::abs(*ind.shared_bit_mean), 5.0 * oracle::pm1_standard_error(0.0, ind.samples));

  const SimulationReport again = simulate_protocol(p, s, 400000, 13);
  EXPECT_EQ(r.empirical_mean, again.empirical_mean);
  const SimulationReport other = simulate_protocol(p, s, 400000, 14);
  EXPECT_NE(r.empirical_mean, other.empirical_mean);
}

TEST(protocol, describe_strategies) {
  EXPECT_EQ(describe(Strategy{StrategyWeights::make(0.25, 0.25, 0.5, 0.0)}).rfind("weights(", 0), 0u);
  EXPECT_EQ(describe(Strategy{PWStrategy::make(0.5, 0.25)}).rfind("pw(", 0), 0u);
}
