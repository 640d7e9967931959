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

#include "hyperbit/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "hyperbit/error.hpp"
#include "hyperbit/rng.hpp"

namespace hyperbit {

Hyperbit::Hyperbit(CorrelationVector v, const Tolerances& tol) : vector_(std::move(v)) {
  const double norm = vector_.norm();
  if (norm > 1.0 + tol.hermitian) throw Error(ErrorKind::norm_violation, "hyperbit outside the unit ball", norm);
}

SharedRandomBit draw_shared_bit(std::uint64_t seed, std::uint64_t index) {
  auto rng = batch_engine(seed, Stream::shared_bit, index / kBatchSize);
  rng.discard(index % kBatchSize);
  return {outcome_of((rng() >> 63) != 0), seed};
}

double raw_expectation(const Hyperbit& h, const CorrelationVector& effect, const Tolerances& tol) {
  const double norm = effect.norm();
  if (norm > 1.0 + tol.hermitian) throw Error(ErrorKind::norm_violation, "effect outside the unit ball", norm);
  if (effect.size() != h.vector().size()) {
    throw Error(ErrorKind::dimension_mismatch, "hyperbit and effect live in different dimensions");
  }
  return std::clamp(h.vector().dot(effect), -1.0, 1.0);
}

Outcome sample_outcome(double expectation, std::mt19937_64& rng, const Tolerances& tol) {
  if (!(std::abs(expectation) <= 1.0 + tol.hermitian)) {
    throw Error(ErrorKind::expectation_out_of_range, "|E| > 1", expectation);
  }
  const double p_plus = std::clamp((1.0 + expectation) * 0.5, 0.0, 1.0);
  return outcome_of(uniform01(rng) < p_plus);
}

Outcome apply_deterministic(int which, Outcome s) {
  switch (which) {
    case 1: return Outcome::plus;
    case 2: return Outcome::minus;
    case 3: return s;
    case 4: return flip(s);
    default: throw Error(ErrorKind::invalid_argument, "deterministic function index must be 1..4");
  }
}

StrategyWeights StrategyWeights::make(double k1, double k2, double k3, double k4) {
  constexpr double kTol = 1e-12;
  const std::array<double, 4> k{k1, k2, k3, k4};
  double sum = 0.0;
  for (double v : k) {
    if (!(v >= -kTol)) throw Error(ErrorKind::invalid_weights, "negative strategy weight", v);
    sum += v;
  }
  if (std::abs(sum - 1.0) > kTol) throw Error(ErrorKind::invalid_weights, "strategy weights do not sum to 1", sum);
  return StrategyWeights(k);
}

double strategy_expectation(const StrategyWeights& k, double z) { return k.discard_bias() + k.pass_bias() * z; }

PWStrategy PWStrategy::make(double y, double q, const Tolerances& tol) {
  if (!(std::abs(y) <= 1.0 + tol.region)) throw Error(ErrorKind::invalid_argument, "|y| > 1", y);
  if (!(q >= -tol.region && q <= 1.0 + tol.region)) {
    throw Error(ErrorKind::invalid_flip_probability, "flip probability outside [0, 1]", q);
  }
  PWStrategy pw;
  pw.discard_prob = std::min(std::abs(y), 1.0);
  pw.discard_sign = y < 0.0 ? -1 : 1;
  pw.flip_prob = std::clamp(q, 0.0, 1.0);
  return pw;
}

FlipProbability pw_q(double x, double y, const Tolerances& tol) {
  const double pass = 1.0 - std::abs(y);
  if (pass <= tol.region) {
    throw Error(ErrorKind::degenerate_discard, "q is undefined when |y| = 1", y);
  }
  const double q = 0.5 * (1.0 - x / pass);
  return {q, q >= -tol.region && q <= 1.0 + tol.region};
}

double pw_expectation(double y, double q, double z, const Tolerances& tol) {
  if (!(q >= -tol.region && q <= 1.0 + tol.region)) {
    throw Error(ErrorKind::invalid_flip_probability, "flip probability outside [0, 1]", q);
  }
  return y + (1.0 - std::abs(y)) * z * (1.0 - 2.0 * q);
}

double pw_expectation(const PWStrategy& pw, double z) {
  return pw.y() + (1.0 - pw.discard_prob) * z * (1.0 - 2.0 * pw.flip_prob);
}

StrategyWeights pw_to_weights(double y, double q) {
  const double a = std::abs(y);
  const double pass = 1.0 - a;
  return StrategyWeights::make((a + y) * 0.5, (a - y) * 0.5, pass * (1.0 - q), pass * q);
}

double analytic_expectation(const Strategy& strategy, double z) {
  return std::visit(
      [z](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, StrategyWeights>) {
          return strategy_expectation(s, z);
        } else {
          return pw_expectation(s, z);
        }
      },
      strategy);
}

std::string describe(const Strategy& strategy) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* k = std::get_if<StrategyWeights>(&strategy)) {
    os << "weights(" << k->k(1) << ';' << k->k(2) << ';' << k->k(3) << ';' << k->k(4) << ')';
  } else {
    const auto& pw = std::get<PWStrategy>(strategy);
    os << "pw(y=" << pw.y() << ";q=" << pw.flip_prob << ')';
  }
  return os.str();
}

namespace {

struct BatchSums {
  std::int64_t outputs = 0;
  std::int64_t shared = 0;
};

// One post-processed outcome from raw outcome s.
Outcome post_process(const Strategy& strategy, Outcome s, std::mt19937_64& rng) {
  const double u = uniform01(rng);
  if (const auto* k = std::get_if<StrategyWeights>(&strategy)) {
    // One categorical draw over f1..f4.
    double acc = k->k(1);
    if (u < acc) return apply_deterministic(1, s);
    acc += k->k(2);
    if (u < acc) return apply_deterministic(2, s);
    acc += k->k(3);
    if (u < acc) return apply_deterministic(3, s);
    return apply_deterministic(4, s);
  }
  const auto& pw = std::get<PWStrategy>(strategy);
  if (u < pw.discard_prob) return outcome_of(pw.discard_sign > 0);
  return uniform01(rng) < pw.flip_prob ? flip(s) : s;
}

BatchSums run_batch(const RegionPoint& point, const Strategy& strategy, std::uint64_t samples, std::uint64_t seed,
                    SharedBitMode mode, std::uint64_t batch, const Tolerances& tol) {
  auto rng = batch_engine(seed, Stream::protocol, batch);
  const std::uint64_t begin = batch * kBatchSize;
  const std::uint64_t end = std::min(samples, begin + kBatchSize);
  BatchSums sums;
  for (std::uint64_t i = begin; i < end; ++i) {
    int r = 1;
    if (mode == SharedBitMode::independent) {
      r = (rng() >> 63) != 0 ? 1 : -1;
      sums.shared += r;
    }
    // Hyperbit r x measured against the effect gives E_r = r z; Bob's copy of r undoes it.
    const Outcome raw = sample_outcome(r * point.z, rng, tol);
    const Outcome s = r > 0 ? raw : flip(raw);
    sums.outputs += sign(post_process(strategy, s, rng));
  }
  return sums;
}

}  // namespace

SimulationReport simulate_protocol(const RegionPoint& point, const Strategy& strategy, std::uint64_t samples,
                                   std::uint64_t seed, SharedBitMode mode, Exec exec, const Tolerances& tol) {
  if (samples == 0) throw Error(ErrorKind::invalid_argument, "samples must be >= 1");
  if (!(std::abs(point.z) <= 1.0 + tol.hermitian)) {
    throw Error(ErrorKind::expectation_out_of_range, "|z| > 1", point.z);
  }
  const std::uint64_t batches = batch_count(samples);
  std::vector<BatchSums> per_batch(batches);
  if (exec == Exec::parallel) {
    const auto n = static_cast<std::int64_t>(batches);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < n; ++b) {
      per_batch[static_cast<std::size_t>(b)] =
          run_batch(point, strategy, samples, seed, mode, static_cast<std::uint64_t>(b), tol);
    }
  } else {
    for (std::uint64_t b = 0; b < batches; ++b) {
      per_batch[b] = run_batch(point, strategy, samples, seed, mode, b, tol);
    }
  }
  BatchSums total;
  for (const auto& s : per_batch) {
    total.outputs += s.outputs;
    total.shared += s.shared;
  }

  const double n = static_cast<double>(samples);
  SimulationReport report;
  report.point = point;
  report.strategy = describe(strategy);
  report.samples = samples;
  report.seed = seed;
  report.empirical_mean = static_cast<double>(total.outputs) / n;
  // Outputs are ±1, so the sum of squares is n.
  const double variance =
      samples > 1 ? std::max(0.0, (n - n * report.empirical_mean * report.empirical_mean) / (n - 1.0)) : 0.0;
  report.std_error = std::sqrt(variance / n);
  report.analytic = analytic_expectation(strategy, point.z);
  report.pass = std::abs(report.empirical_mean - report.analytic) <= 5.0 * report.std_error + 1e-12;
  if (mode == SharedBitMode::independent) report.shared_bit_mean = static_cast<double>(total.shared) / n;
  return report;
}

}  // namespace hyperbit
