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

#ifndef HYPERBIT_RNG_HPP
#define HYPERBIT_RNG_HPP

// Counter-style random streams. Samples are grouped in fixed-size batches and
// each batch owns an engine seeded from (seed, stream, batch index), so sample i
// is a deterministic function of (seed, i) under any parallel schedule.

#include <cstdint>
#include <random>

namespace hyperbit {

inline constexpr std::uint64_t kBatchSize = std::uint64_t{1} << 14;

/// Distinct consumers of one user seed draw from separate streams.
enum class Stream : std::uint32_t { protocol = 1, shared_bit = 2, volume = 3, instance = 4 };

inline std::mt19937_64 batch_engine(std::uint64_t seed, Stream stream, std::uint64_t batch) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(batch),
                    static_cast<std::uint32_t>(batch >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::uint64_t batch_count(std::uint64_t samples) { return (samples + kBatchSize - 1) / kBatchSize; }

}  // namespace hyperbit

#endif  // HYPERBIT_RNG_HPP
