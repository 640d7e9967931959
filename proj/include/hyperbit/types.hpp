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

#ifndef HYPERBIT_TYPES_HPP
#define HYPERBIT_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

namespace hyperbit {

/// Input bitstring selecting a measurement, e.g. "0", "01".
using Setting = std::string;

/// Dichotomic outcome. Stored as the signed value so `sign()` is a cast.
enum class Outcome : int { minus = -1, plus = +1 };

constexpr int sign(Outcome o) { return static_cast<int>(o); }
constexpr Outcome flip(Outcome o) { return o == Outcome::plus ? Outcome::minus : Outcome::plus; }
constexpr Outcome outcome_of(bool positive) { return positive ? Outcome::plus : Outcome::minus; }

/// Bob's observables are selected by his input and Alice's transmitted outcome.
using BobKey = std::pair<Setting, Outcome>;

/// Execution policy for the data-parallel kernels. `serial` is the reference path.
enum class Exec { serial, parallel };

/// Numerical tolerances shared by every module.
struct Tolerances {
  double hermitian = 1e-9;     // Hermiticity, PSD, trace, unbiasedness
  double zero_branch = 1e-12;  // steering branch probability floor
  double region = 1e-9;        // region predicates, q validity, feasibility
  double match = 1e-8;         // quantum vs hyperbit agreement
  double rank_cutoff = 1e-10;  // relative eigenvalue cutoff for Gram rank
  std::size_t max_dim = 16;    // per-party Hilbert space cap
};

/// Coordinates (x, y, z) of one protocol branch; t = y + x z.
struct RegionPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

}  // namespace hyperbit

#endif  // HYPERBIT_TYPES_HPP
