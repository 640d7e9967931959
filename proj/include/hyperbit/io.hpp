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

#ifndef HYPERBIT_IO_HPP
#define HYPERBIT_IO_HPP

// File formats: instance JSON, Tsirelson image JSON, reports as JSON and CSV.
// Every emitted document carries tool version, seed and tolerances.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperbit/equivalence.hpp"
#include "hyperbit/protocol.hpp"
#include "hyperbit/quantum_core.hpp"
#include "hyperbit/region.hpp"
#include "hyperbit/tsirelson.hpp"

namespace hyperbit {

inline constexpr const char* kToolName = "hyperbit";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Shortest decimal that round-trips.
std::string format_double(double v);

Json metadata_json(std::uint64_t seed, const Tolerances& tol);
/// "# tool=hyperbit version=... seed=... tol_hermitian=... ..." comment line.
std::string metadata_comment(std::uint64_t seed, const Tolerances& tol);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// Keys "bitstring|+1" / "bitstring|-1".
std::string bob_key_string(const BobKey& key);
BobKey parse_bob_key(const std::string& text);

Json instance_to_json(const BipartiteInstance& inst);
/// Throws Error(ParseError) on malformed input, other kinds on invalid content.
BipartiteInstance instance_from_json(const Json& j, const Tolerances& tol = {});
BipartiteInstance load_instance(const std::string& path, const Tolerances& tol = {});

Json image_to_json(const TsirelsonImage& image);

Json weights_to_json(const StrategyWeights& k);
Json simulation_to_json(const SimulationReport& r);
std::string simulation_csv_header();
std::string simulation_csv_row(const SimulationReport& r);

Json equivalence_to_json(const EquivalenceReport& r);
/// Header plus one row per branch.
std::string equivalence_csv(const EquivalenceReport& r);

Json gap_to_json(const GapReport& g);
Json counterexample_to_json(const CounterexampleRecord& c);

void write_scan_csv(std::ostream& os, const ScanResult& scan);
void write_helix_csv(std::ostream& os, std::size_t steps);

}  // namespace hyperbit

#endif  // HYPERBIT_IO_HPP
