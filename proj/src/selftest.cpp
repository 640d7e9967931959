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
#include <functional>
#include <ostream>
#include <string>

#include "hyperbit/cli.hpp"
#include "hyperbit/equivalence.hpp"
#include "hyperbit/error.hpp"
#include "hyperbit/region.hpp"
#include "hyperbit/tsirelson.hpp"

namespace hyperbit::cli {

namespace {

struct Check {
  const char* name;
  std::function<std::string()> body;  // empty string on success
};

std::string bell_anchor() {
  const BipartiteInstance inst = bell_chsh_instance();
  const TsirelsonImage image = tsirelson_image(inst);
  const double r = 1.0 / std::sqrt(2.0);
  for (const char* a : {"0", "1"}) {
    for (const char* b : {"0", "1"}) {
      for (Outcome o : {Outcome::plus, Outcome::minus}) {
        const RegionPoint p = coordinates(image, a, b, o);
        const double corr = std::string(a) == "0" ? r : (std::string(b) == "0" ? r : -r);
        const double want_z = sign(o) * corr;
        if (std::abs(p.x - 1.0) > 1e-8 || std::abs(p.y) > 1e-8 || std::abs(p.z - want_z) > 1e-8) {
          return "coordinates off anchor at a=" + std::string(a) + " b=" + b;
        }
      }
    }
  }
  return {};
}

std::string random_equivalence(StrategyMode mode) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    InstanceSpec spec;
    spec.seed = 1000 + s;
    spec.dim_alice = 2 + 2 * (s % 2);
    spec.dim_bob = 2 + s % 3;
    spec.bob_sharpness_min = 0.5;
    const EquivalenceReport report = verify_equivalence(random_instance(spec), mode);
    if (mode == StrategyMode::z_aware) {
      if (!report.verdict) return "instance seed " + std::to_string(spec.seed) + " failed";
      continue;
    }
    for (const BranchRecord& b : report.branches) {
      // pw must agree inside D and must flag the branch otherwise.
      if (in_D(b.coords) != b.pass) return "instance seed " + std::to_string(spec.seed) + " misjudged a branch";
    }
  }
  return {};
}

std::string pw_inside_d() {
  const int n = 21;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double x = -1.0 + 2.0 * i / (n - 1);
        const double y = -1.0 + 2.0 * j / (n - 1);
        const double z = -1.0 + 2.0 * k / (n - 1);
        const RegionPoint p{x, y, z};
        if (!in_D(p) || std::abs(y) >= 1.0) continue;
        const FlipProbability q = pw_q(x, y);
        if (!q.valid) return "invalid q inside D";
        if (std::abs(pw_expectation(y, q.value, z) - target_t(p)) > 1e-12) return "pw misses target";
      }
    }
  }
  return {};
}

std::string q_validity_boundary() {
  for (int i = 0; i <= 200; ++i) {
    for (int j = 1; j < 200; ++j) {
      const double x = -1.0 + i / 100.0;
      const double y = -1.0 + j / 100.0;
      if (std::abs(std::abs(x) + std::abs(y) - 1.0) < 1e-9) continue;
      const bool d = std::abs(x) + std::abs(y) <= 1.0;
      if (pw_q(x, y).valid != d) return "q validity disagrees with D";
    }
  }
  return {};
}

std::string gap_anchor() {
  const double r = 1.0 / std::sqrt(2.0);
  if (minimax_gap(r, r).gap <= 0.2) return "gap at (1/sqrt2, 1/sqrt2) not above 0.2";
  if (minimax_gap(0.3, -0.4).gap != 0.0) return "nonzero gap inside D";
  return {};
}

std::string helix_identity() {
  const double pi = std::acos(-1.0);
  for (int k = 0; k < 200; ++k) {
    const double tau = pi * (k + 0.5) / 200.0;
    for (int branch : {+1, -1}) {
      const RegionPoint p = helix_point(tau, branch);
      if (std::abs(p.x * p.x + p.y * p.y - 1.0) > 1e-12) return "helix leaves the cylinder";
      if (std::abs(std::abs(target_t(p)) - 1.0) > 1e-12) return "helix has |t| != 1";
    }
  }
  return {};
}

std::string monte_carlo() {
  const RegionPoint points[] = {{0.2, 0.3, -0.5}, {0.0, -0.6, 0.9}, {-0.4, 0.1, 0.25}};
  for (const RegionPoint& p : points) {
    const Strategy s = PWStrategy::make(p.y, pw_q(p.x, p.y).value);
    const SimulationReport r = simulate_protocol(p, s, 200'000, 7, SharedBitMode::alice_outcome);
    if (!r.pass) return "empirical mean outside 5 standard errors";
  }
  return {};
}

std::string outside_d_flags() {
  const EquivalenceReport report = verify_equivalence(outside_d_instance(), StrategyMode::pw);
  if (report.verdict) return "pw mode accepted an instance outside D";
  for (const auto& b : report.branches) {
    if (b.q && !b.q_valid) return {};
  }
  return "no invalid flip probability reported";
}

}  // namespace

int run_selftest(std::ostream& out) {
  const Check checks[] = {
      {"bell-anchor", bell_anchor},
      {"pw-equivalence-inside-D", [] { return random_equivalence(StrategyMode::pw); }},
      {"z-aware-equivalence-random", [] { return random_equivalence(StrategyMode::z_aware); }},
      {"pw-reproduces-target-inside-D", pw_inside_d},
      {"q-validity-matches-D", q_validity_boundary},
      {"minimax-gap-anchor", gap_anchor},
      {"helix-on-boundary", helix_identity},
      {"monte-carlo-within-5se", monte_carlo},
      {"outside-D-flagged", outside_d_flags},
  };
  int failed = 0;
  for (const Check& c : checks) {
    std::string why;
    try {
      why = c.body();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    if (why.empty()) {
      out << "PASS " << c.name << '\n';
    } else {
      ++failed;
      out << "FAIL " << c.name << ": " << why << '\n';
    }
  }
  out << (failed == 0 ? "selftest: all checks passed\n" : "selftest: " + std::to_string(failed) + " failed\n");
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace hyperbit::cli
