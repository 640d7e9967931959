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

#include "hyperbit/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hyperbit/error.hpp"

namespace hyperbit {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json metadata_json(std::uint64_t seed, const Tolerances& tol) {
  Json meta;
  meta["tool"] = kToolName;
  meta["version"] = kToolVersion;
  meta["seed"] = seed;
  meta["tolerances"] = {{"hermitian", tol.hermitian},
                        {"zero_branch", tol.zero_branch},
                        {"region", tol.region},
                        {"match", tol.match},
                        {"rank_cutoff", tol.rank_cutoff},
                        {"max_dim", tol.max_dim}};
  return meta;
}

std::string metadata_comment(std::uint64_t seed, const Tolerances& tol) {
  std::ostringstream os;
  os << "# tool=" << kToolName << " version=" << kToolVersion << " seed=" << seed
     << " tol_hermitian=" << format_double(tol.hermitian) << " tol_region=" << format_double(tol.region)
     << " tol_match=" << format_double(tol.match) << " rank_cutoff=" << format_double(tol.rank_cutoff)
     << " max_dim=" << tol.max_dim;
  return os.str();
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::parse_error, what); }

const Setting& checked_setting(const Setting& s) {
  if (s.empty() || s.find_first_not_of("01") != std::string::npos) {
    parse_fail("setting '" + s + "' is not a bitstring");
  }
  return s;
}

Complex entry_from_json(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  parse_fail("matrix entry must be a number or an [re, im] pair");
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_fail("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) parse_fail("matrix rows must be arrays");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) parse_fail("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = entry_from_json(j[i][k]);
    }
  }
  return m;
}

std::string bob_key_string(const BobKey& key) {
  return key.first + (key.second == Outcome::plus ? "|+1" : "|-1");
}

BobKey parse_bob_key(const std::string& text) {
  const auto bar = text.rfind('|');
  if (bar == std::string::npos) parse_fail("Bob key '" + text + "' lacks '|±1'");
  const std::string tail = text.substr(bar + 1);
  Outcome o;
  if (tail == "+1" || tail == "1") {
    o = Outcome::plus;
  } else if (tail == "-1") {
    o = Outcome::minus;
  } else {
    parse_fail("Bob key '" + text + "' has outcome other than ±1");
  }
  return {checked_setting(text.substr(0, bar)), o};
}

Json instance_to_json(const BipartiteInstance& inst) {
  Json j;
  j["dim_alice"] = inst.state().dim_alice();
  j["dim_bob"] = inst.state().dim_bob();
  j["rho"] = matrix_to_json(inst.state().rho());
  Json alice = Json::object();
  for (const auto& [a, obs] : inst.alice()) alice[a] = matrix_to_json(obs.matrix());
  j["alice"] = std::move(alice);
  Json bob = Json::object();
  for (const auto& [key, obs] : inst.bob()) bob[bob_key_string(key)] = matrix_to_json(obs.matrix());
  j["bob"] = std::move(bob);
  return j;
}

BipartiteInstance instance_from_json(const Json& j, const Tolerances& tol) {
  const Json& da = require(j, "dim_alice");
  const Json& db = require(j, "dim_bob");
  if (!da.is_number_unsigned() || !db.is_number_unsigned()) parse_fail("dimensions must be non-negative integers");
  QuantumState state(da.get<std::size_t>(), db.get<std::size_t>(), matrix_from_json(require(j, "rho")), tol);

  const Json& alice_j = require(j, "alice");
  const Json& bob_j = require(j, "bob");
  if (!alice_j.is_object() || !bob_j.is_object()) parse_fail("'alice' and 'bob' must be objects");
  BipartiteInstance::AliceMap alice;
  for (const auto& [a, m] : alice_j.items()) {
    alice.emplace(checked_setting(a), DichotomicObservable(matrix_from_json(m), a, tol));
  }
  BipartiteInstance::BobMap bob;
  for (const auto& [key, m] : bob_j.items()) {
    BobKey k = parse_bob_key(key);
    bob.emplace(k, DichotomicObservable(matrix_from_json(m), k.first, tol));
  }
  return BipartiteInstance(std::move(state), std::move(alice), std::move(bob));
}

BipartiteInstance load_instance(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse_error, "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse_error, "'" + path + "': " + e.what());
  }
  return instance_from_json(j, tol);
}

namespace {

Json vector_json(const CorrelationVector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json point_json(const RegionPoint& p) { return {{"x", p.x}, {"y", p.y}, {"z", p.z}}; }

std::string outcome_string(Outcome o) { return o == Outcome::plus ? "+1" : "-1"; }

std::string optional_csv(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

Json image_to_json(const TsirelsonImage& image) {
  Json j;
  j["dimension"] = image.dimension;
  j["identity"] = vector_json(image.identity_vector);
  Json alice = Json::object();
  for (const auto& [a, v] : image.alice_vectors) alice[a] = vector_json(v);
  j["alice"] = std::move(alice);
  Json proj = Json::object();
  for (const auto& [key, v] : image.alice_projector_vectors) proj[bob_key_string(key)] = vector_json(v);
  j["alice_projectors"] = std::move(proj);
  Json bob = Json::object();
  for (const auto& [key, v] : image.bob_vectors) bob[bob_key_string(key)] = vector_json(v);
  j["bob"] = std::move(bob);
  return j;
}

Json weights_to_json(const StrategyWeights& k) { return Json::array({k.k(1), k.k(2), k.k(3), k.k(4)}); }

Json simulation_to_json(const SimulationReport& r) {
  Json j;
  j["point"] = point_json(r.point);
  j["strategy"] = r.strategy;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["empirical_mean"] = r.empirical_mean;
  j["std_error"] = r.std_error;
  j["analytic"] = r.analytic;
  j["pass"] = r.pass;
  j["shared_bit_mean"] = optional_json(r.shared_bit_mean);
  return j;
}

std::string simulation_csv_header() { return "point,strategy,samples,seed,empirical,stderr,analytic,pass"; }

std::string simulation_csv_row(const SimulationReport& r) {
  std::ostringstream os;
  os << format_double(r.point.x) << ';' << format_double(r.point.y) << ';' << format_double(r.point.z) << ','
     << r.strategy << ',' << r.samples << ',' << r.seed << ',' << format_double(r.empirical_mean) << ','
     << format_double(r.std_error) << ',' << format_double(r.analytic) << ',' << (r.pass ? 1 : 0);
  return os.str();
}

Json equivalence_to_json(const EquivalenceReport& r) {
  Json j;
  j["mode"] = std::string(to_string(r.mode));
  j["verdict"] = r.verdict ? "pass" : "fail";
  j["failures"] = r.failures;
  Json branches = Json::array();
  for (const auto& b : r.branches) {
    Json e;
    e["a"] = b.a;
    e["b"] = b.b;
    e["A"] = sign(b.outcome);
    e["quantum_expectation"] = b.quantum;
    e["coordinates"] = point_json(b.coords);
    e["t"] = b.t;
    e["q"] = optional_json(b.q);
    e["pw_q_valid"] = b.q_valid;
    e["hyperbit_expectation"] = optional_json(b.hyperbit);
    e["failure"] = b.failure.empty() ? Json(nullptr) : Json(b.failure);
    e["abs_difference"] = b.hyperbit ? Json(b.diff) : Json(nullptr);
    e["pass"] = b.pass;
    branches.push_back(std::move(e));
  }
  j["branches"] = std::move(branches);
  return j;
}

std::string equivalence_csv(const EquivalenceReport& r) {
  std::ostringstream os;
  os << "a,b,A,x,y,z,t,q,q_valid,hyperbit_value,diff,pass\n";
  for (const auto& b : r.branches) {
    os << b.a << ',' << b.b << ',' << outcome_string(b.outcome) << ',' << format_double(b.coords.x) << ','
       << format_double(b.coords.y) << ',' << format_double(b.coords.z) << ',' << format_double(b.t) << ','
       << optional_csv(b.q) << ',' << (b.q_valid ? 1 : 0) << ',' << optional_csv(b.hyperbit) << ','
       << (b.hyperbit ? format_double(b.diff) : "") << ',' << (b.pass ? 1 : 0) << '\n';
  }
  return os.str();
}

Json gap_to_json(const GapReport& g) {
  Json j;
  j["point"] = {{"x", g.x}, {"y", g.y}};
  j["admissible_z"] = Json::array({g.admissible_z.lo, g.admissible_z.hi});
  j["best_weights"] = weights_to_json(g.best_weights);
  j["worst_z"] = g.worst_z;
  j["gap"] = g.gap;
  return j;
}

Json counterexample_to_json(const CounterexampleRecord& c) {
  Json j;
  j["point"] = point_json(c.point);
  j["witness_z"] = Json::array({c.witness_z[0], c.witness_z[1]});
  Json cands = Json::array();
  for (std::size_t i = 0; i < c.candidate_weights.size(); ++i) {
    cands.push_back({{"weights", weights_to_json(c.candidate_weights[i])}, {"violation", c.candidate_violations[i]}});
  }
  j["candidates"] = std::move(cands);
  j["max_violation"] = c.max_violation;
  return j;
}

void write_scan_csv(std::ostream& os, const ScanResult& scan) {
  const ScanSummary& s = scan.summary;
  os << "# summary inside_d=" << s.inside_d << " in_c_not_d=" << s.in_c_not_d << " outside_c=" << s.outside_c
     << " volume_fraction=" << format_double(s.volume_fraction) << " volume_samples=" << s.volume_samples << '\n';
  os << "x,y,z,t,in_C,in_D,q,q_valid,gap\n";
  for (const auto& r : scan.records) {
    os << format_double(r.point.x) << ',' << format_double(r.point.y) << ',' << format_double(r.point.z) << ','
       << format_double(r.t) << ',' << (r.in_c ? 1 : 0) << ',' << (r.in_d ? 1 : 0) << ',' << optional_csv(r.q)
       << ',' << (r.q_valid ? 1 : 0) << ',' << optional_csv(r.gap) << '\n';
  }
}

void write_helix_csv(std::ostream& os, std::size_t steps) {
  const double pi = std::acos(-1.0);
  os << "tau,branch,x,y,z,t\n";
  for (int branch : {+1, -1}) {
    for (std::size_t k = 0; k < steps; ++k) {
      const double tau = steps == 1 ? 0.0 : pi * static_cast<double>(k) / static_cast<double>(steps - 1);
      const RegionPoint p = helix_point(tau, branch);
      os << format_double(tau) << ',' << branch << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
         << format_double(p.z) << ',' << format_double(target_t(p)) << '\n';
    }
  }
}

}  // namespace hyperbit
