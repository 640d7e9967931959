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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "hyperbit/cli.hpp"
#include "hyperbit/equivalence.hpp"
#include "hyperbit/error.hpp"
#include "hyperbit/io.hpp"

using namespace hyperbit;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(HYPERBIT_DATA_DIR) + "/" + name; }

std::filesystem::path temp_file(const char* name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST(io, format_double_round_trips) {
  for (double v : {0.0, -0.0, 1.0 / 3.0, 1e-300, -2.5e17, std::sqrt(2.0)}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
}

TEST(io, instance_json_round_trip) {
  for (const BipartiteInstance& inst : {bell_chsh_instance(), outside_d_instance()}) {
    const BipartiteInstance back = instance_from_json(instance_to_json(inst));
    EXPECT_EQ(back.state().rho(), inst.state().rho());
    ASSERT_EQ(back.bob().size(), inst.bob().size());
    for (const auto& [key, obs] : inst.bob()) EXPECT_EQ(back.bob_observable(key.first, key.second).matrix(), obs.matrix());
    for (const auto& [a, obs] : inst.alice()) EXPECT_EQ(back.alice_observable(a).matrix(), obs.matrix());
  }
}

TEST(io, bob_keys) {
  EXPECT_EQ(parse_bob_key("01|+1"), (BobKey{"01", Outcome::plus}));
  EXPECT_EQ(parse_bob_key("1|1"), (BobKey{"1", Outcome::plus}));
  EXPECT_EQ(parse_bob_key("0|-1"), (BobKey{"0", Outcome::minus}));
  EXPECT_EQ(bob_key_string({"0", Outcome::minus}), "0|-1");
  for (const char* bad : {"0", "0|2", "|+1", "x|+1"}) {
    try {
      parse_bob_key(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::parse_error);
    }
  }
}

TEST(io, load_instance_reports_parse_errors) {
  const auto path = temp_file("hyperbit_bad_instance.json");
  std::ofstream(path) << "{ not json";
  try {
    load_instance(path.string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse_error);
  }
  EXPECT_THROW(load_instance("/nonexistent/instance.json"), Error);
  std::filesystem::remove(path);
}

TEST(io, matrix_accepts_real_entries) {
  const Json j = Json::parse("[[1, 0], [0, -1]]");
  const ComplexMatrix m = matrix_from_json(j);
  EXPECT_EQ(m(1, 1), Complex(-1.0, 0.0));
}

TEST(cli, help_and_usage_errors) {
  EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);
  EXPECT_EQ(invoke({}).code, cli::kExitInputError);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitInputError);
  EXPECT_EQ(invoke({"simulate", "--point", "1,2"}).code, cli::kExitInputError);
  EXPECT_EQ(invoke({"verify", "/nonexistent.json"}).code, cli::kExitInputError);
  EXPECT_EQ(invoke({"gap", "--point", "0.9,0.9"}).code, cli::kExitInputError);
}

TEST(cli, verify_exit_codes_follow_the_verdict) {
  EXPECT_EQ(invoke({"verify", data("bell_chsh.json")}).code, cli::kExitOk);
  const CliRun pw = invoke({"verify", data("outside_d.json"), "--format", "csv"});
  EXPECT_EQ(pw.code, cli::kExitFailure);
  EXPECT_NE(pw.out.find("a,b,A,x,y,z,t,q,q_valid,hyperbit_value,diff,pass"), std::string::npos);
  EXPECT_EQ(invoke({"verify", data("outside_d.json"), "--mode", "z-aware"}).code, cli::kExitOk);
}

TEST(cli, outputs_carry_metadata) {
  const CliRun r = invoke({"gap", "--point", "0.7071067811865476,0.7071067811865476"});
  ASSERT_EQ(r.code, cli::kExitOk);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["meta"]["tool"], "hyperbit");
  EXPECT_GT(j["report"]["gap"].get<double>(), 0.2);
}

TEST(cli, repeated_runs_are_byte_identical) {
  const std::vector<std::vector<std::string>> commands = {
      {"verify", data("bell_chsh.json")},
      {"simulate", "--point", "0.3,0.2,0.5", "--samples", "50000", "--seed", "4"},
      {"simulate", "--point", "0.3,0.2,0.5", "--strategy", "0.1,0.2,0.6,0.1", "--samples", "50000", "--shared-bit",
       "independent"},
      {"scan", "--grid", "5,5,5", "--gap", "--volume-samples", "20000", "--seed", "2"},
      {"gap", "--point", "0.8,0.5"},
      {"helix", "--steps", "9"},
      {"counterexample", "--grid", "11,21"},
  };
  for (const auto& args : commands) {
    const CliRun a = invoke(args);
    const CliRun b = invoke(args);
    EXPECT_EQ(a.code, b.code) << args.front();
    EXPECT_EQ(a.out, b.out) << args.front();
    EXPECT_FALSE(a.out.empty()) << args.front();
  }
}

TEST(cli, serial_flag_does_not_change_results) {
  const CliRun par = invoke({"simulate", "--point", "0.1,-0.4,0.9", "--samples", "70000", "--seed", "8"});
  const CliRun ser = invoke({"simulate", "--point", "0.1,-0.4,0.9", "--samples", "70000", "--seed", "8", "--serial"});
  EXPECT_EQ(par.out, ser.out);
}

TEST(cli, simulate_outside_D_reports_the_flip_probability) {
  const CliRun r = invoke({"simulate", "--point", "0.8,0.5,0.2"});
  EXPECT_EQ(r.code, cli::kExitFailure);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["error"], "InvalidFlipProbability");
  EXPECT_NEAR(j["q"].get<double>(), 0.5 * (1.0 - 0.8 / 0.5), 1e-12);
}

TEST(cli, out_file_and_scan_csv_layout) {
  const auto path = temp_file("hyperbit_scan.csv");
  ASSERT_EQ(invoke({"scan", "--grid", "3,3,3", "--volume-samples", "1000", "--out", path.string()}).code, cli::kExitOk);
  std::ifstream in(path);
  std::string meta, summary, header;
  std::getline(in, meta);
  std::getline(in, summary);
  std::getline(in, header);
  EXPECT_EQ(meta.rfind("# tool=hyperbit", 0), 0u);
  EXPECT_EQ(summary.rfind("# summary", 0), 0u);
  EXPECT_EQ(header, "x,y,z,t,in_C,in_D,q,q_valid,gap");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 27);
  std::filesystem::remove(path);
}

TEST(cli, tolerance_from_environment_and_flag) {
  setenv("HYPERBIT_TOL", "1e-6", 1);
  const Json env = Json::parse(invoke({"gap", "--point", "0.2,0.3"}).out);
  unsetenv("HYPERBIT_TOL");
  EXPECT_DOUBLE_EQ(env["meta"]["tolerances"]["region"].get<double>(), 1e-6);
  const Json flag = Json::parse(invoke({"--tol", "1e-7", "gap", "--point", "0.2,0.3"}).out);
  EXPECT_DOUBLE_EQ(flag["meta"]["tolerances"]["region"].get<double>(), 1e-7);
}

TEST(cli, selftest_passes) {
  const CliRun r = invoke({"selftest"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
