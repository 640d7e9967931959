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

#include "hyperbit/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hyperbit/equivalence.hpp"
#include "hyperbit/error.hpp"
#include "hyperbit/io.hpp"
#include "hyperbit/region.hpp"

namespace hyperbit::cli {

namespace {

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw Error(ErrorKind::invalid_argument, std::string(what) + ": cannot parse '" + item + "'");
    }
    values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (values.size() != expected) {
    throw Error(ErrorKind::invalid_argument,
                std::string(what) + " expects " + std::to_string(expected) + " comma-separated values");
  }
  return values;
}

std::vector<std::size_t> parse_counts(const std::string& text, std::size_t expected, const char* what) {
  std::vector<std::size_t> counts;
  for (double v : parse_list(text, expected, what)) {
    if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw Error(ErrorKind::invalid_argument, std::string(what) + " must be positive integers");
    }
    counts.push_back(static_cast<std::size_t>(v));
  }
  return counts;
}

Tolerances default_tolerances() {
  Tolerances tol;
  if (const char* env = std::getenv("HYPERBIT_TOL")) {
    const std::string text(env);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec == std::errc() && res.ptr == text.data() + text.size() && v > 0.0) {
      tol.hermitian = v;
      tol.region = v;
    }
  }
  return tol;
}

struct Emitter {
  std::string path;
  std::ostream& fallback;

  void write(const std::string& text) const {
    if (path.empty()) {
      fallback << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::invalid_argument, "cannot write '" + path + "'");
    file << text;
  }
};

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") throw Error(ErrorKind::invalid_argument, "format must be json or csv");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement-assisted bit vs hyperbit laboratory", "hyperbit"};
  app.require_subcommand(1);

  Tolerances tol = default_tolerances();
  std::optional<double> tol_override;
  std::optional<double> match_override;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  app.add_option("--tol", tol_override, "Hermiticity / region tolerance (default $HYPERBIT_TOL or 1e-9)");
  app.add_option("--match-tol", match_override, "Quantum vs hyperbit agreement tolerance (default 1e-8)");

  auto* verify = app.add_subcommand("verify", "Compare quantum and hyperbit expectations on an instance file");
  std::string instance_path;
  std::string mode_text = "pw";
  verify->add_option("instance", instance_path, "Instance JSON")->required();
  verify->add_option("--mode", mode_text, "pw | fixed | z-aware");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of a post-processing strategy at a point");
  std::string point_text;
  std::string strategy_text = "pw";
  std::uint64_t samples = 1'000'000;
  std::string shared_bit = "alice";
  bool serial = false;
  simulate->add_option("--point", point_text, "x,y,z")->required();
  simulate->add_option("--strategy", strategy_text, "pw | k1,k2,k3,k4");
  simulate->add_option("--samples", samples, "Sample count");
  simulate->add_option("--shared-bit", shared_bit, "alice | independent");
  simulate->add_flag("--serial", serial, "Use the serial reference kernel");

  auto* scan = app.add_subcommand("scan", "Label a grid over [-1,1]^3 by region");
  std::string grid_text = "21,21,21";
  bool with_gap = false;
  std::uint64_t volume_samples = 1'000'000;
  scan->add_option("--grid", grid_text, "nx,ny,nz");
  scan->add_flag("--gap", with_gap, "Fill the gap column");
  scan->add_option("--volume-samples", volume_samples, "Monte Carlo samples for vol(D)/vol(C)");
  scan->add_flag("--serial", serial, "Use the serial reference kernels");

  auto* gap = app.add_subcommand("gap", "Minimax gap of the best fixed strategy at (x, y)");
  std::string gap_point;
  gap->add_option("--point", gap_point, "x,y")->required();

  auto* helix = app.add_subcommand("helix", "Sample the two boundary helices");
  std::size_t steps = 101;
  helix->add_option("--steps", steps, "Number of tau values per branch");

  auto* counter = app.add_subcommand("counterexample", "Search an (x, y) grid for the largest gap in C \\ D");
  std::string counter_grid = "101,201";
  std::string x_range = "0,1";
  std::string y_range = "-1,1";
  counter->add_option("--grid", counter_grid, "nx,ny");
  counter->add_option("--x-range", x_range, "xmin,xmax");
  counter->add_option("--y-range", y_range, "ymin,ymax");

  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");

  for (auto* sub : {verify, simulate, scan, gap, helix, counter}) {
    sub->add_option("--out,-o", out_path, "Output file (default stdout)");
    sub->add_option("--format", format, "json | csv");
  }
  for (auto* sub : {simulate, scan}) sub->add_option("--seed", seed, "RNG seed");

  std::vector<const char*> argv;
  argv.push_back("hyperbit");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hyperbit: " << e.what() << '\n';
    return kExitInputError;
  }

  if (tol_override) {
    tol.hermitian = *tol_override;
    tol.region = *tol_override;
  }
  if (match_override) tol.match = *match_override;
  const Emitter emit{out_path, out};

  try {
    if (*selftest) return run_selftest(out);

    if (*verify) {
      if (format.empty()) format = "json";
      check_format(format);
      const StrategyMode mode = parse_mode(mode_text);
      const BipartiteInstance inst = load_instance(instance_path, tol);
      const EquivalenceReport report = verify_equivalence(inst, mode, tol);
      if (format == "csv") {
        emit.write(metadata_comment(0, tol) + "\n" + equivalence_csv(report));
      } else {
        Json j;
        j["meta"] = metadata_json(0, tol);
        j["instance"] = instance_path;
        j["report"] = equivalence_to_json(report);
        emit.write(json_text(j));
      }
      return report.verdict ? kExitOk : kExitFailure;
    }

    if (*simulate) {
      if (format.empty()) format = "json";
      check_format(format);
      const auto p = parse_list(point_text, 3, "--point");
      const RegionPoint point{p[0], p[1], p[2]};
      SharedBitMode mode;
      if (shared_bit == "alice") {
        mode = SharedBitMode::alice_outcome;
      } else if (shared_bit == "independent") {
        mode = SharedBitMode::independent;
      } else {
        throw Error(ErrorKind::invalid_argument, "--shared-bit must be alice or independent");
      }
      std::optional<Strategy> strategy;
      std::optional<double> invalid_q;
      if (strategy_text == "pw") {
        double q = 0.5;
        if (1.0 - std::abs(point.y) > tol.region) {
          const FlipProbability fq = pw_q(point.x, point.y, tol);
          if (fq.valid) {
            q = std::clamp(fq.value, 0.0, 1.0);
          } else {
            invalid_q = fq.value;
          }
        }
        if (!invalid_q) strategy = PWStrategy::make(point.y, q, tol);
      } else {
        const auto k = parse_list(strategy_text, 4, "--strategy");
        strategy = StrategyWeights::make(k[0], k[1], k[2], k[3]);
      }
      if (invalid_q) {
        // The point lies outside D: report the flip probability instead of simulating.
        Json j;
        j["meta"] = metadata_json(seed, tol);
        j["point"] = {{"x", point.x}, {"y", point.y}, {"z", point.z}};
        j["strategy"] = "pw";
        j["error"] = "InvalidFlipProbability";
        j["q"] = *invalid_q;
        emit.write(json_text(j));
        return kExitFailure;
      }
      const SimulationReport report = simulate_protocol(point, *strategy, samples, seed, mode,
                                                        serial ? Exec::serial : Exec::parallel, tol);
      if (format == "csv") {
        emit.write(metadata_comment(seed, tol) + "\n" + simulation_csv_header() + "\n" +
                   simulation_csv_row(report) + "\n");
      } else {
        Json j;
        j["meta"] = metadata_json(seed, tol);
        j["report"] = simulation_to_json(report);
        emit.write(json_text(j));
      }
      return report.pass ? kExitOk : kExitFailure;
    }

    if (*scan) {
      if (format.empty()) format = "csv";
      check_format(format);
      const auto n = parse_counts(grid_text, 3, "--grid");
      ScanGrid grid;
      grid.nx = n[0];
      grid.ny = n[1];
      grid.nz = n[2];
      grid.with_gap = with_gap;
      grid.volume_samples = volume_samples;
      grid.seed = seed;
      const ScanResult result = scan_region(grid, serial ? Exec::serial : Exec::parallel, tol);
      if (format == "csv") {
        std::ostringstream os;
        os << metadata_comment(seed, tol) << '\n';
        write_scan_csv(os, result);
        emit.write(os.str());
      } else {
        Json j;
        j["meta"] = metadata_json(seed, tol);
        const ScanSummary& s = result.summary;
        j["summary"] = {{"inside_d", s.inside_d},         {"in_c_not_d", s.in_c_not_d},
                        {"outside_c", s.outside_c},       {"volume_fraction", s.volume_fraction},
                        {"volume_samples", s.volume_samples}};
        Json points = Json::array();
        for (const auto& r : result.records) {
          points.push_back({{"x", r.point.x},
                            {"y", r.point.y},
                            {"z", r.point.z},
                            {"t", r.t},
                            {"label", std::string(to_string(r.label))},
                            {"q", r.q ? Json(*r.q) : Json(nullptr)},
                            {"q_valid", r.q_valid},
                            {"gap", r.gap ? Json(*r.gap) : Json(nullptr)}});
        }
        j["points"] = std::move(points);
        emit.write(json_text(j));
      }
      return kExitOk;
    }

    if (*gap) {
      if (format.empty()) format = "json";
      check_format(format);
      const auto p = parse_list(gap_point, 2, "--point");
      if (std::hypot(p[0], p[1]) > 1.0 + tol.region) {
        throw Error(ErrorKind::invalid_argument, "gap requires x^2 + y^2 <= 1");
      }
      const GapReport report = minimax_gap(p[0], p[1], tol);
      if (format == "csv") {
        std::ostringstream os;
        os << metadata_comment(0, tol) << "\nx,y,z_lo,z_hi,worst_z,gap,k1,k2,k3,k4\n"
           << format_double(report.x) << ',' << format_double(report.y) << ','
           << format_double(report.admissible_z.lo) << ',' << format_double(report.admissible_z.hi) << ','
           << format_double(report.worst_z) << ',' << format_double(report.gap);
        for (int i = 1; i <= 4; ++i) os << ',' << format_double(report.best_weights.k(i));
        os << '\n';
        emit.write(os.str());
      } else {
        Json j;
        j["meta"] = metadata_json(0, tol);
        j["report"] = gap_to_json(report);
        emit.write(json_text(j));
      }
      return kExitOk;
    }

    if (*helix) {
      if (format.empty()) format = "csv";
      check_format(format);
      if (steps == 0) throw Error(ErrorKind::invalid_argument, "--steps must be positive");
      if (format == "csv") {
        std::ostringstream os;
        os << metadata_comment(0, tol) << '\n';
        write_helix_csv(os, steps);
        emit.write(os.str());
      } else {
        const double pi = std::acos(-1.0);
        Json j;
        j["meta"] = metadata_json(0, tol);
        Json points = Json::array();
        for (int branch : {+1, -1}) {
          for (std::size_t k = 0; k < steps; ++k) {
            const double tau = steps == 1 ? 0.0 : pi * static_cast<double>(k) / static_cast<double>(steps - 1);
            const RegionPoint p = helix_point(tau, branch);
            points.push_back({{"tau", tau}, {"branch", branch}, {"x", p.x}, {"y", p.y}, {"z", p.z},
                              {"t", target_t(p)}});
          }
        }
        j["points"] = std::move(points);
        emit.write(json_text(j));
      }
      return kExitOk;
    }

    if (*counter) {
      if (format.empty()) format = "json";
      if (format != "json") throw Error(ErrorKind::invalid_argument, "counterexample emits json only");
      const auto n = parse_counts(counter_grid, 2, "--grid");
      const auto xr = parse_list(x_range, 2, "--x-range");
      const auto yr = parse_list(y_range, 2, "--y-range");
      const GridSpec grid{xr[0], xr[1], n[0], yr[0], yr[1], n[1]};
      Json j;
      j["meta"] = metadata_json(0, tol);
      try {
        j["counterexample"] = counterexample_to_json(find_counterexample(grid, tol));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::not_found) throw;
        j["counterexample"] = nullptr;
        j["error"] = "NotFound";
        emit.write(json_text(j));
        return kExitFailure;
      }
      emit.write(json_text(j));
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "hyperbit: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace hyperbit::cli
