// Copyright 2026 The ghzlbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ghzlbc/errors.hpp"
#include "ghzlbc/experiment.hpp"
#include "test_support.hpp"

using namespace ghzlbc;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using testing::code_of;

namespace fs = std::filesystem;

namespace {

const char* kBaseConfig = R"({
  "n_qubits": 3,
  "state": {"alpha_re": 0.7071067811865476, "beta_re": 0.7071067811865476, "pattern": "000"},
  "channels": [
    {"qubit": 1, "kind": "AD", "gamma": 1.0},
    {"qubit": 2, "kind": "AD", "gamma": 1.0}
  ],
  "grid": {"parameter": "p", "points": [0.0, 0.5, 1.0]},
  "methods": ["direct", "spectral", "factorized"]
})";

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ghzlbc_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string config_error_message(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigParseError);
    return e.what();
  }
  FAIL("config was accepted");
  return {};
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GHZLBC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("parse_config reads a valid configuration", "[experiment]") {
  const auto config = parse_config(kBaseConfig);
  CHECK(config.state.n_qubits() == 3);
  CHECK(config.noise.size() == 2);
  CHECK(config.parameter == GridParameter::Probability);
  CHECK(config.points == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(config.spectral);
  CHECK(config.factorized);
  CHECK(config.method_count() == 3);
  CHECK(config.probabilities_at(0.5) == std::vector<double>{0.5, 0.5});

  // The echo parses back to the same configuration.
  const auto again = parse_config(to_json(config).dump());
  CHECK(to_json(again) == to_json(config));
}

TEST_CASE("parse_config diagnostics name the offending field", "[experiment]") {
  CHECK_THAT(config_error_message(replace(kBaseConfig, R"("gamma": 1.0},
    {"qubit": 2)", R"("p": 1.2},
    {"qubit": 2)")),
             ContainsSubstring("channels[0].p"));
  CHECK_THAT(config_error_message(replace(kBaseConfig, R"("n_qubits": 3,)", R"("n_qubits": 3, "colour": 1,)")),
             ContainsSubstring("colour"));
  CHECK_THAT(config_error_message(replace(kBaseConfig, R"("pattern": "000"})", R"("pattern": "000",})")),
             ContainsSubstring("line 3"));
  CHECK_THAT(config_error_message(replace(replace(kBaseConfig, R"("parameter": "p")", R"("parameter": "t")"),
                                          R"("qubit": 1, "kind": "AD", "gamma": 1.0)",
                                          R"("qubit": 1, "kind": "AD", "p": 0.5)")),
             ContainsSubstring("gamma"));
  CHECK_THAT(config_error_message(replace(kBaseConfig, R"("pattern": "000")", R"("pattern": "0a0")")),
             ContainsSubstring("state"));
  CHECK_THAT(config_error_message(replace(kBaseConfig, "[0.0, 0.5, 1.0]", "[0.5, 0.0]")),
             ContainsSubstring("grid.points"));
  CHECK_THAT(config_error_message(replace(kBaseConfig, R"("spectral", "factorized")", R"("magic")")),
             ContainsSubstring("methods"));
}

TEST_CASE("time grids resolve probabilities per channel", "[experiment]") {
  auto text = replace(kBaseConfig, R"("parameter": "p")", R"("parameter": "t")");
  text = replace(text, R"("qubit": 2, "kind": "AD", "gamma": 1.0)", R"("qubit": 2, "kind": "AD", "gamma": 2.0)");
  const auto config = parse_config(text);
  const auto probs = config.probabilities_at(0.5);
  CHECK(probs[0] == Approx(1 - std::exp(-0.5)).margin(1e-15));
  CHECK(probs[1] == Approx(1 - std::exp(-1.0)).margin(1e-15));
}

TEST_CASE("run_evolve reproduces the symmetric AD law", "[experiment]") {
  const auto config = parse_config(kBaseConfig);
  const auto rows = run_evolve(config);
  REQUIRE(rows.size() == 3);
  const double expected[] = {1.0, 0.5, 0.0};
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(rows[i].lbc_direct.has_value());
    CHECK(*rows[i].lbc_direct == Approx(expected[i]).margin(1e-12));
    CHECK(*rows[i].lbc_spectral == Approx(expected[i]).margin(1e-8));
    CHECK(*rows[i].lbc_factorized == Approx(expected[i]).margin(1e-12));
    CHECK(rows[i].condition == "first");
    CHECK(rows[i].error.empty());
  }
}

TEST_CASE("a single zero grid point gives the initial concurrence", "[experiment]") {
  auto text = replace(kBaseConfig, "[0.0, 0.5, 1.0]", "[0.0]");
  text = replace(text, R"("alpha_re": 0.7071067811865476, "beta_re": 0.7071067811865476)",
                 R"("alpha_re": 0.6, "beta_re": 0.0, "beta_im": 0.8)");
  const auto rows = run_evolve(parse_config(text));
  REQUIRE(rows.size() == 1);
  CHECK(*rows[0].lbc_direct == Approx(2 * 0.6 * 0.8).margin(1e-12));
}

TEST_CASE("sweep CSV layout", "[experiment]") {
  auto config = parse_config(kBaseConfig);
  std::ostringstream out;
  write_sweep_csv(out, config, run_evolve(config));
  const std::string csv = out.str();
  CHECK(csv.substr(0, csv.find('\n')) == "p,lbc_direct,lbc_spectral,lbc_factorized,condition,max_deviation");
  CHECK(csv.find('\r') == std::string::npos);

  config.spectral = false;
  config.factorized = false;
  config.per_bipartition = true;
  std::ostringstream out2;
  write_sweep_csv(out2, config, run_evolve(config));
  std::istringstream in(out2.str());
  const auto table = parse_csv(in);
  CHECK(table.header == std::vector<std::string>{"p", "lbc_direct", "C[1|2.3]", "C[1.2|3]", "C[1.3|2]"});
  REQUIRE(table.rows.size() == 3);
  // The bipartition columns recombine into the total.
  for (const auto& row : table.rows) {
    double sum = 0.0;
    for (std::size_t c = 2; c < 5; ++c) sum += std::pow(std::stod(row[c]), 2);
    CHECK(std::sqrt(sum / 3.0) == Approx(std::stod(row[1])).margin(1e-15));
  }
  // Two identical runs serialize identically.
  std::ostringstream out3;
  write_sweep_csv(out3, config, run_evolve(config));
  CHECK(out3.str() == out2.str());
  CHECK(code_of([&] { table.column("missing"); }) == ErrorCode::IoError);
}

TEST_CASE("format_real round-trips doubles", "[experiment]") {
  for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, 0.6299605249474366, 1e-300}) {
    CHECK(std::stod(format_real(v)) == v);
  }
}

TEST_CASE("run_verify exit codes", "[experiment]") {
  SECTION("dephasing passes") {
    auto text = replace(kBaseConfig, R"("qubit": 1, "kind": "AD")", R"("qubit": 1, "kind": "PD")");
    text = replace(text, R"("qubit": 2, "kind": "AD")", R"("qubit": 2, "kind": "PD")");
    const auto outcome = run_verify(parse_config(text));
    CHECK(outcome.exit_code == 0);
    CHECK(outcome.report["artifact_version"] == kArtifactVersion);
    CHECK(outcome.report["summary"]["violations"] == 0);
    CHECK(outcome.report["rows"].size() == 3);
  }
  SECTION("matching golden passes, corrupted golden fails") {
    const auto config = parse_config(kBaseConfig);
    std::ostringstream out;
    write_sweep_csv(out, config, run_evolve(config));
    std::istringstream good_in(out.str());
    CHECK(run_verify(config, std::nullopt, parse_csv(good_in)).exit_code == 0);

    std::string corrupted = out.str();
    const auto pos = corrupted.find("\n0.5,") + 5;
    corrupted.replace(pos, 3, "0.6");
    std::istringstream bad_in(corrupted);
    const auto outcome = run_verify(config, std::nullopt, parse_csv(bad_in));
    CHECK(outcome.exit_code == 2);
    CHECK(outcome.report["summary"]["golden"]["passed"] == false);
  }
}

TEST_CASE("sudden death threshold", "[experiment]") {
  const auto noise = NoiseConfig::uniform(3, ChannelKind::AmplitudeDamping, {1, 2, 3});
  const auto threshold = sudden_death_threshold(GhzSpec(std::sqrt(0.2), std::sqrt(0.8), "000"), noise);
  REQUIRE(threshold.has_value());
  CHECK(*threshold == Approx(std::pow(0.5, 2.0 / 3.0)).margin(1e-9));
  CHECK_FALSE(sudden_death_threshold(GhzSpec(std::sqrt(0.5), std::sqrt(0.5), "000"), noise).has_value());
}

TEST_CASE("presets write the expected curves", "[experiment]") {
  const fs::path dir = scratch_dir("presets");
  SECTION("fig1 follows the power law") {
    const auto paths = run_preset("fig1", 21, dir);
    CHECK(paths.size() == 6);
    const auto table = read_csv(dir / "fig1.csv");
    CHECK(table.header == std::vector<std::string>{"p", "M1", "M2", "M3", "M4", "M5"});
    for (const auto& row : table.rows) {
      const double p = std::stod(row[0]);
      for (int m = 1; m <= 5; ++m) {
        CHECK(std::stod(row[static_cast<std::size_t>(m)]) == Approx(std::pow(1 - p, m / 2.0)).margin(1e-12));
      }
    }
  }
  SECTION("fig2b orders by N") {
    run_preset("fig2b", 21, dir);
    const auto table = read_csv(dir / "fig2b.csv");
    for (const auto& row : table.rows) {
      CHECK(std::stod(row[2]) >= std::stod(row[1]) - 1e-12);
      CHECK(std::stod(row[3]) >= std::stod(row[2]) - 1e-12);
    }
  }
  SECTION("esd reports the threshold") {
    run_preset("esd", 11, dir);
    const auto table = read_csv(dir / "esd_threshold.csv");
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0][1] == "false");
    CHECK(table.rows[1][1] == "true");
    CHECK(std::stod(table.rows[1][2]) == Approx(std::pow(0.5, 2.0 / 3.0)).margin(1e-9));
  }
  SECTION("unknown preset") {
    CHECK(code_of([&] { run_preset("fig9", 11, dir); }) == ErrorCode::UnknownPreset);
  }
  fs::remove_all(dir);
}

TEST_CASE("command-line exit codes", "[experiment][cli]") {
  const fs::path dir = scratch_dir("cli");
  const auto good = dir / "good.json";
  write_text_file(good, kBaseConfig);
  const auto bad = dir / "bad.json";
  write_text_file(bad, replace(kBaseConfig, R"("gamma": 1.0},
    {"qubit": 2)", R"("p": 1.2},
    {"qubit": 2)"));

  CHECK(run_cli("evolve --config " + good.string() + " --out " + (dir / "out.csv").string()) == 0);
  CHECK(read_csv(dir / "out.csv").rows.size() == 3);
  CHECK(run_cli("evolve --config " + bad.string() + " --out " + (dir / "bad.csv").string()) == 1);
  CHECK(run_cli("evolve --config " + (dir / "missing.json").string() + " --out x.csv") == 1);
  CHECK(run_cli("verify --config " + good.string() + " --out " + (dir / "report.json").string()) == 0);
  CHECK(run_cli("verify --config " + good.string() + " --out " + (dir / "report2.json").string() +
                " --tol 1e-30") == 2);
  CHECK(run_cli("preset --name fig2c --grid 5 --outdir " + (dir / "fig").string()) == 0);
  CHECK(fs::exists(dir / "fig" / "fig2c_N4.csv"));
  CHECK(run_cli("preset --name nope --outdir " + (dir / "fig").string()) == 1);
  CHECK(run_cli("frobnicate") == 1);
  fs::remove_all(dir);
}
