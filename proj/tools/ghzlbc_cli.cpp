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

// Command-line front end: evolve, preset and verify subcommands.
//
// Exit codes: 0 success, 1 config error, 2 tolerance violation,
// 3 internal numerical failure.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ghzlbc/errors.hpp"
#include "ghzlbc/experiment.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 3;

int exit_code_for(const ghzlbc::Error& e) {
  switch (e.code()) {
    case ghzlbc::ErrorCode::NumericalFailure:
      return kExitNumerical;
    default:
      return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GHZ-state LBC dynamics under local noisy channels"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  auto* evolve_cmd = app.add_subcommand("evolve", "Sweep one configuration and write a CSV");
  evolve_cmd->add_option("--config", config_path, "JSON experiment config")->required();
  evolve_cmd->add_option("--out", out_path, "output CSV path")->required();

  std::string preset_name;
  int grid_size = 101;
  std::string outdir;
  auto* preset_cmd = app.add_subcommand("preset", "Reproduce a figure's curves as CSV files");
  preset_cmd->add_option("--name", preset_name, "fig1, fig2a, fig2b, fig2c or esd")->required();
  preset_cmd->add_option("--grid", grid_size, "number of uniform grid points in [0,1]")->check(CLI::Range(2, 100000));
  preset_cmd->add_option("--outdir", outdir, "output directory")->required();

  std::optional<double> tol;
  std::string golden_path;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check all LBC routes and write a JSON report");
  verify_cmd->add_option("--config", config_path, "JSON experiment config")->required();
  verify_cmd->add_option("--out", out_path, "output JSON path")->required();
  verify_cmd->add_option("--tol", tol, "override every route tolerance");
  verify_cmd->add_option("--golden", golden_path, "CSV from a previous evolve run to compare lbc_direct against");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*evolve_cmd) {
      const auto config = ghzlbc::load_config(config_path);
      const auto rows = ghzlbc::run_evolve(config);
      std::ostringstream csv;
      ghzlbc::write_sweep_csv(csv, config, rows);
      ghzlbc::write_text_file(out_path, csv.str());
      for (const auto& row : rows) {
        if (!row.error.empty()) return kExitNumerical;
      }
    } else if (*preset_cmd) {
      for (const auto& path : ghzlbc::run_preset(preset_name, grid_size, outdir)) {
        std::cout << path.string() << '\n';
      }
    } else if (*verify_cmd) {
      const auto config = ghzlbc::load_config(config_path);
      std::optional<ghzlbc::CsvTable> golden;
      if (!golden_path.empty()) golden = ghzlbc::read_csv(golden_path);
      const auto outcome = ghzlbc::run_verify(config, tol, golden);
      ghzlbc::write_text_file(out_path, outcome.report.dump(2) + "\n");
      if (outcome.exit_code != 0) {
        std::cerr << "verify: " << outcome.report["summary"]["violations"].get<int>()
                  << " tolerance violation(s)\n";
      }
      return outcome.exit_code;
    }
  } catch (const ghzlbc::Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
