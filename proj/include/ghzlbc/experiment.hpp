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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghzlbc/channels.hpp"
#include "ghzlbc/factorization.hpp"
#include "ghzlbc/state.hpp"

namespace ghzlbc {

inline constexpr const char* kArtifactVersion = "1.0.0";

enum class GridParameter { Probability, Time };

struct Tolerances {
  /// closed form vs spectral oracle
  double spectral = 1e-8;
  /// closed form vs factorized law
  double factorized = 1e-10;
};

/// One experiment: initial state, channels, sweep grid and requested routes.
struct ExperimentConfig {
  ExperimentConfig(GhzSpec state_spec, NoiseConfig noise_config)
      : state(std::move(state_spec)), noise(std::move(noise_config)) {}

  GhzSpec state;
  NoiseConfig noise;
  GridParameter parameter = GridParameter::Probability;
  std::vector<double> points;
  bool spectral = false;
  bool factorized = false;
  bool per_bipartition = false;
  Tolerances tolerances;

  /// Channel probabilities at one grid value. Channels with a fixed "p" keep
  /// it; channels with "gamma" take the grid p, or 1 - exp(-gamma t).
  std::vector<double> probabilities_at(double value) const;
  std::vector<GridPoint> grid() const;
  int method_count() const { return 1 + int{spectral} + int{factorized}; }
};

/// Throws ConfigParseError with a line or field path in the message.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const ExperimentConfig& config);

struct SweepRow {
  double value = 0.0;
  std::optional<double> lbc_direct;
  std::optional<double> lbc_spectral;
  std::optional<double> lbc_factorized;
  std::string condition;
  double max_deviation = 0.0;
  std::vector<BipartitionTerm> per_bipartition;
  std::string error;
};

std::vector<SweepRow> run_evolve(const ExperimentConfig& config);

/// Shortest-round-trip-safe formatting with 17 significant digits.
std::string format_real(double value);

void write_sweep_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<SweepRow>& rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column position by header name; throws IoError when absent.
  std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

struct VerifyOutcome {
  nlohmann::ordered_json report;
  int exit_code = 0;
};

/// `tol_override` replaces both route tolerances. When `golden` is given its
/// lbc_direct column must match the sweep within the factorized tolerance.
VerifyOutcome run_verify(const ExperimentConfig& config, std::optional<double> tol_override = std::nullopt,
                         const std::optional<CsvTable>& golden = std::nullopt);

/// Smallest common probability at which the closed-form LBC vanishes, found by
/// bisection; empty when the LBC stays positive up to p = 1 - 1e-6.
std::optional<double> sudden_death_threshold(const GhzSpec& spec, const NoiseConfig& config);

/// Writes the preset's CSV files into `outdir` and returns their paths.
std::vector<std::filesystem::path> run_preset(const std::string& name, int grid_size,
                                              const std::filesystem::path& outdir);

std::vector<double> uniform_points(int grid_size);

/// Writes text with LF line endings; throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ghzlbc
