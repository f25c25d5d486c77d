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

#include <cmath>
#include <sstream>

#include "ghzlbc/errors.hpp"
#include "ghzlbc/experiment.hpp"

namespace ghzlbc {

namespace {

struct Curve {
  std::string label;
  ExperimentConfig config;
};

ExperimentConfig make_config(int n_qubits, double beta_squared, ChannelKind kind, int channels,
                             const std::vector<double>& points) {
  std::vector<int> qubits;
  for (int q = 1; q <= channels; ++q) qubits.push_back(q);
  ExperimentConfig config(
      GhzSpec(n_qubits, std::sqrt(1.0 - beta_squared), std::sqrt(beta_squared), std::string(n_qubits, '0')),
      NoiseConfig::uniform(n_qubits, kind, qubits));
  config.parameter = GridParameter::Probability;
  config.points = points;
  config.spectral = n_qubits <= 4;
  config.factorized = true;
  return config;
}

std::vector<Curve> preset_curves(const std::string& name, const std::vector<double>& points) {
  std::vector<Curve> curves;
  if (name == "fig1") {
    for (int m = 1; m <= 5; ++m) {
      curves.push_back({"M" + std::to_string(m), make_config(m + 1, 0.5, ChannelKind::AmplitudeDamping, m, points)});
    }
  } else if (name == "fig2a") {
    for (int m = 1; m <= 3; ++m) {
      curves.push_back({"M" + std::to_string(m), make_config(4, 0.5, ChannelKind::Depolarizing, m, points)});
    }
  } else if (name == "fig2b") {
    for (int n = 2; n <= 4; ++n) {
      curves.push_back({"N" + std::to_string(n), make_config(n, 0.5, ChannelKind::Depolarizing, 1, points)});
    }
  } else if (name == "fig2c") {
    for (int n = 3; n <= 4; ++n) {
      curves.push_back({"N" + std::to_string(n), make_config(n, 0.5, ChannelKind::Depolarizing, 2, points)});
    }
  } else if (name == "esd") {
    for (const char* beta_sq : {"0.5", "0.8"}) {
      curves.push_back({std::string("beta2_") + beta_sq,
                        make_config(3, std::stod(beta_sq), ChannelKind::AmplitudeDamping, 3, points)});
    }
  } else {
    throw Error(ErrorCode::UnknownPreset, "unknown preset '" + name + "' (fig1, fig2a, fig2b, fig2c, esd)");
  }
  return curves;
}

}  // namespace

std::vector<std::filesystem::path> run_preset(const std::string& name, int grid_size,
                                              const std::filesystem::path& outdir) {
  const std::vector<double> points = uniform_points(grid_size);
  const std::vector<Curve> curves = preset_curves(name, points);
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw Error(ErrorCode::IoError, outdir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  std::vector<std::vector<SweepRow>> results;
  for (const auto& curve : curves) {
    results.push_back(run_evolve(curve.config));
    std::ostringstream csv;
    write_sweep_csv(csv, curve.config, results.back());
    const auto path = outdir / (name + "_" + curve.label + ".csv");
    write_text_file(path, csv.str());
    written.push_back(path);
  }

  // Plot-ready table: column 1 = p, one direct-LBC column per curve.
  std::ostringstream combined;
  combined << "p";
  for (const auto& curve : curves) combined << ',' << curve.label;
  combined << '\n';
  for (std::size_t i = 0; i < points.size(); ++i) {
    combined << format_real(points[i]);
    for (const auto& rows : results) {
      combined << ',';
      if (rows[i].lbc_direct) combined << format_real(*rows[i].lbc_direct);
    }
    combined << '\n';
  }
  const auto combined_path = outdir / (name + ".csv");
  write_text_file(combined_path, combined.str());
  written.push_back(combined_path);

  if (name == "esd") {
    std::ostringstream thresholds;
    thresholds << "beta_squared,sudden_death,p_star\n";
    for (const auto& curve : curves) {
      const auto threshold = sudden_death_threshold(curve.config.state, curve.config.noise);
      thresholds << format_real(std::norm(curve.config.state.beta())) << ',' << (threshold ? "true" : "false")
                 << ',' << (threshold ? format_real(*threshold) : "") << '\n';
    }
    const auto path = outdir / "esd_threshold.csv";
    write_text_file(path, thresholds.str());
    written.push_back(path);
  }
  return written;
}

}  // namespace ghzlbc
