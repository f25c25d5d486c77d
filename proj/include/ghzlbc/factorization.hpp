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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ghzlbc/channels.hpp"
#include "ghzlbc/lbc.hpp"
#include "ghzlbc/state.hpp"

namespace ghzlbc {

enum class Scenario { AdSymmetricFewerChannels, AdAsymmetric, DepolarizingFewerChannels, DephasingAny, None };

std::string_view to_string(Scenario scenario);

struct FactorizationPrediction {
  Scenario scenario = Scenario::None;
  /// 2|alpha beta|.
  double initial_lbc = 0.0;
  /// |D(t)|, the product of per-channel coherence factors.
  double coherence_factor = 0.0;
  /// Q^P(t) per bipartition; only filled for the depolarizing scenario.
  std::vector<BipartitionTerm> q_products;
  /// Empty when the scenario admits no factorized law.
  std::optional<double> predicted_lbc;
};

enum class ConditionKind { First, Second, None };

std::string_view to_string(ConditionKind kind);

struct ViolatingPair {
  std::uint64_t pair_index = 0;
  double a = 0.0;
  double b = 0.0;
};

struct ConditionWitness {
  ConditionKind kind = ConditionKind::None;
  std::vector<ViolatingPair> violating_pairs;
  /// max_m' |sqrt(a_m' b_m') - |alpha beta| F_m'| with F_m' taken from a probe
  /// state of different amplitudes; unset when the first-kind check passed.
  std::optional<double> decomposition_residual;
};

inline constexpr double kFirstKindTolerance = 1e-12;
inline constexpr double kSecondKindTolerance = 1e-10;
/// |alpha'|^2 of the probe state used by the second-kind test.
inline constexpr double kProbeAlphaSquared = 0.3;

/// Product over channels of sqrt(1-p) (AD) or 1-p (D, PD).
double coherence_factor(const NoiseConfig& config, const std::vector<double>& probabilities);

ConditionWitness classify_conditions(const DensityMatrix& rho_evolved, const GhzSpec& spec,
                                     const NoiseConfig& config, const std::vector<double>& probabilities);

/// Structural scenario of a (spec, config) pair.
Scenario classify_scenario(const GhzSpec& spec, const NoiseConfig& config);

/// Throws UnsupportedScenario for AD on a symmetric state with M = N and for
/// depolarizing noise with M = N.
FactorizationPrediction predict_lbc(const GhzSpec& spec, const NoiseConfig& config,
                                    const std::vector<double>& probabilities);

struct GridPoint {
  double value = 0.0;
  std::vector<double> probabilities;
};

/// Every channel at the same probability p, for each p in `ps`.
std::vector<GridPoint> uniform_grid(const NoiseConfig& config, const std::vector<double>& ps);

struct VerifyOptions {
  SpectralOptions spectral;
  bool run_spectral = true;
  bool run_factorized = true;
};

struct VerificationRow {
  double value = 0.0;
  std::vector<double> probabilities;
  std::optional<double> closed_form;
  std::optional<double> spectral;
  std::optional<double> factorized;
  std::vector<BipartitionTerm> closed_form_terms;
  Scenario scenario = Scenario::None;
  std::optional<ConditionKind> condition;
  /// |closed_form - spectral| and |closed_form - factorized| where available.
  std::optional<double> spectral_deviation;
  std::optional<double> factorized_deviation;
  /// Largest pairwise deviation across the available routes.
  double max_deviation = 0.0;
  std::vector<std::string> errors;
};

struct VerificationReport {
  std::vector<VerificationRow> rows;
  double max_deviation = 0.0;
  double max_spectral_deviation = 0.0;
  double max_factorized_deviation = 0.0;
  std::map<std::string, int> condition_histogram;
};

/// Runs every computation route at each grid point. Errors are recorded per row.
VerificationReport verify(const GhzSpec& spec, const NoiseConfig& config, const std::vector<GridPoint>& grid,
                          const VerifyOptions& options = {});

}  // namespace ghzlbc
