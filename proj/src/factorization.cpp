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

#include "ghzlbc/factorization.hpp"

#include <algorithm>
#include <cmath>

#include "ghzlbc/errors.hpp"

namespace ghzlbc {

namespace {

void check_count(const NoiseConfig& config, const std::vector<double>& probabilities) {
  if (static_cast<int>(probabilities.size()) != config.size()) {
    throw Error(ErrorCode::ConfigMismatch, "got " + std::to_string(probabilities.size()) +
                                               " probabilities for " + std::to_string(config.size()) +
                                               " channels");
  }
}

XStateView evolved_view(const GhzSpec& spec, const NoiseConfig& config, const std::vector<double>& probabilities) {
  return xstate_view(evolve(ghz_density(spec), config, probabilities), spec);
}

/// Q^P for depolarizing channels on a strict subset of the qubits.
double depolarizing_q(const Bipartition& part, const NoiseConfig& config,
                      const std::vector<double>& probabilities, double coherence) {
  const auto& block = part.block();
  auto in_block = [&](int q) { return std::binary_search(block.begin(), block.end(), q); };
  bool idle_in_block = false;
  bool idle_in_complement = false;
  for (int q = 1; q <= part.n_qubits(); ++q) {
    if (config.acts_on(q)) continue;
    (in_block(q) ? idle_in_block : idle_in_complement) = true;
  }
  // Idle qubits on both sides: the derived pair is never populated.
  if (idle_in_block && idle_in_complement) return coherence;

  // Flip set T: the block free of idle qubits (it holds only channel qubits).
  const bool flip_block = !idle_in_block;
  double f = 1.0;
  for (std::size_t i = 0; i < config.assignments().size(); ++i) {
    const int q = config.assignments()[i].qubit;
    const double p = probabilities[i];
    const bool flipped = in_block(q) == flip_block;
    f *= flipped ? p / 2.0 : 1.0 - p / 2.0;
  }
  return std::max(0.0, coherence - f);
}

}  // namespace

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::AdSymmetricFewerChannels: return "AD_symmetric_MltN";
    case Scenario::AdAsymmetric: return "AD_asymmetric";
    case Scenario::DepolarizingFewerChannels: return "D_MltN";
    case Scenario::DephasingAny: return "PD_any";
    case Scenario::None: return "none";
  }
  return "?";
}

std::string_view to_string(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::First: return "first";
    case ConditionKind::Second: return "second";
    case ConditionKind::None: return "none";
  }
  return "?";
}

double coherence_factor(const NoiseConfig& config, const std::vector<double>& probabilities) {
  check_count(config, probabilities);
  double factor = 1.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    factor *= coherence_decay(config.assignments()[i].channel.kind, probabilities[i]);
  }
  return factor;
}

ConditionWitness classify_conditions(const DensityMatrix& rho_evolved, const GhzSpec& spec,
                                     const NoiseConfig& config, const std::vector<double>& probabilities) {
  const XStateView view = xstate_view(rho_evolved, spec);
  const std::size_t own = static_cast<std::size_t>(view.m - 1);

  ConditionWitness witness;
  for (std::size_t k = 0; k < view.a.size(); ++k) {
    if (k == own) continue;
    // Compared on sqrt(ab) so a first-kind verdict also bounds the pair-term error.
    if (std::sqrt(std::max(0.0, view.a[k] * view.b[k])) > kFirstKindTolerance) {
      witness.violating_pairs.push_back({k + 1, view.a[k], view.b[k]});
    }
  }
  if (witness.violating_pairs.empty()) {
    witness.kind = ConditionKind::First;
    return witness;
  }

  const double coherence = spec.coherence_magnitude();
  if (coherence < 1e-14) {
    throw Error(ErrorCode::DegenerateState, "|alpha beta| vanishes; second-kind test undefined");
  }
  double probe_alpha_sq = kProbeAlphaSquared;
  if (std::abs(std::sqrt(probe_alpha_sq * (1.0 - probe_alpha_sq)) - coherence) < 1e-6) {
    probe_alpha_sq = kProbeAlphaSquared / 2.0;
  }
  const GhzSpec probe(std::sqrt(probe_alpha_sq), std::sqrt(1.0 - probe_alpha_sq), spec.pattern());
  const XStateView probe_view = evolved_view(probe, config, probabilities);
  const double probe_coherence = probe.coherence_magnitude();

  double residual = 0.0;
  for (std::size_t k = 0; k < view.a.size(); ++k) {
    if (k == own) continue;
    const double root = std::sqrt(std::max(0.0, view.a[k] * view.b[k]));
    const double f = std::sqrt(std::max(0.0, probe_view.a[k] * probe_view.b[k])) / probe_coherence;
    residual = std::max(residual, std::abs(root - coherence * f));
  }
  witness.decomposition_residual = residual;
  witness.kind = residual < kSecondKindTolerance ? ConditionKind::Second : ConditionKind::None;
  return witness;
}

Scenario classify_scenario(const GhzSpec& spec, const NoiseConfig& config) {
  const bool fewer = config.size() < config.n_qubits();
  if (config.is_homogeneous(ChannelKind::AmplitudeDamping)) {
    if (!spec.is_symmetric()) return Scenario::AdAsymmetric;
    return fewer ? Scenario::AdSymmetricFewerChannels : Scenario::None;
  }
  if (config.is_homogeneous(ChannelKind::Depolarizing)) {
    return fewer ? Scenario::DepolarizingFewerChannels : Scenario::None;
  }
  if (config.is_homogeneous(ChannelKind::Dephasing)) return Scenario::DephasingAny;
  return Scenario::None;
}

FactorizationPrediction predict_lbc(const GhzSpec& spec, const NoiseConfig& config,
                                    const std::vector<double>& probabilities) {
  if (spec.n_qubits() != config.n_qubits()) {
    throw Error(ErrorCode::ConfigMismatch, "GHZ spec and noise config disagree on N");
  }
  FactorizationPrediction out;
  out.scenario = classify_scenario(spec, config);
  out.initial_lbc = 2.0 * spec.coherence_magnitude();
  out.coherence_factor = std::abs(coherence_factor(config, probabilities));

  const bool all_channels = config.size() == config.n_qubits();
  if (all_channels && ((config.is_homogeneous(ChannelKind::AmplitudeDamping) && spec.is_symmetric()) ||
                       config.is_homogeneous(ChannelKind::Depolarizing))) {
    throw Error(ErrorCode::UnsupportedScenario,
                "no factorized law for " + std::string(to_string(config.assignments().front().channel.kind)) +
                    " channels on every qubit of this state");
  }

  switch (out.scenario) {
    case Scenario::AdSymmetricFewerChannels:
    case Scenario::AdAsymmetric:
    case Scenario::DephasingAny:
      out.predicted_lbc = out.initial_lbc * out.coherence_factor;
      break;
    case Scenario::DepolarizingFewerChannels: {
      for (const auto& part : bipartitions(config.n_qubits())) {
        out.q_products.push_back({part, depolarizing_q(part, config, probabilities, out.coherence_factor)});
      }
      out.predicted_lbc = out.initial_lbc * total_from_terms(config.n_qubits(), out.q_products);
      break;
    }
    case Scenario::None:
      break;
  }
  return out;
}

std::vector<GridPoint> uniform_grid(const NoiseConfig& config, const std::vector<double>& ps) {
  std::vector<GridPoint> grid;
  grid.reserve(ps.size());
  for (double p : ps) {
    grid.push_back({p, std::vector<double>(static_cast<std::size_t>(config.size()), p)});
  }
  return grid;
}

VerificationReport verify(const GhzSpec& spec, const NoiseConfig& config, const std::vector<GridPoint>& grid,
                          const VerifyOptions& options) {
  VerificationReport report;
  const DensityMatrix rho0 = ghz_density(spec);
  for (const auto& point : grid) {
    VerificationRow row;
    row.value = point.value;
    row.probabilities = point.probabilities;
    row.scenario = classify_scenario(spec, config);
    try {
      const DensityMatrix rho = evolve(rho0, config, point.probabilities);
      const LbcReport closed = lbc_closed_form(xstate_view(rho, spec));
      row.closed_form = closed.total;
      row.closed_form_terms = closed.per_bipartition;

      if (options.run_spectral && spec.n_qubits() <= options.spectral.qubit_cap) {
        try {
          row.spectral = lbc_spectral(rho, options.spectral).total;
        } catch (const Error& e) {
          row.errors.emplace_back(e.what());
        }
      }
      if (options.run_factorized) {
        try {
          const auto prediction = predict_lbc(spec, config, point.probabilities);
          row.factorized = prediction.predicted_lbc;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::UnsupportedScenario) row.errors.emplace_back(e.what());
        }
      }
      try {
        row.condition = classify_conditions(rho, spec, config, point.probabilities).kind;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateState) row.errors.emplace_back(e.what());
      }
    } catch (const Error& e) {
      row.errors.emplace_back(e.what());
    }

    if (row.closed_form && row.spectral) row.spectral_deviation = std::abs(*row.closed_form - *row.spectral);
    if (row.closed_form && row.factorized) {
      row.factorized_deviation = std::abs(*row.closed_form - *row.factorized);
    }
    std::vector<double> values;
    for (const auto& v : {row.closed_form, row.spectral, row.factorized}) {
      if (v) values.push_back(*v);
    }
    for (std::size_t i = 0; i < values.size(); ++i)
      for (std::size_t j = i + 1; j < values.size(); ++j)
        row.max_deviation = std::max(row.max_deviation, std::abs(values[i] - values[j]));

    report.max_deviation = std::max(report.max_deviation, row.max_deviation);
    report.max_spectral_deviation = std::max(report.max_spectral_deviation, row.spectral_deviation.value_or(0.0));
    report.max_factorized_deviation =
        std::max(report.max_factorized_deviation, row.factorized_deviation.value_or(0.0));
    ++report.condition_histogram[row.condition ? std::string(to_string(*row.condition)) : "unknown"];
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace ghzlbc
