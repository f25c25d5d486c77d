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

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "ghzlbc/state.hpp"

namespace ghzlbc {

enum class ChannelKind { AmplitudeDamping, Depolarizing, Dephasing };

/// "AD", "D" or "PD".
std::string_view to_string(ChannelKind kind);
std::optional<ChannelKind> parse_channel_kind(std::string_view text);

/// Fixed channel probability.
struct Probability {
  double value = 0.0;
};

/// Decay rate Gamma; the probability is 1 - exp(-Gamma t).
struct DecayRate {
  double value = 0.0;
};

struct ChannelSpec {
  ChannelKind kind = ChannelKind::AmplitudeDamping;
  std::variant<Probability, DecayRate> parameter = Probability{};

  /// Throws ProbabilityOutOfRange / NegativeInput on a bad parameter.
  void validate() const;
};

struct ChannelAssignment {
  int qubit = 1;
  ChannelSpec channel;
};

/// Local channels on distinct qubits of an N-qubit register.
class NoiseConfig {
 public:
  NoiseConfig(int n_qubits, std::vector<ChannelAssignment> assignments);

  /// One channel of `kind` on each listed qubit, each with unit decay rate.
  static NoiseConfig uniform(int n_qubits, ChannelKind kind, std::vector<int> qubits);

  int n_qubits() const { return n_qubits_; }
  /// Number of channels, M.
  int size() const { return static_cast<int>(assignments_.size()); }
  const std::vector<ChannelAssignment>& assignments() const { return assignments_; }
  bool is_homogeneous(ChannelKind kind) const;
  bool acts_on(int qubit) const;

 private:
  int n_qubits_;
  std::vector<ChannelAssignment> assignments_;
};

struct KrausSet {
  std::vector<Matrix2c> operators;

  /// max |sum_k K_k^dagger K_k - I|.
  double completeness_deviation() const;
};

/// Evaluate every channel at the shared time t (each needs a decay rate,
/// or keeps its fixed probability).
struct SharedTime {
  double t = 0.0;
};

/// Either one probability per assignment, or a shared time.
using EvolutionParams = std::variant<std::vector<double>, SharedTime>;

double p_of_t(double gamma, double t);

KrausSet kraus_ops(ChannelKind kind, double p);

/// Applies a single-qubit channel to `qubit` (1-based) by index arithmetic.
DensityMatrix apply_local(const DensityMatrix& rho, int qubit, ChannelKind kind, double p);

/// Per-assignment probabilities, in assignment order.
std::vector<double> resolve_probabilities(const NoiseConfig& config, const EvolutionParams& params);

DensityMatrix evolve(const DensityMatrix& rho0, const NoiseConfig& config, const EvolutionParams& params);

/// Multiplicative factor one channel applies to a coherence between opposite
/// bit values of its qubit: sqrt(1-p) for AD, 1-p for D and PD.
double coherence_decay(ChannelKind kind, double p);

}  // namespace ghzlbc
