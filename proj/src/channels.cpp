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

#include "ghzlbc/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghzlbc/errors.hpp"

namespace ghzlbc {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::ProbabilityOutOfRange, "probability " + std::to_string(p) + " not in [0,1]");
  }
}

void check_qubit(int n_qubits, int qubit) {
  if (qubit < 1 || qubit > n_qubits) {
    throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(qubit) + " not in 1.." +
                                                std::to_string(n_qubits));
  }
}

}  // namespace

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::AmplitudeDamping: return "AD";
    case ChannelKind::Depolarizing: return "D";
    case ChannelKind::Dephasing: return "PD";
  }
  return "?";
}

std::optional<ChannelKind> parse_channel_kind(std::string_view text) {
  if (text == "AD") return ChannelKind::AmplitudeDamping;
  if (text == "D") return ChannelKind::Depolarizing;
  if (text == "PD") return ChannelKind::Dephasing;
  return std::nullopt;
}

void ChannelSpec::validate() const {
  if (const auto* p = std::get_if<Probability>(&parameter)) {
    check_probability(p->value);
  } else if (const auto* g = std::get_if<DecayRate>(&parameter)) {
    if (!(g->value >= 0.0) || !std::isfinite(g->value)) {
      throw Error(ErrorCode::NegativeInput, "decay rate must be finite and >= 0");
    }
  }
}

NoiseConfig::NoiseConfig(int n_qubits, std::vector<ChannelAssignment> assignments)
    : n_qubits_(n_qubits), assignments_(std::move(assignments)) {
  if (n_qubits < 1) throw Error(ErrorCode::TooFewQubits, "noise config needs at least one qubit");
  if (assignments_.empty() || static_cast<int>(assignments_.size()) > n_qubits) {
    throw Error(ErrorCode::ConfigMismatch, "need 1 <= M <= N channels, got M=" +
                                               std::to_string(assignments_.size()));
  }
  std::vector<int> seen;
  for (const auto& a : assignments_) {
    check_qubit(n_qubits, a.qubit);
    if (std::find(seen.begin(), seen.end(), a.qubit) != seen.end()) {
      throw Error(ErrorCode::ConfigMismatch, "two channels on qubit " + std::to_string(a.qubit));
    }
    seen.push_back(a.qubit);
    a.channel.validate();
  }
}

NoiseConfig NoiseConfig::uniform(int n_qubits, ChannelKind kind, std::vector<int> qubits) {
  std::vector<ChannelAssignment> assignments;
  for (int q : qubits) assignments.push_back({q, ChannelSpec{kind, DecayRate{1.0}}});
  return NoiseConfig(n_qubits, std::move(assignments));
}

bool NoiseConfig::is_homogeneous(ChannelKind kind) const {
  return std::all_of(assignments_.begin(), assignments_.end(),
                     [kind](const ChannelAssignment& a) { return a.channel.kind == kind; });
}

bool NoiseConfig::acts_on(int qubit) const {
  return std::any_of(assignments_.begin(), assignments_.end(),
                     [qubit](const ChannelAssignment& a) { return a.qubit == qubit; });
}

double KrausSet::completeness_deviation() const {
  Matrix2c sum = Matrix2c::Zero();
  for (const auto& k : operators) sum += k.adjoint() * k;
  return (sum - Matrix2c::Identity()).cwiseAbs().maxCoeff();
}

double p_of_t(double gamma, double t) {
  if (gamma < 0.0 || t < 0.0) {
    throw Error(ErrorCode::NegativeInput, "p_of_t needs gamma >= 0 and t >= 0");
  }
  return -std::expm1(-gamma * t);
}

KrausSet kraus_ops(ChannelKind kind, double p) {
  check_probability(p);
  const Complex i{0.0, 1.0};
  Matrix2c identity = Matrix2c::Identity();
  Matrix2c pauli_x, pauli_y, pauli_z;
  pauli_x << 0, 1, 1, 0;
  pauli_y << 0, -i, i, 0;
  pauli_z << 1, 0, 0, -1;

  KrausSet set;
  switch (kind) {
    case ChannelKind::AmplitudeDamping: {
      Matrix2c k0, k1;
      k0 << 1, 0, 0, std::sqrt(1.0 - p);
      k1 << 0, std::sqrt(p), 0, 0;
      set.operators = {k0, k1};
      break;
    }
    case ChannelKind::Depolarizing: {
      const double w = std::sqrt(p / 4.0);
      set.operators = {std::sqrt(1.0 - 3.0 * p / 4.0) * identity, w * pauli_x, w * pauli_y,
                       w * pauli_z};
      break;
    }
    case ChannelKind::Dephasing:
      set.operators = {std::sqrt(1.0 - p / 2.0) * identity, std::sqrt(p / 2.0) * pauli_z};
      break;
  }
  return set;
}

DensityMatrix apply_local(const DensityMatrix& rho, int qubit, ChannelKind kind, double p) {
  const int n = rho.n_qubits();
  check_qubit(n, qubit);
  const KrausSet kraus = kraus_ops(kind, p);

  const std::uint64_t bit = qubit_mask(n, qubit);
  const auto dim = static_cast<std::uint64_t>(rho.dim());
  const ComplexMatrix& in = rho.entries();
  ComplexMatrix out(in.rows(), in.cols());

  // Each (row-env, col-env) pair with the target bit cleared owns a 2x2 block.
  for (std::uint64_t r0 = 0; r0 < dim; ++r0) {
    if (r0 & bit) continue;
    const std::uint64_t rows[2] = {r0, r0 | bit};
    for (std::uint64_t c0 = 0; c0 < dim; ++c0) {
      if (c0 & bit) continue;
      const std::uint64_t cols[2] = {c0, c0 | bit};
      Matrix2c block;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          block(a, b) = in(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(cols[b]));
      Matrix2c mapped = Matrix2c::Zero();
      for (const auto& k : kraus.operators) mapped.noalias() += k * block * k.adjoint();
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          out(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(cols[b])) = mapped(a, b);
    }
  }
  return DensityMatrix(n, std::move(out));
}

std::vector<double> resolve_probabilities(const NoiseConfig& config, const EvolutionParams& params) {
  if (const auto* probs = std::get_if<std::vector<double>>(&params)) {
    if (static_cast<int>(probs->size()) != config.size()) {
      throw Error(ErrorCode::ConfigMismatch, "got " + std::to_string(probs->size()) +
                                                 " probabilities for " + std::to_string(config.size()) +
                                                 " channels");
    }
    for (double p : *probs) check_probability(p);
    return *probs;
  }
  const double t = std::get<SharedTime>(params).t;
  std::vector<double> out;
  out.reserve(config.assignments().size());
  for (const auto& a : config.assignments()) {
    if (const auto* g = std::get_if<DecayRate>(&a.channel.parameter)) {
      out.push_back(p_of_t(g->value, t));
    } else {
      out.push_back(std::get<Probability>(a.channel.parameter).value);
    }
  }
  return out;
}

DensityMatrix evolve(const DensityMatrix& rho0, const NoiseConfig& config, const EvolutionParams& params) {
  if (rho0.n_qubits() != config.n_qubits()) {
    throw Error(ErrorCode::ConfigMismatch, "state and noise config disagree on N");
  }
  const std::vector<double> probs = resolve_probabilities(config, params);
  DensityMatrix rho = rho0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const auto& a = config.assignments()[i];
    rho = apply_local(rho, a.qubit, a.channel.kind, probs[i]);
  }
  return rho;
}

double coherence_decay(ChannelKind kind, double p) {
  check_probability(p);
  return kind == ChannelKind::AmplitudeDamping ? std::sqrt(1.0 - p) : 1.0 - p;
}

}  // namespace ghzlbc
