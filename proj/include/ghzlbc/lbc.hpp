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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghzlbc/state.hpp"

namespace ghzlbc {

/// Unordered split S | complement of the qubits 1..N. The stored block always
/// contains qubit 1.
class Bipartition {
 public:
  Bipartition(int n_qubits, std::vector<int> block);

  int n_qubits() const { return n_qubits_; }
  const std::vector<int>& block() const { return block_; }
  std::vector<int> complement() const;
  /// Basis-index bits owned by the block.
  std::uint64_t mask() const;
  /// e.g. "1.3|2" for S = {1,3}.
  std::string label() const;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  int n_qubits_;
  std::vector<int> block_;
};

/// All 2^(n-1) - 1 bipartitions, lexicographic by block.
std::vector<Bipartition> bipartitions(int n_qubits);

/// Real antisymmetric generators of SO(d), one per index pair i < j.
struct SoGeneratorSet {
  int dimension = 0;
  std::vector<std::pair<int, int>> index_pairs;
  std::vector<Eigen::MatrixXd> generators;
};

SoGeneratorSet so_generators(int dimension);

enum class LbcMethod { Spectral, ClosedForm, Factorized };

std::string_view to_string(LbcMethod method);

struct BipartitionTerm {
  Bipartition bipartition;
  double concurrence = 0.0;
};

/// One nonzero C_{l1 l2} value for a bipartition.
struct GeneratorTerm {
  std::size_t bipartition_index = 0;
  int l1 = 0;
  int l2 = 0;
  double value = 0.0;
};

struct LbcReport {
  double total = 0.0;
  std::vector<BipartitionTerm> per_bipartition;
  std::vector<GeneratorTerm> per_generator_terms;
  LbcMethod method = LbcMethod::ClosedForm;
};

/// sqrt( sum_P (C^P)^2 / (2^(N-1) - 1) ).
double total_from_terms(int n_qubits, const std::vector<BipartitionTerm>& terms);

struct SpectralOptions {
  int qubit_cap = 6;
  /// Nonzero C_{l1 l2} below this are not recorded in per_generator_terms.
  double term_threshold = 1e-14;
};

/// Brute-force LBC: every bipartition, every SO generator pair, full SVD.
LbcReport lbc_spectral(const DensityMatrix& rho, const SpectralOptions& options = {});

/// Hermitian square root of a density matrix; eigenvalues in [-1e-10, 0) are
/// clamped to zero, anything more negative is a NumericalFailure.
ComplexMatrix density_sqrt(const DensityMatrix& rho);

/// C_{l1 l2} for explicit block operators. `block_op` acts on the qubits of
/// the bipartition's block in ascending order, `complement_op` on the rest.
double generator_pair_concurrence(const ComplexMatrix& sqrt_rho, const Bipartition& partition,
                                  const Eigen::MatrixXd& block_op,
                                  const Eigen::MatrixXd& complement_op);

/// Pair index m' (1-based) of the derived diagonal pair {x ^ mask(S), ~(x ^ mask(S))}.
std::uint64_t xstate_pair_index(const Bipartition& partition, std::uint64_t x);

/// C^P = 2 max{0, |d| - sqrt(a_m' b_m')} for every bipartition.
LbcReport lbc_closed_form(const XStateView& view);

}  // namespace ghzlbc
