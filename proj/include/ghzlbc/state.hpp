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

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ghzlbc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Matrix2c = Eigen::Matrix2cd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kStructureTolerance = 1e-10;

/// Basis index of qubit `qubit` (1-based): qubit 1 is the most significant bit.
inline std::uint64_t qubit_mask(int n_qubits, int qubit) {
  return std::uint64_t{1} << (n_qubits - qubit);
}

inline std::uint64_t all_ones(int n_qubits) {
  return (std::uint64_t{1} << n_qubits) - 1;
}

/// Initial state alpha|i_1..i_N> + beta|~i_1..~i_N>.
class GhzSpec {
 public:
  /// Validates the amplitudes and the bit pattern (qubit 1 = leftmost bit).
  GhzSpec(Complex alpha, Complex beta, std::string pattern);
  /// Same, and checks the pattern length against an explicit qubit count.
  GhzSpec(int n_qubits, Complex alpha, Complex beta, std::string pattern);

  int n_qubits() const { return static_cast<int>(pattern_.size()); }
  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  const std::string& pattern() const { return pattern_; }

  /// Integer index of the pattern ket.
  std::uint64_t index() const;
  /// Index of the bitwise complement ket.
  std::uint64_t complement_index() const { return index() ^ all_ones(n_qubits()); }
  /// All bits equal, e.g. "000" or "1111".
  bool is_symmetric() const;
  /// |alpha beta|, the magnitude of the initial coherence.
  double coherence_magnitude() const { return std::abs(alpha_ * beta_); }

 private:
  Complex alpha_;
  Complex beta_;
  std::string pattern_;
};

/// Dense 2^N x 2^N density operator. Row/column index = sum_j b_j 2^(N-j).
class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, ComplexMatrix entries);

  static DensityMatrix zero(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const ComplexMatrix& entries() const { return entries_; }
  Complex operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

 private:
  int n_qubits_;
  ComplexMatrix entries_;
};

/// The a/b/d labelling of an X-structured evolved GHZ state.
///
/// a[k-1] sits at diagonal index k-1 and b[k-1] at 2^N - k, so each (a_k, b_k)
/// pair occupies bit-complementary basis states. `m` addresses the pair
/// holding the initial GHZ populations and `d` is the coherence
/// rho[min(x, ~x)][max(x, ~x)].
struct XStateView {
  int n_qubits = 0;
  std::uint64_t m = 0;
  std::vector<double> a;
  std::vector<double> b;
  Complex d{};
};

struct ValidationReport {
  double hermiticity_deviation = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;
  bool passed = false;
};

DensityMatrix ghz_density(const GhzSpec& spec);

/// Throws NotXStructured if any coherence other than (x, ~x) exceeds 1e-10.
XStateView xstate_view(const DensityMatrix& rho, const GhzSpec& spec);

/// Inverse of xstate_view.
DensityMatrix from_xstate_view(const XStateView& view);

/// Partial trace over every qubit except `qubit` (1-based).
Matrix2c reduced_state(const DensityMatrix& rho, int qubit);

ValidationReport validate_density(const DensityMatrix& rho, double tol);

}  // namespace ghzlbc
