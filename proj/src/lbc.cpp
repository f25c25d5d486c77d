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

#include "ghzlbc/lbc.hpp"

#include <algorithm>
#include <cmath>

#include "ghzlbc/errors.hpp"

namespace ghzlbc {

namespace {

constexpr double kNegativeEigenvalueSlack = 1e-10;

struct SparseEntry {
  int row;
  int col;
  double value;
};

std::vector<SparseEntry> nonzeros(const Eigen::MatrixXd& m) {
  std::vector<SparseEntry> out;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != 0.0) out.push_back({static_cast<int>(r), static_cast<int>(c), m(r, c)});
  return out;
}

/// Global basis index for every local index of an ordered qubit list; the
/// first listed qubit is the most significant local bit.
std::vector<std::uint64_t> local_to_global(int n_qubits, const std::vector<int>& qubits) {
  const std::size_t k = qubits.size();
  std::vector<std::uint64_t> table(std::size_t{1} << k, 0);
  for (std::size_t local = 0; local < table.size(); ++local) {
    std::uint64_t g = 0;
    for (std::size_t pos = 0; pos < k; ++pos) {
      if ((local >> (k - 1 - pos)) & 1U) g |= qubit_mask(n_qubits, qubits[pos]);
    }
    table[local] = g;
  }
  return table;
}

/// Qubit reordering (block first, then complement) expressed as index maps, so
/// M = L_block (x) L_complement is laid out directly in the original basis.
struct ReorderedLayout {
  std::vector<std::uint64_t> block_index;
  std::vector<std::uint64_t> complement_index;
};

ReorderedLayout layout_for(const Bipartition& partition) {
  return {local_to_global(partition.n_qubits(), partition.block()),
          local_to_global(partition.n_qubits(), partition.complement())};
}

/// max{0, s_1 - sum_{i>1} s_i} over the singular values of
/// sqrt(rho) M conj(sqrt(rho)), which are the square roots of the
/// eigenvalues of rho M rho* M for real symmetric M.
double pair_concurrence(const ComplexMatrix& sqrt_rho, const ComplexMatrix& sqrt_rho_conj,
                        const ReorderedLayout& layout, const std::vector<SparseEntry>& block_nz,
                        const std::vector<SparseEntry>& complement_nz) {
  const Eigen::Index dim = sqrt_rho.rows();
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (const auto& u : block_nz) {
    for (const auto& v : complement_nz) {
      const auto row = static_cast<Eigen::Index>(layout.block_index[u.row] |
                                                 layout.complement_index[v.row]);
      const auto col = static_cast<Eigen::Index>(layout.block_index[u.col] |
                                                 layout.complement_index[v.col]);
      a.noalias() += (u.value * v.value) * sqrt_rho.col(row) * sqrt_rho_conj.row(col);
    }
  }
  // BDCSVD (Eigen 3.4, values only) returns wrong values on some of these
  // rank-deficient inputs; two-sided Jacobi is exact enough and fast at this size.
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const Eigen::VectorXd& s = svd.singularValues();
  const double rest = s.sum() - s(0);
  return std::max(0.0, s(0) - rest);
}

}  // namespace

Bipartition::Bipartition(int n_qubits, std::vector<int> block) : n_qubits_(n_qubits) {
  if (n_qubits < 2) throw Error(ErrorCode::TooFewQubits, "bipartition needs at least 2 qubits");
  std::sort(block.begin(), block.end());
  block.erase(std::unique(block.begin(), block.end()), block.end());
  for (int q : block) {
    if (q < 1 || q > n_qubits) {
      throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(q) + " outside 1.." +
                                                  std::to_string(n_qubits));
    }
  }
  if (block.empty() || static_cast<int>(block.size()) == n_qubits) {
    throw Error(ErrorCode::ConfigMismatch, "both blocks of a bipartition must be nonempty");
  }
  block_ = std::move(block);
  // Canonical form keeps qubit 1 in the stored block.
  if (block_.front() != 1) block_ = complement();
}

std::vector<int> Bipartition::complement() const {
  std::vector<int> out;
  for (int q = 1; q <= n_qubits_; ++q) {
    if (!std::binary_search(block_.begin(), block_.end(), q)) out.push_back(q);
  }
  return out;
}

std::uint64_t Bipartition::mask() const {
  std::uint64_t m = 0;
  for (int q : block_) m |= qubit_mask(n_qubits_, q);
  return m;
}

std::string Bipartition::label() const {
  auto join = [](const std::vector<int>& qs) {
    std::string s;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      if (i) s += '.';
      s += std::to_string(qs[i]);
    }
    return s;
  };
  return join(block_) + "|" + join(complement());
}

std::vector<Bipartition> bipartitions(int n_qubits) {
  if (n_qubits < 2) throw Error(ErrorCode::TooFewQubits, "need at least 2 qubits for a bipartition");
  if (n_qubits > 30) throw Error(ErrorCode::IndexOutOfRange, "too many qubits");
  // Qubit 1 is always in the block; enumerate subsets of the other N-1 qubits,
  // excluding the one that would leave the complement empty.
  std::vector<std::vector<int>> blocks;
  const std::uint64_t others = std::uint64_t{1} << (n_qubits - 1);
  for (std::uint64_t subset = 0; subset + 1 < others; ++subset) {
    std::vector<int> block{1};
    for (int j = 0; j < n_qubits - 1; ++j) {
      if ((subset >> j) & 1U) block.push_back(j + 2);
    }
    blocks.push_back(std::move(block));
  }
  std::sort(blocks.begin(), blocks.end());
  std::vector<Bipartition> out;
  out.reserve(blocks.size());
  for (auto& b : blocks) out.emplace_back(n_qubits, std::move(b));
  return out;
}

SoGeneratorSet so_generators(int dimension) {
  if (dimension < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "SO(d) generators need d >= 2, got " + std::to_string(dimension));
  }
  SoGeneratorSet set;
  set.dimension = dimension;
  for (int i = 0; i < dimension; ++i) {
    for (int j = i + 1; j < dimension; ++j) {
      Eigen::MatrixXd l = Eigen::MatrixXd::Zero(dimension, dimension);
      l(i, j) = 1.0;
      l(j, i) = -1.0;
      set.index_pairs.emplace_back(i, j);
      set.generators.push_back(std::move(l));
    }
  }
  return set;
}

std::string_view to_string(LbcMethod method) {
  switch (method) {
    case LbcMethod::Spectral: return "spectral";
    case LbcMethod::ClosedForm: return "closed_form";
    case LbcMethod::Factorized: return "factorized";
  }
  return "?";
}

double total_from_terms(int n_qubits, const std::vector<BipartitionTerm>& terms) {
  const double count = std::ldexp(1.0, n_qubits - 1) - 1.0;
  double sum = 0.0;
  for (const auto& t : terms) sum += t.concurrence * t.concurrence;
  return std::sqrt(sum / count);
}

ComplexMatrix density_sqrt(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.entries();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
  }
  Eigen::VectorXd w = solver.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) < -kNegativeEigenvalueSlack) {
      throw Error(ErrorCode::NumericalFailure, "density matrix has eigenvalue " + std::to_string(w(i)));
    }
    w(i) = std::sqrt(std::max(0.0, w(i)));
  }
  const ComplexMatrix& v = solver.eigenvectors();
  return v * w.asDiagonal() * v.adjoint();
}

double generator_pair_concurrence(const ComplexMatrix& sqrt_rho, const Bipartition& partition,
                                  const Eigen::MatrixXd& block_op,
                                  const Eigen::MatrixXd& complement_op) {
  const auto k = static_cast<Eigen::Index>(partition.block().size());
  const Eigen::Index rest = partition.n_qubits() - k;
  if (block_op.rows() != (Eigen::Index{1} << k) || complement_op.rows() != (Eigen::Index{1} << rest)) {
    throw Error(ErrorCode::ConfigMismatch, "generator dimensions do not match the bipartition");
  }
  const ComplexMatrix conj = sqrt_rho.conjugate();
  return pair_concurrence(sqrt_rho, conj, layout_for(partition), nonzeros(block_op),
                          nonzeros(complement_op));
}

LbcReport lbc_spectral(const DensityMatrix& rho, const SpectralOptions& options) {
  const int n = rho.n_qubits();
  if (n > options.qubit_cap) {
    throw Error(ErrorCode::QubitCapExceeded, std::to_string(n) + " qubits exceeds the spectral cap of " +
                                                 std::to_string(options.qubit_cap));
  }
  const ComplexMatrix sqrt_rho = density_sqrt(rho);
  const ComplexMatrix sqrt_rho_conj = sqrt_rho.conjugate();

  // Generator sparsity patterns per block size, built once.
  std::vector<std::vector<std::vector<SparseEntry>>> generator_nz(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) {
    for (const auto& g : so_generators(1 << k).generators) {
      generator_nz[static_cast<std::size_t>(k)].push_back(nonzeros(g));
    }
  }

  LbcReport report;
  report.method = LbcMethod::Spectral;
  const auto parts = bipartitions(n);
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    const Bipartition& part = parts[pi];
    const ReorderedLayout layout = layout_for(part);
    const auto& block_gens = generator_nz[part.block().size()];
    const auto& comp_gens = generator_nz[static_cast<std::size_t>(n) - part.block().size()];
    double sum_sq = 0.0;
    for (std::size_t l1 = 0; l1 < block_gens.size(); ++l1) {
      for (std::size_t l2 = 0; l2 < comp_gens.size(); ++l2) {
        const double c = pair_concurrence(sqrt_rho, sqrt_rho_conj, layout, block_gens[l1], comp_gens[l2]);
        sum_sq += c * c;
        if (c > options.term_threshold) {
          report.per_generator_terms.push_back(
              {pi, static_cast<int>(l1) + 1, static_cast<int>(l2) + 1, c});
        }
      }
    }
    report.per_bipartition.push_back({part, std::sqrt(sum_sq)});
  }
  report.total = total_from_terms(n, report.per_bipartition);
  return report;
}

std::uint64_t xstate_pair_index(const Bipartition& partition, std::uint64_t x) {
  const std::uint64_t y = x ^ partition.mask();
  const std::uint64_t y_bar = y ^ all_ones(partition.n_qubits());
  return std::min(y, y_bar) + 1;
}

LbcReport lbc_closed_form(const XStateView& view) {
  const int n = view.n_qubits;
  const std::uint64_t x = view.m - 1;
  const double coherence = std::abs(view.d);
  LbcReport report;
  report.method = LbcMethod::ClosedForm;
  for (const auto& part : bipartitions(n)) {
    const std::size_t k = static_cast<std::size_t>(xstate_pair_index(part, x) - 1);
    const double ab = std::max(0.0, view.a[k]) * std::max(0.0, view.b[k]);
    const double c = 2.0 * std::max(0.0, coherence - std::sqrt(ab));
    report.per_bipartition.push_back({part, c});
  }
  report.total = total_from_terms(n, report.per_bipartition);
  return report;
}

}  // namespace ghzlbc
