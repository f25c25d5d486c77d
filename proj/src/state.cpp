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

#include "ghzlbc/state.hpp"

#include <algorithm>
#include <cmath>

#include "ghzlbc/errors.hpp"

namespace ghzlbc {

GhzSpec::GhzSpec(Complex alpha, Complex beta, std::string pattern)
    : alpha_(alpha), beta_(beta), pattern_(std::move(pattern)) {
  if (pattern_.size() < 2) {
    throw Error(ErrorCode::TooFewQubits, "GHZ pattern needs at least 2 qubits, got '" + pattern_ + "'");
  }
  if (pattern_.size() > 30) {
    throw Error(ErrorCode::IndexOutOfRange, "GHZ pattern longer than 30 qubits");
  }
  if (!std::all_of(pattern_.begin(), pattern_.end(), [](char c) { return c == '0' || c == '1'; })) {
    throw Error(ErrorCode::InvalidPattern, "pattern symbols must be 0 or 1, got '" + pattern_ + "'");
  }
  const double norm = std::norm(alpha_) + std::norm(beta_);
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw Error(ErrorCode::NormViolation,
                "|alpha|^2 + |beta|^2 = " + std::to_string(norm) + ", expected 1");
  }
}

namespace {

std::string checked_pattern(int n_qubits, std::string pattern) {
  if (n_qubits < 2) {
    throw Error(ErrorCode::TooFewQubits, "GHZ state needs at least 2 qubits, got " + std::to_string(n_qubits));
  }
  if (pattern.size() != static_cast<std::size_t>(n_qubits)) {
    throw Error(ErrorCode::PatternLengthMismatch, "pattern '" + pattern + "' has length " +
                                                      std::to_string(pattern.size()) + ", expected " +
                                                      std::to_string(n_qubits));
  }
  return pattern;
}

}  // namespace

GhzSpec::GhzSpec(int n_qubits, Complex alpha, Complex beta, std::string pattern)
    : GhzSpec(alpha, beta, checked_pattern(n_qubits, std::move(pattern))) {}

std::uint64_t GhzSpec::index() const {
  std::uint64_t x = 0;
  for (char c : pattern_) x = (x << 1) | static_cast<std::uint64_t>(c == '1');
  return x;
}

bool GhzSpec::is_symmetric() const {
  return std::all_of(pattern_.begin(), pattern_.end(), [&](char c) { return c == pattern_.front(); });
}

DensityMatrix::DensityMatrix(int n_qubits, ComplexMatrix entries)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw Error(ErrorCode::IndexOutOfRange, "qubit count out of range: " + std::to_string(n_qubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw Error(ErrorCode::ConfigMismatch, "density matrix must be " + std::to_string(dim) + "x" +
                                               std::to_string(dim) + " for " +
                                               std::to_string(n_qubits) + " qubits");
  }
}

DensityMatrix DensityMatrix::zero(int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  return DensityMatrix(n_qubits, ComplexMatrix::Zero(dim, dim));
}

DensityMatrix ghz_density(const GhzSpec& spec) {
  const int n = spec.n_qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;
  const auto x = static_cast<Eigen::Index>(spec.index());
  const auto xc = static_cast<Eigen::Index>(spec.complement_index());
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  rho(x, x) = std::norm(spec.alpha());
  rho(xc, xc) = std::norm(spec.beta());
  rho(x, xc) = spec.alpha() * std::conj(spec.beta());
  rho(xc, x) = std::conj(spec.alpha()) * spec.beta();
  return DensityMatrix(n, std::move(rho));
}

XStateView xstate_view(const DensityMatrix& rho, const GhzSpec& spec) {
  const int n = rho.n_qubits();
  if (n != spec.n_qubits()) {
    throw Error(ErrorCode::ConfigMismatch, "state has " + std::to_string(n) +
                                               " qubits but GHZ spec has " +
                                               std::to_string(spec.n_qubits()));
  }
  const Eigen::Index dim = rho.dim();
  const auto x = static_cast<Eigen::Index>(std::min(spec.index(), spec.complement_index()));
  const auto xc = static_cast<Eigen::Index>(std::max(spec.index(), spec.complement_index()));

  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      if (r == c || (r == x && c == xc) || (r == xc && c == x)) continue;
      if (std::abs(rho(r, c)) > kStructureTolerance) {
        throw Error(ErrorCode::NotXStructured, "stray coherence at (" + std::to_string(r) + "," +
                                                   std::to_string(c) + ")");
      }
    }
  }

  XStateView view;
  view.n_qubits = n;
  view.m = static_cast<std::uint64_t>(x) + 1;
  const Eigen::Index half = dim / 2;
  view.a.resize(static_cast<std::size_t>(half));
  view.b.resize(static_cast<std::size_t>(half));
  for (Eigen::Index k = 1; k <= half; ++k) {
    view.a[static_cast<std::size_t>(k - 1)] = rho(k - 1, k - 1).real();
    view.b[static_cast<std::size_t>(k - 1)] = rho(dim - k, dim - k).real();
  }
  view.d = rho(x, xc);
  return view;
}

DensityMatrix from_xstate_view(const XStateView& view) {
  DensityMatrix out = DensityMatrix::zero(view.n_qubits);
  ComplexMatrix rho = out.entries();
  const Eigen::Index dim = rho.rows();
  const Eigen::Index half = dim / 2;
  for (Eigen::Index k = 1; k <= half; ++k) {
    rho(k - 1, k - 1) = view.a[static_cast<std::size_t>(k - 1)];
    rho(dim - k, dim - k) = view.b[static_cast<std::size_t>(k - 1)];
  }
  const auto x = static_cast<Eigen::Index>(view.m - 1);
  const Eigen::Index xc = dim - 1 - x;
  rho(x, xc) = view.d;
  rho(xc, x) = std::conj(view.d);
  return DensityMatrix(view.n_qubits, std::move(rho));
}

Matrix2c reduced_state(const DensityMatrix& rho, int qubit) {
  const int n = rho.n_qubits();
  if (qubit < 1 || qubit > n) {
    throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(qubit) + " not in 1.." +
                                                std::to_string(n));
  }
  const std::uint64_t bit = qubit_mask(n, qubit);
  const auto dim = static_cast<std::uint64_t>(rho.dim());
  Matrix2c out = Matrix2c::Zero();
  // Sum over environment configurations: indices with the target bit cleared.
  for (std::uint64_t env = 0; env < dim; ++env) {
    if (env & bit) continue;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        const auto row = static_cast<Eigen::Index>(r ? env | bit : env);
        const auto col = static_cast<Eigen::Index>(c ? env | bit : env);
        out(r, c) += rho(row, col);
      }
    }
  }
  return out;
}

ValidationReport validate_density(const DensityMatrix& rho, double tol) {
  const ComplexMatrix& m = rho.entries();
  ValidationReport report;
  report.hermiticity_deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  report.trace_deviation = std::abs(m.trace() - Complex{1.0, 0.0});
  const ComplexMatrix hermitian_part = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  report.passed = report.hermiticity_deviation <= tol && report.trace_deviation <= tol &&
                  report.min_eigenvalue >= -tol;
  return report;
}

}  // namespace ghzlbc
