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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "ghzlbc/channels.hpp"
#include "ghzlbc/errors.hpp"
#include "ghzlbc/state.hpp"
#include "test_support.hpp"

using namespace ghzlbc;
using Catch::Approx;
using testing::code_of;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const ChannelKind kAllKinds[] = {ChannelKind::AmplitudeDamping, ChannelKind::Depolarizing, ChannelKind::Dephasing};

/// Single-qubit channel action written element by element.
Matrix2c elementwise_map(ChannelKind kind, double p, const Matrix2c& rho) {
  Matrix2c out;
  switch (kind) {
    case ChannelKind::AmplitudeDamping:
      out(0, 0) = rho(0, 0) + p * rho(1, 1);
      out(1, 1) = (1 - p) * rho(1, 1);
      out(0, 1) = std::sqrt(1 - p) * rho(0, 1);
      out(1, 0) = std::sqrt(1 - p) * rho(1, 0);
      break;
    case ChannelKind::Depolarizing:
      out(0, 0) = (1 - p / 2) * rho(0, 0) + p / 2 * rho(1, 1);
      out(1, 1) = (1 - p / 2) * rho(1, 1) + p / 2 * rho(0, 0);
      out(0, 1) = (1 - p) * rho(0, 1);
      out(1, 0) = (1 - p) * rho(1, 0);
      break;
    case ChannelKind::Dephasing:
      out(0, 0) = rho(0, 0);
      out(1, 1) = rho(1, 1);
      out(0, 1) = (1 - p) * rho(0, 1);
      out(1, 0) = (1 - p) * rho(1, 0);
      break;
  }
  return out;
}

Matrix2c apply_kraus(const KrausSet& set, const Matrix2c& rho) {
  Matrix2c out = Matrix2c::Zero();
  for (const auto& k : set.operators) out += k * rho * k.adjoint();
  return out;
}

double max_abs_diff(const DensityMatrix& a, const DensityMatrix& b) {
  return (a.entries() - b.entries()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("p_of_t", "[channels]") {
  CHECK(p_of_t(1.0, 0.0) == 0.0);
  CHECK(p_of_t(1.0, std::log(2.0)) == Approx(0.5).epsilon(1e-15));
  CHECK(p_of_t(1.0, 50.0) >= 1.0 - 1e-20);
  CHECK(p_of_t(1.0, 50.0) <= 1.0);
  CHECK(code_of([] { p_of_t(-1.0, 1.0); }) == ErrorCode::NegativeInput);
  CHECK(code_of([] { p_of_t(1.0, -1.0); }) == ErrorCode::NegativeInput);
}

TEST_CASE("kraus_ops reproduce the element-wise channel maps", "[channels]") {
  SECTION("AD at p = 0 is the identity") {
    const KrausSet set = kraus_ops(ChannelKind::AmplitudeDamping, 0.0);
    REQUIRE(set.operators.size() == 2);
    CHECK(set.operators[0] == Matrix2c::Identity());
    CHECK(set.operators[1] == Matrix2c::Zero());
  }
  SECTION("AD at p = 1 takes |1><1| to |0><0|") {
    Matrix2c excited = Matrix2c::Zero();
    excited(1, 1) = 1.0;
    const Matrix2c out = apply_kraus(kraus_ops(ChannelKind::AmplitudeDamping, 1.0), excited);
    Matrix2c ground = Matrix2c::Zero();
    ground(0, 0) = 1.0;
    CHECK((out - ground).cwiseAbs().maxCoeff() < 1e-15);
  }
  SECTION("D at p = 1 gives the maximally mixed state") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 5; ++i) {
      // Random single-qubit state: reduced state of a random two-qubit state.
      const Matrix2c rho = reduced_state(testing::random_density(2, rng), 1);
      const Matrix2c out = apply_kraus(kraus_ops(ChannelKind::Depolarizing, 1.0), rho);
      CHECK((out - 0.5 * Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
  SECTION("every kind matches its element-wise action") {
    std::mt19937_64 rng(2);
    for (ChannelKind kind : kAllKinds) {
      for (double p : {0.0, 0.13, 0.5, 0.87, 1.0}) {
        const Matrix2c rho = reduced_state(testing::random_density(2, rng), 2);
        const Matrix2c want = elementwise_map(kind, p, rho);
        INFO("kind " << to_string(kind) << " p " << p);
        CHECK((apply_kraus(kraus_ops(kind, p), rho) - want).cwiseAbs().maxCoeff() < 1e-15);
      }
    }
  }
  SECTION("out-of-range probability") {
    CHECK(code_of([] { kraus_ops(ChannelKind::Depolarizing, 1.5); }) == ErrorCode::ProbabilityOutOfRange);
    CHECK(code_of([] { kraus_ops(ChannelKind::Dephasing, -0.1); }) == ErrorCode::ProbabilityOutOfRange);
  }
}

TEST_CASE("Kraus completeness", "[channels][property]") {
  for (ChannelKind kind : kAllKinds) {
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      INFO("kind " << to_string(kind) << " p " << p);
      CHECK(kraus_ops(kind, p).completeness_deviation() < 1e-14);
    }
  }
}

TEST_CASE("apply_local matches the full-space Kraus sum", "[channels]") {
  std::mt19937_64 rng(42);
  for (int n = 1; n <= 4; ++n) {
    const DensityMatrix rho = testing::random_density(n, rng);
    for (int q = 1; q <= n; ++q) {
      for (ChannelKind kind : kAllKinds) {
        const double p = std::uniform_real_distribution<double>(0, 1)(rng);
        const ComplexMatrix want =
            testing::reference_local_channel(rho.entries(), n, q, kraus_ops(kind, p).operators);
        CHECK((apply_local(rho, q, kind, p).entries() - want).cwiseAbs().maxCoeff() < 1e-14);
      }
    }
  }
}

TEST_CASE("apply_local on GHZ states", "[channels]") {
  const GhzSpec spec(kInvSqrt2, kInvSqrt2, "000");
  const DensityMatrix rho0 = ghz_density(spec);

  SECTION("p = 0 leaves any state unchanged") {
    std::mt19937_64 rng(9);
    const DensityMatrix rho = testing::random_density(3, rng);
    for (ChannelKind kind : kAllKinds) {
      for (int q = 1; q <= 3; ++q) CHECK(max_abs_diff(apply_local(rho, q, kind, 0.0), rho) < 1e-15);
    }
  }
  SECTION("AD on qubit 1") {
    for (double p : {0.2, 0.5, 0.9}) {
      const DensityMatrix out = apply_local(rho0, 1, ChannelKind::AmplitudeDamping, p);
      CHECK(std::abs(out(0, 7) - Complex(0.5 * std::sqrt(1 - p))) < 1e-15);
      CHECK(out(0b011, 0b011).real() == Approx(0.5 * p));
      CHECK(out(0b111, 0b111).real() == Approx(0.5 * (1 - p)));
      CHECK(out(0, 0).real() == Approx(0.5));
    }
  }
  SECTION("PD on qubit 2") {
    const DensityMatrix out = apply_local(rho0, 2, ChannelKind::Dephasing, 0.5);
    CHECK(std::abs(out(0, 7) - Complex(0.25)) < 1e-15);
    for (Eigen::Index i = 0; i < 8; ++i) CHECK(std::abs(out(i, i) - rho0(i, i)) < 1e-15);
  }
  SECTION("errors") {
    CHECK(code_of([&] { apply_local(rho0, 4, ChannelKind::Dephasing, 0.5); }) == ErrorCode::IndexOutOfRange);
    CHECK(code_of([&] { apply_local(rho0, 1, ChannelKind::Dephasing, 1.01); }) ==
          ErrorCode::ProbabilityOutOfRange);
  }
}

TEST_CASE("evolve reproduces closed-form evolved states", "[channels]") {
  SECTION("two depolarizing channels on a three-qubit GHZ") {
    const auto noise = NoiseConfig::uniform(3, ChannelKind::Depolarizing, {1, 2});
    for (const auto& [p1, p2] : {std::pair{0.5, 0.5}, std::pair{0.1, 0.7}, std::pair{1.0, 0.3}}) {
      const Complex alpha = std::polar(0.6, 0.4);
      const Complex beta = std::polar(0.8, 2.0);
      const GhzSpec spec(alpha, beta, "000");
      const DensityMatrix out = evolve(ghz_density(spec), noise, std::vector<double>{p1, p2});
      const ComplexMatrix want = testing::depolarized_three_qubit(alpha, beta, p1, p2);
      CHECK((out.entries() - want).cwiseAbs().maxCoeff() < 1e-15);
    }
    const DensityMatrix sym =
        evolve(ghz_density(GhzSpec(kInvSqrt2, kInvSqrt2, "000")), noise, std::vector<double>{0.5, 0.5});
    CHECK(sym(6, 6).real() == Approx(0.5 * 0.25 * 0.25));
  }
  SECTION("asymmetric four-qubit GHZ under AD on every qubit") {
    const auto noise = NoiseConfig::uniform(4, ChannelKind::AmplitudeDamping, {1, 2, 3, 4});
    const GhzSpec spec(kInvSqrt2, kInvSqrt2, "0011");
    for (double p : {0.0, 0.3, 0.8}) {
      const DensityMatrix out = evolve(ghz_density(spec), noise, std::vector<double>(4, p));
      CHECK(std::abs(out(0b0011, 0b1100) - Complex(0.5 * (1 - p) * (1 - p))) < 1e-15);
      // |alpha|^2 q3 q4 on |00 i3 i4>: q = p for a decayed 1, 1-p for a kept 1.
      CHECK(out(0b0001, 0b0001).real() == Approx(0.5 * p * (1 - p)).margin(1e-16));
      CHECK(out(0b0000, 0b0000).real() == Approx(0.5 * p * p + 0.5 * p * p).margin(1e-16));
    }
  }
  SECTION("all channels at p = 0") {
    std::mt19937_64 rng(4);
    const DensityMatrix rho = testing::random_density(3, rng);
    const NoiseConfig noise(3, {{1, {ChannelKind::AmplitudeDamping, Probability{0.0}}},
                                {3, {ChannelKind::Depolarizing, Probability{0.0}}}});
    CHECK(max_abs_diff(evolve(rho, noise, std::vector<double>{0.0, 0.0}), rho) < 1e-15);
  }
  SECTION("shared time resolves each decay rate") {
    const NoiseConfig noise(3, {{1, {ChannelKind::AmplitudeDamping, DecayRate{2.0}}},
                                {2, {ChannelKind::Dephasing, Probability{0.25}}}});
    const auto probs = resolve_probabilities(noise, SharedTime{0.5});
    CHECK(probs[0] == Approx(1 - std::exp(-1.0)));
    CHECK(probs[1] == 0.25);
  }
  SECTION("errors") {
    const auto noise = NoiseConfig::uniform(3, ChannelKind::Depolarizing, {1, 2});
    const DensityMatrix rho = ghz_density(GhzSpec(kInvSqrt2, kInvSqrt2, "000"));
    CHECK(code_of([&] { evolve(rho, noise, std::vector<double>{0.5}); }) == ErrorCode::ConfigMismatch);
    CHECK(code_of([] { NoiseConfig::uniform(3, ChannelKind::Depolarizing, {1, 1}); }) == ErrorCode::ConfigMismatch);
    CHECK(code_of([] { NoiseConfig::uniform(3, ChannelKind::Depolarizing, {}); }) == ErrorCode::ConfigMismatch);
    CHECK(code_of([] { NoiseConfig::uniform(3, ChannelKind::Depolarizing, {4}); }) == ErrorCode::IndexOutOfRange);
    CHECK(code_of([] {
            NoiseConfig(2, {{1, {ChannelKind::Depolarizing, Probability{1.2}}}});
          }) == ErrorCode::ProbabilityOutOfRange);
  }
}

TEST_CASE("evolve is CPTP and order independent", "[channels][property]") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 3;
    const bool ghz_input = trial % 2 == 0;
    const GhzSpec spec = testing::random_ghz(n, rng);
    const DensityMatrix rho = ghz_input ? ghz_density(spec) : testing::random_density(n, rng);
    const auto noise = testing::random_noise(n, rng);
    const DensityMatrix out = evolve(rho, noise.config, noise.probabilities);

    const ValidationReport report = validate_density(out, 1e-10);
    REQUIRE(report.trace_deviation < 1e-13);
    REQUIRE(report.min_eigenvalue >= -1e-10);

    std::vector<std::size_t> order(noise.config.assignments().size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    while (std::next_permutation(order.begin(), order.end())) {
      std::vector<ChannelAssignment> permuted;
      std::vector<double> probs;
      for (std::size_t i : order) {
        permuted.push_back(noise.config.assignments()[i]);
        probs.push_back(noise.probabilities[i]);
      }
      const DensityMatrix other = evolve(rho, NoiseConfig(n, permuted), probs);
      REQUIRE(max_abs_diff(out, other) < 1e-13);
    }

    if (ghz_input) {
      double factor = 1.0;
      for (std::size_t i = 0; i < noise.probabilities.size(); ++i) {
        const double p = noise.probabilities[i];
        factor *= noise.config.assignments()[i].channel.kind == ChannelKind::AmplitudeDamping ? std::sqrt(1 - p)
                                                                                              : 1 - p;
      }
      const auto x = static_cast<Eigen::Index>(spec.index());
      const auto xc = static_cast<Eigen::Index>(spec.complement_index());
      REQUIRE(std::abs(out(x, xc) - spec.alpha() * std::conj(spec.beta()) * factor) < 1e-14);
    }
  }
}

TEST_CASE("AD and PD compose as a semigroup in time", "[channels][property]") {
  std::mt19937_64 rng(8);
  for (ChannelKind kind : {ChannelKind::AmplitudeDamping, ChannelKind::Dephasing}) {
    for (const auto& [gamma, t1, t2] : {std::tuple{1.0, 0.3, 0.9}, std::tuple{2.5, 0.05, 1.2}}) {
      const DensityMatrix rho = testing::random_density(3, rng);
      const auto once = [&](const DensityMatrix& in, double t) {
        return apply_local(in, 2, kind, p_of_t(gamma, t));
      };
      const DensityMatrix split = once(once(rho, t1), t2);
      const DensityMatrix joint = once(rho, t1 + t2);
      CHECK(max_abs_diff(split, joint) < 1e-12);
      const double p1 = p_of_t(gamma, t1), p2 = p_of_t(gamma, t2);
      CHECK(p_of_t(gamma, t1 + t2) == Approx(1 - (1 - p1) * (1 - p2)).epsilon(1e-14));
    }
  }
}
