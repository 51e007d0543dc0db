// Copyright 2026 The qbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbench/simulator.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "qbench/random.hpp"

namespace qbench {
namespace {

Circuit random_circuit(int width, int gates, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Circuit c(width);
  for (int i = 0; i < gates; ++i) {
    const auto kind = static_cast<GateKind>(rng.below(10));
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(width)));
    int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(width - 1)));
    if (b >= a) ++b;
    c.add(Gate{kind, {a, b}, 8.0 * rng.uniform() - 4.0});
  }
  return c;
}

std::int64_t total(const CountsDistribution& d) {
  std::int64_t s = 0;
  for (const auto& [k, v] : d.counts) s += v;
  return s;
}

TEST(StateVector, MatchesDenseOracleOnRandomCircuits) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int width = 2 + static_cast<int>(seed % 4);
    const Circuit c = random_circuit(width, 60, seed);
    const StateVector sv = run_statevector(c);
    const auto want = oracle::run(c, oracle::basis(width, 0));
    for (std::size_t i = 0; i < want.size(); ++i) {
      ASSERT_NEAR(std::abs(sv[i] - want[i]), 0.0, 1e-12) << "seed " << seed << " index " << i;
    }
  }
}

TEST(StateVector, EachGateMatchesOracleOnEveryBasisState) {
  for (int k = 0; k <= static_cast<int>(GateKind::SWAP); ++k) {
    Circuit c(3);
    c.add(Gate{static_cast<GateKind>(k), {2, 0}, 0.7});
    for (std::uint64_t in = 0; in < 8; ++in) {
      Circuit prep(3);
      for (int q = 0; q < 3; ++q) {
        if ((in >> q) & 1U) prep.add(Gate::x(q));
      }
      StateVector sv = run_statevector(prep);
      sv.apply(c);
      const auto want = oracle::run(c, oracle::basis(3, in));
      for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(std::abs(sv[i] - want[i]), 0.0, 1e-14) << gate_name(static_cast<GateKind>(k));
      }
    }
  }
}

TEST(StateVector, PreservesNorm) {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    EXPECT_NEAR(run_statevector(random_circuit(6, 200, seed)).norm(), 1.0, 1e-12);
  }
}

TEST(StateVector, RejectsOversizeRegisters) {
  EXPECT_THROW(StateVector(kMaxStatevectorQubits + 1), std::invalid_argument);
  EXPECT_THROW(StateVector(0), std::invalid_argument);
}

TEST(Sampling, ConservesShotsAndIsSeeded) {
  const Circuit c = random_circuit(5, 50, 77);
  const auto a = sample(run_statevector(c), 1000, 5);
  const auto b = sample(run_statevector(c), 1000, 5);
  EXPECT_EQ(a, b);
  EXPECT_EQ(total(a), 1000);
  EXPECT_EQ(a.shots, 1000);
  EXPECT_NE(a, sample(run_statevector(c), 1000, 6));
  EXPECT_THROW(sample(run_statevector(c), 0, 1), std::invalid_argument);
}

TEST(Sampling, FrequenciesTrackProbabilities) {
  const Circuit c = random_circuit(3, 30, 12);
  const auto probs = run_statevector(c).probabilities();
  const std::int64_t shots = 200000;
  const auto counts = sample(run_statevector(c), shots, 99);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const auto it = counts.counts.find(to_bitstring(i, 3));
    const double freq = it == counts.counts.end() ? 0.0 : static_cast<double>(it->second) / shots;
    const double sigma = std::sqrt(probs[i] * (1 - probs[i]) / shots);
    EXPECT_NEAR(freq, probs[i], 5 * sigma + 1e-9);
  }
}

TEST(Sampling, NoiselessBenchmarkIsADelta) {
  for (int q : {3, 6, 9}) {
    const std::uint64_t n = random_input(q, 4);
    const auto d = run_noisy(build_qft_benchmark(q, n), NoNoise{}, 500, 1);
    ASSERT_EQ(d.counts.size(), 1u);
    EXPECT_EQ(d.counts.begin()->first, ideal_output(q, n));
    EXPECT_EQ(d.counts.begin()->second, 500);
  }
}

TEST(Noise, GlobalDepolarizingMixesWithUniform) {
  const int q = 4;
  const Circuit c = build_qft_benchmark(q, 6);
  const double f2 = 0.97;
  const double success = std::pow(f2, static_cast<double>(census(c).n_2q));
  const double p_ideal = success + (1.0 - success) / 16.0;
  const std::int64_t shots = 100000;
  const auto d = run_noisy(c, GlobalDepolarizing{f2}, shots, 42);
  EXPECT_EQ(total(d), shots);
  const double freq = static_cast<double>(d.counts.at(ideal_output(q, 6))) / shots;
  EXPECT_NEAR(freq, p_ideal, 5 * std::sqrt(p_ideal * (1 - p_ideal) / shots));
}

TEST(Noise, TrajectoryFaultRateMatchesPauliCount) {
  // One identity-valued two-qubit gate on |00>. Of the 15 non-identity Pauli
  // pairs only IZ, ZI and ZZ leave |00> in place.
  Circuit c(2);
  c.add(Gate::zz(0, 1, 0.0));
  const double p = 0.3;
  const std::int64_t shots = 40000;
  const auto d = run_noisy(c, PauliTrajectory{p}, shots, 3);
  EXPECT_EQ(total(d), shots);
  const double want = 1.0 - p + p * 3.0 / 15.0;
  const double got = static_cast<double>(d.counts.at("00")) / shots;
  EXPECT_NEAR(got, want, 5 * std::sqrt(want * (1 - want) / shots));
}

TEST(Noise, ZeroTrajectoryRateIsNoiseless) {
  const Circuit c = build_qft_benchmark(5, 11);
  const auto d = run_noisy(c, PauliTrajectory{0.0}, 300, 8);
  ASSERT_EQ(d.counts.size(), 1u);
  EXPECT_EQ(d.counts.begin()->first, ideal_output(5, 11));
}

TEST(Noise, ValidatesParameters) {
  EXPECT_THROW(validate(NoiseSpec{GlobalDepolarizing{0.0}}), std::invalid_argument);
  EXPECT_THROW(validate(NoiseSpec{GlobalDepolarizing{1.1}}), std::invalid_argument);
  EXPECT_THROW(validate(NoiseSpec{PauliTrajectory{1.0}}), std::invalid_argument);
  EXPECT_NO_THROW(validate(NoiseSpec{PauliTrajectory{0.5}}));
  EXPECT_EQ(describe(NoNoise{}), "none");
}

TEST(Counts, JsonRoundTrip) {
  CountsDistribution d;
  d.counts = {{"0101", 3}, {"1111", 497}};
  d.shots = 500;
  EXPECT_EQ(CountsDistribution::from_json(d.to_json()), d);
  EXPECT_THROW(CountsDistribution::from_json("{}"), std::invalid_argument);
}

}  // namespace
}  // namespace qbench
