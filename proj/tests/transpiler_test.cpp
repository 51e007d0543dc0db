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

#include "qbench/transpiler.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "oracle.hpp"
#include "qbench/random.hpp"

namespace qbench {
namespace {

const GateSetProfile kProfiles[] = {efficient_profile(), redundant_profile()};

// Random product state prepared by the oracle's own gate matrices.
std::vector<oracle::C> random_state(int width, SplitMix64& rng) {
  Circuit prep(width);
  for (int q = 0; q < width; ++q) {
    prep.add(Gate::ry(q, 3.1 * rng.uniform()));
    prep.add(Gate::rz(q, 6.2 * rng.uniform()));
    prep.add(Gate::rx(q, 6.2 * rng.uniform()));
  }
  return oracle::run(prep, oracle::basis(width, 0));
}

TEST(Transpiler, EveryGateLowersExactlyIncludingGlobalPhase) {
  SplitMix64 rng(2024);
  for (const auto& profile : kProfiles) {
    for (int k = 0; k <= static_cast<int>(GateKind::SWAP); ++k) {
      for (double theta : {0.0, 0.3, -1.7, 3.14159, 5.5}) {
        Circuit c(3);
        c.add(Gate{static_cast<GateKind>(k), {2, 0}, theta});
        const TranspileResult t = transpile(c, profile);
        for (const auto& g : t.circuit.gates()) EXPECT_TRUE(profile.is_native(g.kind));
        const auto in = random_state(3, rng);
        const auto want = oracle::run(c, in);
        const auto got = oracle::run(t.circuit, in);
        const oracle::C phase = std::polar(1.0, t.global_phase);
        for (std::size_t i = 0; i < want.size(); ++i) {
          ASSERT_NEAR(std::abs(want[i] - phase * got[i]), 0.0, 1e-10)
              << profile.name << " " << gate_name(static_cast<GateKind>(k)) << " theta=" << theta;
        }
      }
    }
  }
}

TEST(Transpiler, BenchmarksStayEquivalent) {
  for (const auto& profile : kProfiles) {
    for (int q = 2; q <= 8; ++q) {
      const std::uint64_t n = random_input(q, 17);
      const Circuit c = build_qft_benchmark(q, n);
      const TranspileResult t = transpile(c, profile);
      EXPECT_GE(verify_equivalence(c, t.circuit), 1.0 - 1e-9) << profile.name << " q=" << q;
      EXPECT_EQ(t.circuit.metadata(), c.metadata());
      EXPECT_EQ(t.source_census, census(c));
    }
  }
}

TEST(Transpiler, CensusFollowsLoweringRules) {
  for (int q : {3, 8, 12, 17}) {
    const std::uint64_t n = random_input(q, 5);
    const auto k = oracle::benchmark_counts(q, n);
    const GateCensus eff = transpile(build_qft_benchmark(q, n), efficient_profile()).census;
    EXPECT_EQ(eff.n_2q, k.cp + 3 * k.swap);
    EXPECT_EQ(eff.n_1q, k.x + 2 * k.h + k.p + 2 * k.cp + 6 * k.swap);
    const GateCensus red = transpile(build_qft_benchmark(q, n), redundant_profile()).census;
    EXPECT_EQ(red.n_2q, 2 * k.cp + 3 * k.swap);
    EXPECT_EQ(red.n_1q, 3 * (k.x + k.h + k.p) + 9 * k.cp);
  }
}

TEST(Transpiler, ControlledPhaseEntanglerRatioIsTwo) {
  SplitMix64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c(6);
    const int count = 1 + static_cast<int>(rng.below(40));
    for (int i = 0; i < count; ++i) {
      const int a = static_cast<int>(rng.below(6));
      const int b = (a + 1 + static_cast<int>(rng.below(5))) % 6;
      c.add(Gate::cp(a, b, rng.uniform()));
    }
    const auto direct = transpile(c, efficient_profile()).census.n_2q;
    const auto two_cx = transpile(c, redundant_profile()).census.n_2q;
    EXPECT_EQ(direct, count);
    EXPECT_EQ(two_cx, 2 * direct);
  }
}

TEST(Transpiler, RedundantProfileIsAboutThreeTimesLarger) {
  for (int q : {8, 12, 16}) {
    const Circuit c = build_qft_benchmark(q, random_input(q, 3));
    const double ratio = static_cast<double>(transpile(c, redundant_profile()).census.total) /
                         static_cast<double>(transpile(c, efficient_profile()).census.total);
    EXPECT_GE(ratio, 2.5) << "q=" << q;
    EXPECT_LE(ratio, 3.5) << "q=" << q;
  }
}

TEST(Transpiler, EquivalenceCheckDetectsDifferences) {
  Circuit a = build_qft_benchmark(4, 3);
  Circuit b = build_qft_benchmark(4, 3);
  b.add(Gate::cp(0, 3, 0.2));
  EXPECT_LT(verify_equivalence(a, b), 0.999);
  EXPECT_THROW(verify_equivalence(a, Circuit(5)), std::invalid_argument);
  EXPECT_THROW(verify_equivalence(Circuit(11), Circuit(11)), std::invalid_argument);
}

TEST(Transpiler, GateLimitSeparatesSixteenFromEighteen) {
  const std::int64_t limit = default_aws_gate_limit();
  const auto red = redundant_profile();
  for (std::uint64_t n : {std::uint64_t{0}, std::uint64_t{0xFFFF}, random_input(16, 1)}) {
    EXPECT_TRUE(check_gate_limit(transpile(build_qft_benchmark(16, n), red).census, limit));
  }
  for (std::uint64_t n : {std::uint64_t{0}, std::uint64_t{0x3FFFF}, random_input(18, 1)}) {
    EXPECT_FALSE(check_gate_limit(transpile(build_qft_benchmark(18, n), red).census, limit));
  }
  GateCensus at{0, 0, limit};
  EXPECT_TRUE(check_gate_limit(at, limit));
  at.total = limit + 1;
  EXPECT_FALSE(check_gate_limit(at, limit));
  EXPECT_THROW(gate_limit_between(red, 18, 16), std::invalid_argument);
}

TEST(Transpiler, ProfilesValidate) {
  for (const auto& p : kProfiles) EXPECT_NO_THROW(validate(p));
  GateSetProfile bad = efficient_profile();
  bad.native_2q = GateKind::CX;
  EXPECT_THROW(validate(bad), std::invalid_argument);
  bad = redundant_profile();
  bad.native_1q.push_back(GateKind::SWAP);
  EXPECT_THROW(validate(bad), std::invalid_argument);
  EXPECT_EQ(profile_by_name("redundant").native_2q, GateKind::CX);
  EXPECT_THROW(profile_by_name("fancy"), std::invalid_argument);
}

}  // namespace
}  // namespace qbench
