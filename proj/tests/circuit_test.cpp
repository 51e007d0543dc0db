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

#include "qbench/circuit.hpp"

#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

#include "oracle.hpp"
#include "qbench/random.hpp"

namespace qbench {
namespace {

TEST(Circuit, RejectsOutOfRangeAndRepeatedQubits) {
  Circuit c(3);
  EXPECT_THROW(c.add(Gate::h(3)), std::invalid_argument);
  EXPECT_THROW(c.add(Gate::cx(1, 1)), std::invalid_argument);
  EXPECT_THROW(c.add(Gate::rz(0, std::nan(""))), std::invalid_argument);
  EXPECT_THROW(Circuit(0), std::invalid_argument);
  EXPECT_NO_THROW(c.add(Gate::cp(0, 2, 0.5)));
  EXPECT_EQ(c.size(), 1u);
}

TEST(Circuit, GateNamesRoundTrip) {
  for (int k = 0; k <= static_cast<int>(GateKind::SWAP); ++k) {
    const auto kind = static_cast<GateKind>(k);
    EXPECT_EQ(gate_kind_from_name(gate_name(kind)), kind);
  }
  EXPECT_THROW(gate_kind_from_name("toffoli"), std::invalid_argument);
}

TEST(Circuit, InverseUndoesCircuit) {
  SplitMix64 rng(7);
  Circuit c(4);
  for (int i = 0; i < 40; ++i) {
    const int a = static_cast<int>(rng.below(4));
    const int b = (a + 1 + static_cast<int>(rng.below(3))) % 4;
    const double t = 6.0 * rng.uniform() - 3.0;
    switch (rng.below(6)) {
      case 0: c.add(Gate::h(a)); break;
      case 1: c.add(Gate::rx(a, t)); break;
      case 2: c.add(Gate::p(a, t)); break;
      case 3: c.add(Gate::cp(a, b, t)); break;
      case 4: c.add(Gate::zz(a, b, t)); break;
      default: c.add(Gate::swap(a, b)); break;
    }
  }
  Circuit round = c;
  round.append(c.inverse());
  const auto psi = oracle::run(round, oracle::basis(4, 9));
  EXPECT_NEAR(std::norm(psi[9]), 1.0, 1e-12);
}

TEST(Circuit, JsonRoundTrip) {
  Circuit c = build_qft_benchmark(5, 19);
  c.set_metadata({5, 19, 1234});
  const Circuit back = Circuit::from_json(c.to_json());
  EXPECT_EQ(back, c);
  EXPECT_THROW(Circuit::from_json("{\"width\": 2, \"gates\": [{\"kind\": \"cx\", \"targets\": [0, 0]}]}"),
               std::invalid_argument);
  EXPECT_THROW(Circuit::from_json("not json"), std::invalid_argument);
}

TEST(Circuit, QftMatchesDiscreteFourierTransform) {
  for (int q = 1; q <= 6; ++q) {
    const Circuit qft = qft_circuit(q);
    for (std::uint64_t n = 0; n < (std::uint64_t{1} << q); n += 3) {
      const auto got = oracle::run(qft, oracle::basis(q, n));
      EXPECT_NEAR(oracle::overlap(got, oracle::dft_of_basis(q, n)), 1.0, 1e-10) << "q=" << q << " n=" << n;
    }
  }
}

TEST(Circuit, BenchmarkIncrementsInput) {
  for (int q = 1; q <= 7; ++q) {
    for (std::uint64_t n = 0; n < (std::uint64_t{1} << q); ++n) {
      const auto psi = oracle::run(build_qft_benchmark(q, n), oracle::basis(q, 0));
      const std::uint64_t expect = (n + 1) % (std::uint64_t{1} << q);
      ASSERT_NEAR(std::norm(psi[expect]), 1.0, 1e-10) << "q=" << q << " n=" << n;
      EXPECT_EQ(ideal_output(q, n), to_bitstring(expect, q));
    }
  }
}

TEST(Circuit, BenchmarkGateCountsFollowConstruction) {
  for (int q : {1, 2, 5, 8, 13, 28}) {
    const std::uint64_t n = random_input(q, 99);
    const Circuit c = build_qft_benchmark(q, n);
    const auto want = oracle::benchmark_counts(q, n);
    std::int64_t x = 0, h = 0, p = 0, cp = 0, swap = 0;
    for (const auto& g : c.gates()) {
      x += g.kind == GateKind::X;
      h += g.kind == GateKind::H;
      p += g.kind == GateKind::P;
      cp += g.kind == GateKind::CP;
      swap += g.kind == GateKind::SWAP;
    }
    EXPECT_EQ(x, want.x);
    EXPECT_EQ(h, want.h);
    EXPECT_EQ(p, want.p);
    EXPECT_EQ(cp, want.cp);
    EXPECT_EQ(swap, want.swap);
    const auto cen = census(c);
    EXPECT_EQ(cen.n_2q, want.cp + want.swap);
    EXPECT_EQ(cen.n_1q, want.x + want.h + want.p);
    EXPECT_EQ(cen.total, static_cast<std::int64_t>(c.size()));
    EXPECT_EQ(benchmark_layout(q, n).total, c.size());
    ASSERT_TRUE(c.metadata().has_value());
    EXPECT_EQ(c.metadata()->qubits, q);
    EXPECT_EQ(c.metadata()->input, n);
  }
}

TEST(Circuit, LayoutSegmentsHoldExpectedGates) {
  const int q = 6;
  const std::uint64_t n = 0b101101;
  const Circuit c = build_qft_benchmark(q, n);
  const auto l = benchmark_layout(q, n);
  for (std::size_t i = 0; i < l.prepare_end; ++i) EXPECT_EQ(c.gates()[i].kind, GateKind::X);
  for (std::size_t i = l.qft_end; i < l.increment_end; ++i) EXPECT_EQ(c.gates()[i].kind, GateKind::P);
  EXPECT_EQ(c.gates()[l.prepare_end].kind, GateKind::H);
}

TEST(Circuit, BenchmarkRejectsBadArguments) {
  EXPECT_THROW(build_qft_benchmark(0, 0), std::invalid_argument);
  EXPECT_THROW(build_qft_benchmark(29, 0), std::invalid_argument);
  EXPECT_THROW(build_qft_benchmark(4, 16), std::invalid_argument);
}

TEST(Circuit, BitstringsAreMostSignificantFirst) {
  EXPECT_EQ(to_bitstring(1, 4), "0001");
  EXPECT_EQ(to_bitstring(8, 4), "1000");
  EXPECT_EQ(from_bitstring("0110"), 6u);
  EXPECT_EQ(ideal_output(3, 7), "000");
  EXPECT_THROW(from_bitstring("01a"), std::invalid_argument);
  SplitMix64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const int w = 1 + static_cast<int>(rng.below(40));
    const std::uint64_t v = rng.below(std::uint64_t{1} << w);
    EXPECT_EQ(from_bitstring(to_bitstring(v, w)), v);
  }
}

TEST(Circuit, RandomInputIsDeterministicAndInRange) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto v = random_input(8, s);
    EXPECT_LT(v, 256u);
    EXPECT_EQ(v, random_input(8, s));
    seen.insert(v);
  }
  EXPECT_GT(seen.size(), 100u);
}

}  // namespace
}  // namespace qbench
