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


#include <benchmark/benchmark.h>

#include <filesystem>

#include "qbench/analysis.hpp"
#include "qbench/circuit.hpp"
#include "qbench/costing.hpp"
#include "qbench/simulator.hpp"
#include "qbench/store.hpp"
#include "qbench/transpiler.hpp"

namespace {

using namespace qbench;

void BM_StatevectorBenchmark(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const Circuit c = transpile(build_qft_benchmark(q, 1), efficient_profile()).circuit;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_statevector(c));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.size()));
}
BENCHMARK(BM_StatevectorBenchmark)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_Transpile(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const Circuit c = build_qft_benchmark(q, 1);
  const GateSetProfile profile = state.range(1) ? redundant_profile() : efficient_profile();
  for (auto _ : state) {
    benchmark::DoNotOptimize(transpile(c, profile));
  }
}
BENCHMARK(BM_Transpile)->ArgsProduct({{8, 16, 28}, {0, 1}});

void BM_SampleShots(benchmark::State& state) {
  const StateVector sv = run_statevector(build_qft_benchmark(10, 3));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(sv, state.range(0), ++seed));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleShots)->Arg(500)->Arg(100000);

void BM_DepolarizedRun(benchmark::State& state) {
  const Circuit c = transpile(build_qft_benchmark(8, 5), efficient_profile()).circuit;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_noisy(c, GlobalDepolarizing{0.99}, 100000, ++seed));
  }
}
BENCHMARK(BM_DepolarizedRun)->Unit(benchmark::kMillisecond);

void BM_AzureCost(benchmark::State& state) {
  const auto model = prices::azure_ionq_aria();
  const GateCensus g{812, 356, 1168};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cost_azure_ionq(g, 500, false, model));
  }
}
BENCHMARK(BM_AzureCost);

void BM_Hellinger(benchmark::State& state) {
  CountsDistribution d = run_noisy(build_qft_benchmark(8, 3), GlobalDepolarizing{0.95}, 5000, 1);
  const std::string ideal = ideal_output(8, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_against_ideal(d, ideal));
  }
}
BENCHMARK(BM_Hellinger);

JobRecord sample_record(std::int64_t i) {
  JobRecord r;
  r.job_id = "bench-" + std::to_string(i);
  r.cloud = CloudKind::SimAzure;
  r.target = "h2-azure";
  r.qubits = 8 + static_cast<int>(i % 5) * 2;
  r.shots = 500;
  r.submitted_at = i * 60;
  r.status = JobStatus::Processed;
  CountsDistribution d;
  d.shots = 500;
  d.counts[std::string(static_cast<std::size_t>(r.qubits), '0')] = 500;
  r.counts = d;
  r.fidelity = 1.0;
  r.success = true;
  r.cost = Money::parse("12.42");
  return r;
}

void BM_StoreAppendAndQuery(benchmark::State& state) {
  const auto path = std::filesystem::temp_directory_path() / "qbench-bench-store.jsonl";
  const Filter filter({Predicate::parse("qubits>=12")});
  for (auto _ : state) {
    state.PauseTiming();
    std::filesystem::remove(path);
    std::filesystem::remove(path.string() + ".idx");
    state.ResumeTiming();
    JobStore store(path);
    for (std::int64_t i = 0; i < state.range(0); ++i) store.append(sample_record(i));
    benchmark::DoNotOptimize(store.query(filter));
  }
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".idx");
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StoreAppendAndQuery)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
