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


// Synthetic job records for store and analysis tests.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qbench/analysis.hpp"
#include "qbench/random.hpp"
#include "qbench/store.hpp"

namespace fixtures {

inline const char* const kTargets[] = {"aria1-aws", "aria1-azure", "h1-azure", "garnet-aws"};

/// A valid record of any status. Processed records carry counts split
/// between the ideal bitstring and one other outcome.
inline qbench::JobRecord random_record(std::uint64_t seed, std::size_t index) {
  using namespace qbench;
  SplitMix64 rng(derive_seed({seed, index}));
  JobRecord r;
  r.job_id = "job-" + std::to_string(index);
  const int t = static_cast<int>(rng.below(4));
  r.target = kTargets[t];
  r.cloud = (t == 0 || t == 3) ? CloudKind::SimAWS : CloudKind::SimAzure;
  r.qubits = 8 + 2 * static_cast<int>(rng.below(5));
  r.shots = 1 + static_cast<std::int64_t>(rng.below(600));
  r.seed = rng.below(std::uint64_t{1} << 40);
  r.input = rng.below(std::uint64_t{1} << r.qubits);
  r.submitted_at = static_cast<SimTime>(rng.below(20)) * 3600;
  r.target_status = static_cast<Availability>(rng.below(3));
  r.census = GateCensus{static_cast<std::int64_t>(rng.below(400)), static_cast<std::int64_t>(rng.below(200)), 0};
  r.census.total = r.census.n_1q + r.census.n_2q;
  const std::uint64_t s = rng.below(10);
  if (s < 6) {
    r.status = JobStatus::Processed;
    const std::int64_t hits = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(r.shots) + 1));
    const std::string ideal = ideal_output(r.qubits, r.input);
    CountsDistribution d;
    d.shots = r.shots;
    if (hits > 0) d.counts[ideal] = hits;
    if (hits < r.shots) {
      std::string other = ideal;
      other[0] = other[0] == '0' ? '1' : '0';
      d.counts[other] = r.shots - hits;
    }
    r.counts = d;
    r.fidelity = score_against_ideal(d, ideal).value;
    r.success = classify_success(*r.fidelity);
    r.actual_wait = 1 + static_cast<SimTime>(rng.below(5000));
    r.executed_at = r.submitted_at + *r.actual_wait;
    if (r.cloud == CloudKind::SimAzure) r.predicted_wait = 1 + static_cast<SimTime>(rng.below(5000));
    r.cost = Money::from_micros(static_cast<std::int64_t>(rng.below(50'000'000)));
  } else if (s < 8) {
    r.status = JobStatus::Error;
    r.error_message = rng.below(2) ? "gate limit exceeded: 9, \"big\"" : "circuit width too large";
  } else if (s < 9) {
    r.status = JobStatus::Canceled;
  } else {
    r.status = JobStatus::Unavailable;
  }
  return r;
}

inline std::vector<qbench::JobRecord> random_records(std::uint64_t seed, std::size_t n) {
  std::vector<qbench::JobRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_record(seed, i));
  return out;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("qbench-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
