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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qbench/costing.hpp"
#include "qbench/providers.hpp"
#include "qbench/store.hpp"

namespace qbench {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Named price entries, e.g. "aws.ionq_aria" or "quantinuum.hardware".
using PriceTable = std::map<std::string, CostModel>;

/// Built-in list prices under their canonical keys.
PriceTable default_price_table();
/// Parses a price file. Throws ConfigError.
PriceTable parse_price_table(std::string_view text);
/// Price key a preset bills under ("free" for free simulators).
std::string preset_price_key(std::string_view preset_name);

struct CampaignConfig {
  int qubits_min = 8;
  int qubits_max = 28;
  int qubits_step = 2;
  std::int64_t shots = 500;
  int days = 1;
  int submissions_per_day = 1;
  std::uint64_t seed = 1;
  /// Spending cap per target; checked before each submission.
  std::optional<Money> budget_per_target;
  std::string store_path = "qbench.jsonl";
  std::vector<ProviderProfile> targets;
  /// 0 picks the hardware concurrency.
  int workers = 0;
  /// Seconds after midnight of the first sweep each day.
  SimTime start_of_day = 9 * 3600;
  /// Days after the last submission day before unfinished jobs are canceled.
  int drain_days = 7;

  std::vector<int> qubit_counts() const;
};

void validate(const CampaignConfig& c);

/// Parses the sectioned key/value campaign format (see config/README.md).
/// Relative price-file paths resolve against `base_dir`. Throws ConfigError.
CampaignConfig parse_campaign_config(std::string_view text, const std::filesystem::path& base_dir = {});
CampaignConfig load_campaign_config(const std::filesystem::path& path);

/// Applies QBENCH_STORE and QBENCH_SEED when set.
void apply_environment(CampaignConfig& c);

struct CampaignSummary {
  std::map<std::string, std::map<JobStatus, std::int64_t>> status_counts;  // per target
  std::map<std::string, Money> cost_per_target;
  std::map<std::string, std::int64_t> skipped_for_budget;
  std::int64_t records = 0;
  Money total_cost;
};

/// Stable per-job seed.
std::uint64_t job_seed(std::uint64_t campaign_seed, std::string_view target, int day, int slot, int qubits);
std::string job_id(std::string_view target, int day, int slot, int qubits);

/// Runs every day x slot x target x width submission, appending one record
/// per attempt to `store` in submission order.
CampaignSummary run_campaign(const CampaignConfig& config, JobStore& store);

/// Per-target, per-status counts over existing records.
CampaignSummary summarize(const std::vector<JobRecord>& records);

}  // namespace qbench
