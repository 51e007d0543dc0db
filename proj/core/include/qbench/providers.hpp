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
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbench/circuit.hpp"
#include "qbench/costing.hpp"
#include "qbench/simulator.hpp"
#include "qbench/transpiler.hpp"

namespace qbench {

/// Simulated seconds since the campaign epoch (midnight, day 0, target local time).
using SimTime = std::int64_t;

inline constexpr SimTime kSecondsPerDay = 86'400;
inline constexpr SimTime kForever = std::numeric_limits<SimTime>::max();

enum class CloudKind { SimAWS, SimAzure };
enum class Availability { Available, Degraded, Unavailable };
enum class DegradedSemantics { AcceptHold, ReducedCapacity };
enum class JobStatus { Submitted, Processed, Error, Canceled, Unavailable };

std::string_view to_string(CloudKind c);
std::string_view to_string(Availability a);
std::string_view to_string(JobStatus s);
CloudKind cloud_from_string(std::string_view s);
Availability availability_from_string(std::string_view s);
JobStatus job_status_from_string(std::string_view s);

bool is_terminal(JobStatus s);

struct TargetStatus {
  Availability state = Availability::Available;
  /// Only meaningful when state == Degraded.
  DegradedSemantics degraded_semantics = DegradedSemantics::AcceptHold;
  /// Width ceiling while Degraded with ReducedCapacity.
  int reduced_max_width = 0;

  bool accepts_jobs() const { return state != Availability::Unavailable; }
  /// Whether queued work runs in this state.
  bool processes_jobs() const {
    return state == Availability::Available ||
           (state == Availability::Degraded && degraded_semantics == DegradedSemantics::ReducedCapacity);
  }

  static TargetStatus available() { return {}; }
  static TargetStatus unavailable() { return {Availability::Unavailable, DegradedSemantics::AcceptHold, 0}; }
  static TargetStatus degraded_hold() { return {Availability::Degraded, DegradedSemantics::AcceptHold, 0}; }
  static TargetStatus degraded_reduced(int max_width) {
    return {Availability::Degraded, DegradedSemantics::ReducedCapacity, max_width};
  }
};

/// [start, end) in simulated seconds; relative to the period when the
/// schedule is periodic.
struct AvailabilityWindow {
  SimTime start = 0;
  SimTime end = 0;
  TargetStatus status;
};

/// Time-windowed target status. Anything outside every window is Available.
class AvailabilitySchedule {
 public:
  AvailabilitySchedule() = default;
  /// `period` = 0 for absolute windows; otherwise windows live in [0, period)
  /// and repeat. Windows must not overlap.
  AvailabilitySchedule(std::vector<AvailabilityWindow> windows, SimTime period = 0);

  static AvailabilitySchedule always(TargetStatus status);
  /// Degraded (AcceptHold) outside [open, close) each day; `open` may be later
  /// than `close` for windows that wrap past midnight.
  static AvailabilitySchedule nightly(SimTime open, SimTime close);

  TargetStatus status_at(SimTime t) const;
  /// First instant >= from at which queued jobs run, if any.
  std::optional<SimTime> next_processing_time(SimTime from) const;
  /// Fraction of [from, to) spent Available.
  double available_fraction(SimTime from, SimTime to) const;

  SimTime period() const { return period_; }
  const std::vector<AvailabilityWindow>& windows() const { return windows_; }

 private:
  std::vector<AvailabilityWindow> windows_;
  SimTime period_ = 0;
};

/// Heavy-tailed queue waits. actual ~ exp(mu + sigma Z1);
/// published estimate = bias * exp(mu + predictor_sigma Z2).
struct QueueModel {
  double mu = 6.0;
  double sigma = 1.0;
  double predictor_bias = 1.0;
  double predictor_sigma = 1.0;
};

void validate(const QueueModel& q);

struct QueueDraw {
  SimTime predicted = 1;
  SimTime actual = 1;
};

/// Both values are rounded up to whole seconds and are at least 1.
QueueDraw draw_queue_wait(const QueueModel& q, std::uint64_t seed);

struct ProviderProfile {
  CloudKind cloud = CloudKind::SimAzure;
  std::string target_name;
  GateSetProfile gate_profile = efficient_profile();
  std::optional<std::int64_t> gate_limit;
  int max_width = 25;
  QueueModel queue;
  AvailabilitySchedule availability;
  CostModel cost_model = FreePricing{};
  NoiseSpec noise = NoNoise{};
  bool exposes_avg_queue_time = true;
  bool exposes_queue_position = false;
  bool error_mitigation = false;
  SimTime execution_seconds = 60;
  /// Wider benchmark jobs sample from their known ideal output instead of a statevector.
  int statevector_max_width = 12;
};

void validate(const ProviderProfile& p);

/// Pure schedule lookup.
TargetStatus target_status(const ProviderProfile& profile, SimTime clock);

/// Bundled targets: aria1-aws, aria1-azure, forte1-aws, garnet-aws, h1-azure,
/// h2-azure, aria1-azure-emulator, h1-azure-emulator, h2-azure-emulator.
std::vector<std::string> preset_names();
ProviderProfile preset(std::string_view name);

struct JobHandle {
  std::uint64_t id = 0;
  friend auto operator<=>(const JobHandle&, const JobHandle&) = default;
};

struct SubmitResult {
  JobStatus status = JobStatus::Submitted;
  /// Absent when the target refused the submission outright.
  std::optional<JobHandle> handle;
  TargetStatus observed;
  GateCensus census;
  std::optional<SimTime> predicted_wait;
  std::optional<SimTime> actual_wait;
  std::optional<std::int64_t> queue_position;
  std::string error_message;
};

struct PollResult {
  JobStatus status = JobStatus::Submitted;
  std::optional<SimTime> executed_at;
  std::optional<CountsDistribution> counts;
  std::string error_message;
};

/// One simulated cloud target. submit/poll/cancel are serialized internally;
/// simulation runs outside the lock so several jobs can execute at once.
class SimulatedProvider {
 public:
  explicit SimulatedProvider(ProviderProfile profile);

  const ProviderProfile& profile() const { return profile_; }

  SubmitResult submit(const Circuit& c, std::int64_t shots, SimTime clock, std::uint64_t seed);
  PollResult poll(JobHandle handle, SimTime clock);
  JobStatus cancel(JobHandle handle);
  TargetStatus target_status(SimTime clock) const { return qbench::target_status(profile_, clock); }
  /// Simulated time at which the job finishes, when it ever does.
  std::optional<SimTime> completion_time(JobHandle handle) const;

 private:
  struct Job {
    std::shared_ptr<const Circuit> circuit;
    std::int64_t shots = 0;
    std::uint64_t seed = 0;
    SimTime submitted_at = 0;
    std::optional<SimTime> completes_at;
    JobStatus status = JobStatus::Submitted;
    std::optional<CountsDistribution> counts;
    std::string error_message;
  };

  CountsDistribution execute(const Job& job) const;

  ProviderProfile profile_;
  mutable std::mutex mu_;
  std::map<std::uint64_t, Job> jobs_;
  std::uint64_t next_id_ = 1;
};

}  // namespace qbench
