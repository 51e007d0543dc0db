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

#include "qbench/providers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "qbench/random.hpp"

namespace qbench {

namespace {

constexpr SimTime kWeek = 7 * kSecondsPerDay;
constexpr SimTime kHour = 3600;

SimTime floor_mod(SimTime t, SimTime p) {
  SimTime r = t % p;
  return r < 0 ? r + p : r;
}

SimTime ceil_seconds(double v) {
  if (!(v < 9.0e15)) return static_cast<SimTime>(9.0e15);
  return std::max<SimTime>(1, static_cast<SimTime>(std::ceil(v)));
}

}  // namespace

std::string_view to_string(CloudKind c) { return c == CloudKind::SimAWS ? "SimAWS" : "SimAzure"; }

std::string_view to_string(Availability a) {
  switch (a) {
    case Availability::Available:
      return "Available";
    case Availability::Degraded:
      return "Degraded";
    case Availability::Unavailable:
      return "Unavailable";
  }
  return "?";
}

std::string_view to_string(JobStatus s) {
  switch (s) {
    case JobStatus::Submitted:
      return "Submitted";
    case JobStatus::Processed:
      return "Processed";
    case JobStatus::Error:
      return "Error";
    case JobStatus::Canceled:
      return "Canceled";
    case JobStatus::Unavailable:
      return "Unavailable";
  }
  return "?";
}

CloudKind cloud_from_string(std::string_view s) {
  if (s == "SimAWS") return CloudKind::SimAWS;
  if (s == "SimAzure") return CloudKind::SimAzure;
  throw std::invalid_argument("unknown cloud '" + std::string(s) + "'");
}

Availability availability_from_string(std::string_view s) {
  for (Availability a : {Availability::Available, Availability::Degraded, Availability::Unavailable}) {
    if (s == to_string(a)) return a;
  }
  throw std::invalid_argument("unknown availability '" + std::string(s) + "'");
}

JobStatus job_status_from_string(std::string_view s) {
  for (JobStatus j : {JobStatus::Submitted, JobStatus::Processed, JobStatus::Error, JobStatus::Canceled,
                      JobStatus::Unavailable}) {
    if (s == to_string(j)) return j;
  }
  throw std::invalid_argument("unknown job status '" + std::string(s) + "'");
}

bool is_terminal(JobStatus s) { return s != JobStatus::Submitted; }

AvailabilitySchedule::AvailabilitySchedule(std::vector<AvailabilityWindow> windows, SimTime period)
    : windows_(std::move(windows)), period_(period) {
  if (period_ < 0) throw std::invalid_argument("schedule period must be >= 0");
  std::sort(windows_.begin(), windows_.end(),
            [](const AvailabilityWindow& a, const AvailabilityWindow& b) { return a.start < b.start; });
  for (std::size_t i = 0; i < windows_.size(); ++i) {
    const auto& w = windows_[i];
    if (w.start >= w.end) throw std::invalid_argument("availability window must have start < end");
    if (period_ > 0 && (w.start < 0 || w.end > period_)) {
      throw std::invalid_argument("periodic availability window must lie within one period");
    }
    if (w.status.state == Availability::Degraded &&
        w.status.degraded_semantics == DegradedSemantics::ReducedCapacity && w.status.reduced_max_width < 1) {
      throw std::invalid_argument("reduced-capacity window needs a positive width");
    }
    if (i > 0 && windows_[i - 1].end > w.start) throw std::invalid_argument("availability windows overlap");
  }
}

AvailabilitySchedule AvailabilitySchedule::always(TargetStatus status) {
  if (status.state == Availability::Available) return {};
  return AvailabilitySchedule({{0, kSecondsPerDay, status}}, kSecondsPerDay);
}

AvailabilitySchedule AvailabilitySchedule::nightly(SimTime open, SimTime close) {
  if (open < 0 || open >= kSecondsPerDay || close < 0 || close >= kSecondsPerDay || open == close) {
    throw std::invalid_argument("nightly window needs distinct times within one day");
  }
  const TargetStatus hold = TargetStatus::degraded_hold();
  std::vector<AvailabilityWindow> w;
  if (open > close) {
    w.push_back({close, open, hold});
  } else {
    w.push_back({0, open, hold});
    w.push_back({close, kSecondsPerDay, hold});
  }
  return AvailabilitySchedule(std::move(w), kSecondsPerDay);
}

TargetStatus AvailabilitySchedule::status_at(SimTime t) const {
  const SimTime local = period_ > 0 ? floor_mod(t, period_) : t;
  for (const auto& w : windows_) {
    if (local >= w.start && local < w.end) return w.status;
  }
  return TargetStatus::available();
}

namespace {

// Smallest window edge strictly after t.
std::optional<SimTime> next_edge(const std::vector<AvailabilityWindow>& windows, SimTime period, SimTime t) {
  std::optional<SimTime> best;
  auto consider = [&](SimTime e) {
    if (e > t && (!best || e < *best)) best = e;
  };
  if (period > 0) {
    const SimTime base = t - floor_mod(t, period);
    for (SimTime b : {base, base + period}) {
      for (const auto& w : windows) {
        consider(b + w.start);
        consider(b + w.end);
      }
    }
  } else {
    for (const auto& w : windows) {
      consider(w.start);
      consider(w.end);
    }
  }
  return best;
}

}  // namespace

std::optional<SimTime> AvailabilitySchedule::next_processing_time(SimTime from) const {
  SimTime t = from;
  const std::size_t max_steps = 4 * windows_.size() + 4;
  for (std::size_t step = 0; step <= max_steps; ++step) {
    if (status_at(t).processes_jobs()) return t;
    const auto e = next_edge(windows_, period_, t);
    if (!e) return std::nullopt;
    t = *e;
  }
  return std::nullopt;
}

double AvailabilitySchedule::available_fraction(SimTime from, SimTime to) const {
  if (to <= from) throw std::invalid_argument("empty interval");
  SimTime t = from;
  SimTime up = 0;
  while (t < to) {
    const auto e = next_edge(windows_, period_, t);
    const SimTime end = e ? std::min(*e, to) : to;
    if (status_at(t).state == Availability::Available) up += end - t;
    t = end;
  }
  return static_cast<double>(up) / static_cast<double>(to - from);
}

void validate(const QueueModel& q) {
  if (!std::isfinite(q.mu)) throw std::invalid_argument("queue mu must be finite");
  if (!(q.sigma > 0.0) || !std::isfinite(q.sigma)) throw std::invalid_argument("queue sigma must be > 0");
  if (!(q.predictor_bias > 0.0) || !std::isfinite(q.predictor_bias)) {
    throw std::invalid_argument("predictor bias must be > 0");
  }
  if (!(q.predictor_sigma >= 0.0) || !std::isfinite(q.predictor_sigma)) {
    throw std::invalid_argument("predictor sigma must be >= 0");
  }
}

QueueDraw draw_queue_wait(const QueueModel& q, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double z_actual = rng.normal();
  const double z_predicted = rng.normal();
  return {ceil_seconds(q.predictor_bias * std::exp(q.mu + q.predictor_sigma * z_predicted)),
          ceil_seconds(std::exp(q.mu + q.sigma * z_actual))};
}

void validate(const ProviderProfile& p) {
  if (p.target_name.empty()) throw std::invalid_argument("target name must not be empty");
  if (p.max_width < 1) throw std::invalid_argument("max width must be >= 1");
  if (p.gate_limit && *p.gate_limit < 1) throw std::invalid_argument("gate limit must be >= 1");
  if (p.execution_seconds < 0) throw std::invalid_argument("execution time must be >= 0");
  if (p.statevector_max_width < 1 || p.statevector_max_width > kMaxStatevectorQubits) {
    throw std::invalid_argument("statevector width must be in [1, " + std::to_string(kMaxStatevectorQubits) + "]");
  }
  validate(p.gate_profile);
  validate(p.queue);
  validate(p.cost_model);
  validate(p.noise);
}

TargetStatus target_status(const ProviderProfile& profile, SimTime clock) {
  return profile.availability.status_at(clock);
}

namespace {

QueueModel hardware_queue(double bias = 1.0) { return {std::log(2.0 * kHour), 1.2, bias, 1.2}; }
QueueModel emulator_queue() { return {std::log(120.0), 0.6, 1.0, 0.6}; }

ProviderProfile aws_base(std::string name) {
  ProviderProfile p;
  p.cloud = CloudKind::SimAWS;
  p.target_name = std::move(name);
  p.gate_profile = redundant_profile();
  p.exposes_avg_queue_time = false;
  p.exposes_queue_position = true;
  p.queue = hardware_queue();
  return p;
}

ProviderProfile azure_base(std::string name) {
  ProviderProfile p;
  p.cloud = CloudKind::SimAzure;
  p.target_name = std::move(name);
  p.gate_profile = efficient_profile();
  p.exposes_avg_queue_time = true;
  p.exposes_queue_position = false;
  p.queue = hardware_queue();
  return p;
}

// Weekly outage [day_a h_a:00, day_b h_b:00).
AvailabilitySchedule weekly_outage(int day_a, int hour_a, int day_b, int hour_b) {
  return AvailabilitySchedule({{day_a * kSecondsPerDay + hour_a * kHour, day_b * kSecondsPerDay + hour_b * kHour,
                                TargetStatus::unavailable()}},
                              kWeek);
}

// Bias giving P(predicted > actual) = 0.36 when both log-sigmas are 1.2.
constexpr double kAzureAriaPredictorBias = 0.5443;

}  // namespace

std::vector<std::string> preset_names() {
  return {"aria1-aws",         "aria1-azure",       "aria2-aws",        "forte1-aws",
          "garnet-aws",        "h1-azure",          "h2-azure",         "aria1-azure-emulator",
          "h1-azure-emulator", "h2-azure-emulator"};
}

ProviderProfile preset(std::string_view name) {
  if (name == "aria1-aws") {
    ProviderProfile p = aws_base("aria1-aws");
    p.gate_limit = default_aws_gate_limit();
    p.max_width = 25;
    p.availability = weekly_outage(5, 8, 6, 16);
    p.cost_model = prices::aws_ionq_aria();
    p.noise = GlobalDepolarizing{0.99};
    return p;
  }
  if (name == "aria2-aws") {
    ProviderProfile p = aws_base("aria2-aws");
    p.gate_limit = default_aws_gate_limit();
    p.max_width = 25;
    p.availability = AvailabilitySchedule::always(TargetStatus::unavailable());
    p.cost_model = prices::aws_ionq_aria();
    p.noise = GlobalDepolarizing{0.99};
    return p;
  }
  if (name == "forte1-aws") {
    ProviderProfile p = aws_base("forte1-aws");
    static const std::int64_t forte_limit = gate_limit_between(redundant_profile(), 20, 22);
    p.gate_limit = forte_limit;
    p.max_width = 36;
    p.availability = weekly_outage(2, 6, 2, 18);
    p.cost_model = prices::aws_ionq_forte();
    p.noise = GlobalDepolarizing{0.995};
    return p;
  }
  if (name == "garnet-aws") {
    ProviderProfile p = aws_base("garnet-aws");
    p.max_width = 20;
    p.availability = weekly_outage(0, 0, 0, 12);
    p.cost_model = prices::aws_iqm_garnet();
    p.noise = GlobalDepolarizing{0.97};
    return p;
  }
  if (name == "aria1-azure" || name == "aria1-azure-emulator") {
    const bool emulator = name != "aria1-azure";
    ProviderProfile p = azure_base(std::string(name));
    p.max_width = 25;
    p.noise = GlobalDepolarizing{0.99};
    if (emulator) {
      p.queue = emulator_queue();
      p.execution_seconds = 10;
    } else {
      p.queue = hardware_queue(kAzureAriaPredictorBias);
      p.availability = weekly_outage(4, 6, 6, 17);
      p.cost_model = prices::azure_ionq_aria();
    }
    return p;
  }
  if (name == "h1-azure" || name == "h1-azure-emulator") {
    const bool emulator = name != "h1-azure";
    ProviderProfile p = azure_base(std::string(name));
    p.max_width = 20;
    p.noise = GlobalDepolarizing{0.998};
    if (emulator) {
      p.queue = emulator_queue();
      p.execution_seconds = 10;
      p.cost_model = prices::quantinuum_emulator();
    } else {
      // Processes 17:00-02:00; accepts but holds jobs the rest of the day.
      p.availability = AvailabilitySchedule::nightly(17 * kHour, 2 * kHour);
      p.cost_model = prices::quantinuum_hardware();
    }
    return p;
  }
  if (name == "h2-azure" || name == "h2-azure-emulator") {
    const bool emulator = name != "h2-azure";
    ProviderProfile p = azure_base(std::string(name));
    p.max_width = 56;
    p.noise = GlobalDepolarizing{0.998};
    if (emulator) {
      p.queue = emulator_queue();
      p.execution_seconds = 10;
      p.cost_model = prices::quantinuum_emulator();
    } else {
      p.cost_model = prices::quantinuum_hardware();
    }
    return p;
  }
  throw std::invalid_argument("unknown target preset '" + std::string(name) + "'");
}

SimulatedProvider::SimulatedProvider(ProviderProfile profile) : profile_(std::move(profile)) { validate(profile_); }

SubmitResult SimulatedProvider::submit(const Circuit& c, std::int64_t shots, SimTime clock, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  SubmitResult r;
  r.observed = profile_.availability.status_at(clock);
  if (!r.observed.accepts_jobs()) {
    r.status = JobStatus::Unavailable;
    r.error_message = "target not accepting submissions";
    return r;
  }

  Job job;
  job.shots = shots;
  job.seed = derive_seed({seed, 0xE8ECULL});
  job.submitted_at = clock;

  const bool reduced = r.observed.state == Availability::Degraded &&
                       r.observed.degraded_semantics == DegradedSemantics::ReducedCapacity;
  const int width_cap = reduced ? std::min(profile_.max_width, r.observed.reduced_max_width) : profile_.max_width;
  TranspileResult t = transpile(c, profile_.gate_profile);
  r.census = t.census;
  if (profile_.gate_limit && !check_gate_limit(t.census, *profile_.gate_limit)) {
    job.status = JobStatus::Error;
    job.error_message = "gate limit exceeded: " + std::to_string(t.census.total) + " > " +
                        std::to_string(*profile_.gate_limit);
  } else if (c.width() > width_cap) {
    job.status = JobStatus::Error;
    job.error_message = "circuit width " + std::to_string(c.width()) + " exceeds target maximum " +
                        std::to_string(width_cap);
  } else {
    job.circuit = std::make_shared<const Circuit>(std::move(t.circuit));
    const QueueDraw q = draw_queue_wait(profile_.queue, derive_seed({seed, 0x9E7EULL}));
    r.actual_wait = q.actual;
    if (profile_.exposes_avg_queue_time) r.predicted_wait = q.predicted;
    const auto start = profile_.availability.next_processing_time(clock + q.actual);
    if (start) job.completes_at = *start + profile_.execution_seconds;
  }

  std::lock_guard<std::mutex> lock(mu_);
  if (job.status == JobStatus::Submitted && profile_.exposes_queue_position) {
    std::int64_t ahead = 0;
    for (const auto& [id, other] : jobs_) {
      const bool live = other.status == JobStatus::Submitted || other.status == JobStatus::Processed;
      if (live && other.submitted_at <= clock && (!other.completes_at || *other.completes_at > clock)) ++ahead;
    }
    r.queue_position = ahead + 1;
  }
  const std::uint64_t id = next_id_++;
  r.status = job.status;
  r.error_message = job.error_message;
  r.handle = JobHandle{id};
  jobs_.emplace(id, std::move(job));
  return r;
}

CountsDistribution SimulatedProvider::execute(const Job& job) const {
  const Circuit& c = *job.circuit;
  const auto& meta = c.metadata();
  if (meta && c.width() > profile_.statevector_max_width) {
    const std::uint64_t ideal = from_bitstring(ideal_output(meta->qubits, meta->input));
    const OutcomeTable table = OutcomeTable::delta(c.width(), ideal);
    return std::visit(
        [&](const auto& n) -> CountsDistribution {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, NoNoise>) {
            return sample(table, job.shots, job.seed);
          } else if constexpr (std::is_same_v<T, GlobalDepolarizing>) {
            const double f = std::pow(n.f_2qg, static_cast<double>(census(c).n_2q));
            return sample_depolarized(table, f, job.shots, job.seed);
          } else {
            throw std::runtime_error("trajectory noise needs a statevector; circuit width " +
                                     std::to_string(c.width()) + " exceeds " +
                                     std::to_string(profile_.statevector_max_width));
          }
        },
        profile_.noise);
  }
  return run_noisy(c, profile_.noise, job.shots, job.seed);
}

PollResult SimulatedProvider::poll(JobHandle handle, SimTime clock) {
  Job snapshot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = jobs_.find(handle.id);
    if (it == jobs_.end()) throw std::out_of_range("unknown job handle " + std::to_string(handle.id));
    Job& job = it->second;
    PollResult r;
    r.status = job.status;
    r.error_message = job.error_message;
    if (job.status == JobStatus::Processed) {
      r.executed_at = *job.completes_at - profile_.execution_seconds;
      r.counts = job.counts;
      return r;
    }
    if (job.status != JobStatus::Submitted || !job.completes_at || clock < *job.completes_at) return r;
    snapshot.circuit = job.circuit;
    snapshot.shots = job.shots;
    snapshot.seed = job.seed;
  }

  PollResult r;
  std::optional<CountsDistribution> counts;
  std::string failure;
  try {
    counts = execute(snapshot);
  } catch (const std::exception& e) {
    failure = e.what();
  }

  std::lock_guard<std::mutex> lock(mu_);
  Job& job = jobs_.at(handle.id);
  if (job.status == JobStatus::Submitted) {
    if (counts) {
      job.status = JobStatus::Processed;
      job.counts = std::move(counts);
    } else {
      job.status = JobStatus::Error;
      job.error_message = failure;
    }
  }
  r.status = job.status;
  r.error_message = job.error_message;
  if (job.status == JobStatus::Processed) {
    r.executed_at = *job.completes_at - profile_.execution_seconds;
    r.counts = job.counts;
  }
  return r;
}

JobStatus SimulatedProvider::cancel(JobHandle handle) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = jobs_.find(handle.id);
  if (it == jobs_.end()) throw std::out_of_range("unknown job handle " + std::to_string(handle.id));
  if (it->second.status == JobStatus::Submitted) {
    it->second.status = JobStatus::Canceled;
    it->second.circuit.reset();
  }
  return it->second.status;
}

std::optional<SimTime> SimulatedProvider::completion_time(JobHandle handle) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = jobs_.find(handle.id);
  if (it == jobs_.end()) throw std::out_of_range("unknown job handle " + std::to_string(handle.id));
  if (it->second.status == JobStatus::Canceled || it->second.status == JobStatus::Error) return std::nullopt;
  return it->second.completes_at;
}

}  // namespace qbench
