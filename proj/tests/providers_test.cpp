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

#include <gtest/gtest.h>

#include <cmath>

#include "qbench/random.hpp"

namespace qbench {
namespace {

constexpr SimTime kHour = 3600;

ProviderProfile open_target(NoiseSpec noise = NoNoise{}) {
  ProviderProfile p;
  p.cloud = CloudKind::SimAzure;
  p.target_name = "open";
  p.queue = QueueModel{std::log(600.0), 0.5, 1.0, 0.5};
  p.noise = noise;
  return p;
}

std::int64_t total(const CountsDistribution& d) {
  std::int64_t s = 0;
  for (const auto& [k, v] : d.counts) s += v;
  return s;
}

TEST(Schedule, DefaultsToAvailableOutsideWindows) {
  const AvailabilitySchedule s({{10, 20, TargetStatus::unavailable()}});
  EXPECT_EQ(s.status_at(9).state, Availability::Available);
  EXPECT_EQ(s.status_at(10).state, Availability::Unavailable);
  EXPECT_EQ(s.status_at(19).state, Availability::Unavailable);
  EXPECT_EQ(s.status_at(20).state, Availability::Available);
  EXPECT_EQ(AvailabilitySchedule{}.status_at(12345).state, Availability::Available);
}

TEST(Schedule, RejectsOverlapAndEmptyWindows) {
  EXPECT_THROW(AvailabilitySchedule({{0, 10, TargetStatus::unavailable()}, {5, 15, TargetStatus::degraded_hold()}}),
               std::invalid_argument);
  EXPECT_THROW(AvailabilitySchedule({{10, 10, TargetStatus::unavailable()}}), std::invalid_argument);
  EXPECT_THROW(AvailabilitySchedule({{0, 200, TargetStatus::unavailable()}}, 100), std::invalid_argument);
}

TEST(Schedule, PeriodicWindowsRepeat) {
  const AvailabilitySchedule s({{2 * kHour, 4 * kHour, TargetStatus::unavailable()}}, kSecondsPerDay);
  for (int day = 0; day < 5; ++day) {
    const SimTime base = day * kSecondsPerDay;
    EXPECT_EQ(s.status_at(base + 3 * kHour).state, Availability::Unavailable);
    EXPECT_EQ(s.status_at(base + 5 * kHour).state, Availability::Available);
  }
  EXPECT_NEAR(s.available_fraction(0, 3 * kSecondsPerDay), 22.0 / 24.0, 1e-12);
}

TEST(Schedule, AlwaysPresets) {
  const auto h2 = preset("h2-azure");
  const auto aria2 = preset("aria2-aws");
  for (SimTime t : {SimTime{0}, SimTime{12345}, 40 * kSecondsPerDay + 7}) {
    EXPECT_EQ(target_status(h2, t).state, Availability::Available);
    EXPECT_EQ(target_status(aria2, t).state, Availability::Unavailable);
  }
}

TEST(Schedule, NightlyWindowWrapsMidnight) {
  const auto s = AvailabilitySchedule::nightly(17 * kHour, 2 * kHour);
  EXPECT_EQ(s.status_at(18 * kHour).state, Availability::Available);
  EXPECT_EQ(s.status_at(kSecondsPerDay + 1 * kHour).state, Availability::Available);
  EXPECT_EQ(s.status_at(2 * kHour).state, Availability::Degraded);
  EXPECT_EQ(s.status_at(12 * kHour).state, Availability::Degraded);
  EXPECT_EQ(s.status_at(17 * kHour - 1).state, Availability::Degraded);
  EXPECT_EQ(s.status_at(12 * kHour).degraded_semantics, DegradedSemantics::AcceptHold);
  EXPECT_EQ(*s.next_processing_time(9 * kHour), 17 * kHour);
  EXPECT_EQ(*s.next_processing_time(20 * kHour), 20 * kHour);
  EXPECT_NEAR(s.available_fraction(0, kSecondsPerDay), 9.0 / 24.0, 1e-12);
}

TEST(Schedule, ProcessingNeverResumesWhenAlwaysUnavailable) {
  EXPECT_FALSE(AvailabilitySchedule::always(TargetStatus::unavailable()).next_processing_time(0).has_value());
  EXPECT_FALSE(AvailabilitySchedule::always(TargetStatus::degraded_hold()).next_processing_time(0).has_value());
  EXPECT_EQ(*AvailabilitySchedule::always(TargetStatus::degraded_reduced(4)).next_processing_time(9), 9);
}

TEST(Queue, DrawsArePositiveAndSeeded) {
  const QueueModel q{6.0, 1.0, 1.0, 1.0};
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto d = draw_queue_wait(q, s);
    EXPECT_GE(d.actual, 1);
    EXPECT_GE(d.predicted, 1);
    EXPECT_EQ(d.actual, draw_queue_wait(q, s).actual);
  }
  EXPECT_THROW(validate(QueueModel{6.0, 0.0, 1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(validate(QueueModel{6.0, 1.0, 0.0, 1.0}), std::invalid_argument);
}

double overestimate_fraction(const QueueModel& q, int n) {
  int over = 0;
  for (int i = 0; i < n; ++i) {
    const auto d = draw_queue_wait(q, derive_seed({77, static_cast<std::uint64_t>(i)}));
    over += d.predicted > d.actual;
  }
  return static_cast<double>(over) / n;
}

TEST(Queue, PredictorBiasShiftsOverestimateRate) {
  const int n = 10000;
  const double five_sigma = 5.0 * std::sqrt(0.25 / n);
  // Large mu keeps ceil() ties negligible.
  const double unbiased = overestimate_fraction({12.0, 1.0, 1.0, 1.0}, n);
  EXPECT_NEAR(unbiased, 0.5, five_sigma);
  const double biased = overestimate_fraction({12.0, 1.0, 2.0, 1.0}, n);
  EXPECT_GT(biased, 0.5 + five_sigma);
  // Independent normal draws: P(ln b + s Z2 > s Z1) = Phi(ln b / (s sqrt 2)).
  const double want = 0.5 * std::erfc(-std::log(2.0) / (1.0 * std::sqrt(2.0) * std::sqrt(2.0)));
  EXPECT_NEAR(biased, want, 5.0 * std::sqrt(want * (1 - want) / n));
}

TEST(Queue, AzureAriaPresetOverestimatesAboutAThirdOfJobs) {
  const QueueModel q = preset("aria1-azure").queue;
  const int n = 10000;
  const double got = overestimate_fraction(q, n);
  EXPECT_NEAR(got, 0.36, 5.0 * std::sqrt(0.36 * 0.64 / n));
}

TEST(Provider, UnavailableTargetRefusesSubmission) {
  SimulatedProvider aria2(preset("aria2-aws"));
  const auto r = aria2.submit(build_qft_benchmark(8, 3), 500, 0, 1);
  EXPECT_EQ(r.status, JobStatus::Unavailable);
  EXPECT_FALSE(r.handle.has_value());
}

TEST(Provider, AwsGateLimitAndAzureWidth) {
  SimulatedProvider aws(preset("aria1-aws"));
  EXPECT_EQ(aws.submit(build_qft_benchmark(16, 5), 500, 0, 1).status, JobStatus::Submitted);
  const auto big = aws.submit(build_qft_benchmark(18, 5), 500, 0, 2);
  EXPECT_EQ(big.status, JobStatus::Error);
  EXPECT_NE(big.error_message.find("gate limit"), std::string::npos);
  SimulatedProvider azure(preset("aria1-azure"));
  EXPECT_EQ(azure.submit(build_qft_benchmark(18, 5), 500, 0, 3).status, JobStatus::Submitted);
  EXPECT_EQ(azure.submit(build_qft_benchmark(25, 5), 500, 0, 4).status, JobStatus::Submitted);
  const auto wide = azure.submit(build_qft_benchmark(26, 5), 500, 0, 5);
  EXPECT_EQ(wide.status, JobStatus::Error);
  EXPECT_NE(wide.error_message.find("width"), std::string::npos);
}

TEST(Provider, QueueInformationFollowsCloud) {
  SimulatedProvider aws(preset("aria1-aws"));
  SimulatedProvider azure(preset("aria1-azure"));
  const auto a = aws.submit(build_qft_benchmark(8, 1), 10, 0, 1);
  const auto b = azure.submit(build_qft_benchmark(8, 1), 10, 0, 1);
  EXPECT_FALSE(a.predicted_wait.has_value());
  EXPECT_TRUE(a.queue_position.has_value());
  EXPECT_TRUE(b.predicted_wait.has_value());
  EXPECT_FALSE(b.queue_position.has_value());
  EXPECT_EQ(*aws.submit(build_qft_benchmark(8, 1), 10, 0, 2).queue_position, 2);
}

TEST(Provider, LifecycleAndShotConservation) {
  SimulatedProvider p(open_target(GlobalDepolarizing{0.98}));
  const auto r = p.submit(build_qft_benchmark(6, 9), 777, 100, 42);
  ASSERT_EQ(r.status, JobStatus::Submitted);
  const SimTime done = *p.completion_time(*r.handle);
  EXPECT_EQ(done, 100 + *r.actual_wait + p.profile().execution_seconds);
  EXPECT_EQ(p.poll(*r.handle, done - 1).status, JobStatus::Submitted);
  const auto first = p.poll(*r.handle, done);
  ASSERT_EQ(first.status, JobStatus::Processed);
  EXPECT_EQ(total(*first.counts), 777);
  EXPECT_EQ(*first.executed_at, done - p.profile().execution_seconds);
  const auto again = p.poll(*r.handle, done + 1000);
  EXPECT_EQ(again.counts, first.counts);
  EXPECT_EQ(p.cancel(*r.handle), JobStatus::Processed);
  EXPECT_THROW(p.poll(JobHandle{999}, 0), std::out_of_range);
  EXPECT_THROW(p.cancel(JobHandle{999}), std::out_of_range);
  EXPECT_THROW(p.submit(build_qft_benchmark(6, 9), 0, 0, 1), std::invalid_argument);
}

TEST(Provider, CancelIsIdempotentAndTerminal) {
  SimulatedProvider p(open_target());
  const auto r = p.submit(build_qft_benchmark(5, 2), 100, 0, 1);
  EXPECT_EQ(p.cancel(*r.handle), JobStatus::Canceled);
  EXPECT_EQ(p.cancel(*r.handle), JobStatus::Canceled);
  EXPECT_EQ(p.poll(*r.handle, kForever - 1).status, JobStatus::Canceled);
  EXPECT_FALSE(p.completion_time(*r.handle).has_value());
}

TEST(Provider, AcceptHoldDefersExecutionToNextOpenWindow) {
  ProviderProfile prof = open_target();
  prof.availability = AvailabilitySchedule::nightly(17 * kHour, 2 * kHour);
  SimulatedProvider p(prof);
  const SimTime submit_at = 9 * kHour;
  const auto r = p.submit(build_qft_benchmark(6, 4), 200, submit_at, 8);
  ASSERT_EQ(r.status, JobStatus::Submitted);
  EXPECT_EQ(r.observed.state, Availability::Degraded);
  ASSERT_LT(submit_at + *r.actual_wait, 17 * kHour);
  EXPECT_EQ(p.poll(*r.handle, 17 * kHour - 1).status, JobStatus::Submitted);
  const auto done = p.poll(*r.handle, 17 * kHour + prof.execution_seconds);
  ASSERT_EQ(done.status, JobStatus::Processed);
  EXPECT_EQ(*done.executed_at, 17 * kHour);
}

TEST(Provider, ReducedCapacityLowersWidthCap) {
  ProviderProfile prof = open_target();
  prof.availability = AvailabilitySchedule::always(TargetStatus::degraded_reduced(8));
  SimulatedProvider p(prof);
  EXPECT_EQ(p.submit(build_qft_benchmark(8, 1), 10, 0, 1).status, JobStatus::Submitted);
  EXPECT_EQ(p.submit(build_qft_benchmark(10, 1), 10, 0, 1).status, JobStatus::Error);
}

TEST(Provider, WideBenchmarksSampleWithoutStatevector) {
  ProviderProfile prof = open_target(GlobalDepolarizing{0.999});
  prof.max_width = 28;
  SimulatedProvider p(prof);
  const std::uint64_t n = random_input(24, 3);
  const auto r = p.submit(build_qft_benchmark(24, n), 500, 0, 1);
  const auto done = p.poll(*r.handle, *p.completion_time(*r.handle));
  ASSERT_EQ(done.status, JobStatus::Processed);
  EXPECT_EQ(total(*done.counts), 500);
  EXPECT_GT(done.counts->counts.at(ideal_output(24, n)), 0);
}

TEST(Provider, TrajectoryNoiseTooWideBecomesError) {
  ProviderProfile prof = open_target(PauliTrajectory{0.01});
  prof.statevector_max_width = 6;
  SimulatedProvider p(prof);
  const auto r = p.submit(build_qft_benchmark(8, 1), 10, 0, 1);
  const auto done = p.poll(*r.handle, *p.completion_time(*r.handle));
  EXPECT_EQ(done.status, JobStatus::Error);
  EXPECT_FALSE(done.error_message.empty());
}

TEST(Provider, SameSeedSameCounts) {
  SimulatedProvider a(open_target(GlobalDepolarizing{0.9}));
  SimulatedProvider b(open_target(GlobalDepolarizing{0.9}));
  const auto ra = a.submit(build_qft_benchmark(6, 7), 300, 0, 99);
  const auto rb = b.submit(build_qft_benchmark(6, 7), 300, 0, 99);
  EXPECT_EQ(ra.actual_wait, rb.actual_wait);
  EXPECT_EQ(a.poll(*ra.handle, kForever - 1).counts, b.poll(*rb.handle, kForever - 1).counts);
}

TEST(Presets, AllValidate) {
  for (const auto& name : preset_names()) {
    const auto p = preset(name);
    EXPECT_NO_THROW(validate(p)) << name;
    EXPECT_EQ(p.target_name, name);
    EXPECT_EQ(p.exposes_avg_queue_time, p.cloud == CloudKind::SimAzure) << name;
    EXPECT_EQ(p.exposes_queue_position, p.cloud == CloudKind::SimAWS) << name;
  }
  EXPECT_THROW(preset("nope"), std::invalid_argument);
}

TEST(Enums, StringsRoundTrip) {
  for (auto s : {JobStatus::Submitted, JobStatus::Processed, JobStatus::Error, JobStatus::Canceled,
                 JobStatus::Unavailable}) {
    EXPECT_EQ(job_status_from_string(to_string(s)), s);
  }
  for (auto a : {Availability::Available, Availability::Degraded, Availability::Unavailable}) {
    EXPECT_EQ(availability_from_string(to_string(a)), a);
  }
  EXPECT_EQ(cloud_from_string("SimAWS"), CloudKind::SimAWS);
  EXPECT_THROW(cloud_from_string("GCP"), std::invalid_argument);
  EXPECT_FALSE(is_terminal(JobStatus::Submitted));
  EXPECT_TRUE(is_terminal(JobStatus::Unavailable));
}

}  // namespace
}  // namespace qbench
