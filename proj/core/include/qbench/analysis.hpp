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
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbench/costing.hpp"
#include "qbench/providers.hpp"
#include "qbench/simulator.hpp"
#include "qbench/store.hpp"

namespace qbench {

/// 1/e. Fidelities at or above it count as successful runs.
inline constexpr double kSuccessThreshold = 0.36787944117144233;

struct FidelityScore {
  double value = 0.0;
  std::int64_t shots = 0;
  /// Identifies the ideal reference, e.g. the expected bitstring.
  std::string reference;
};

using ProbabilityMap = std::map<std::string, double>;

/// (sum_x sqrt(p(x) q(x)))^2 over normalized inputs. Throws on empty or
/// non-positive totals and on negative weights.
double hellinger_fidelity(const ProbabilityMap& p, const ProbabilityMap& q);
double hellinger_fidelity(const CountsDistribution& p, const CountsDistribution& q);

/// Fidelity of measured counts against the delta distribution on `ideal`.
FidelityScore score_against_ideal(const CountsDistribution& measured, const std::string& ideal);

bool classify_success(double fidelity);
inline bool classify_success(const FidelityScore& s) { return classify_success(s.value); }

struct TwoQubitGateEstimate {
  double f_2qg = 1.0;
  double error = 0.0;
  std::int64_t n_2q = 0;
};

/// f_2qg = f^(1/n). Returns no estimate for f = 0. Throws for n < 1 or f
/// outside [0, 1].
std::optional<TwoQubitGateEstimate> infer_f2qg(double fidelity, std::int64_t n_2q);

/// Removes the uniform floor from a delta-reference fidelity:
/// (h - 2^-q) / (1 - 2^-q), clamped to [0, 1].
double debias_fidelity(double hellinger, int qubits);

/// infer_f2qg applied to the de-biased fidelity.
std::optional<TwoQubitGateEstimate> infer_f2qg_debiased(double hellinger, int qubits, std::int64_t n_2q);

struct AggregateRow {
  int qubits = 0;
  CloudKind cloud = CloudKind::SimAWS;
  std::string target;
  double mean_fidelity = 0.0;
  double fidelity_std = 0.0;
  std::int64_t job_count = 0;
  Money mean_cost;
  Money cost_std;
};

class EmptySelection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Groups Processed records by (qubits, cloud, target). Means are arithmetic,
/// deviations are population deviations; money results are rounded half-up
/// to the micro-dollar. Throws EmptySelection for no input and
/// std::invalid_argument for records that are not Processed.
std::vector<AggregateRow> aggregate(const std::vector<JobRecord>& records);

struct QueuePrediction {
  /// Fraction of jobs with predicted > actual (strict).
  double fraction_overestimated = 0.0;
  std::vector<std::pair<SimTime, SimTime>> points;  // (predicted, actual)
};

/// Uses records carrying both waits; throws EmptySelection when none do.
QueuePrediction queue_prediction_report(const std::vector<JobRecord>& records);

enum class ReportKind {
  Table6,
  FidelityVsQubits,
  FidelityVsTime,
  CostVsFidelity,
  Availability,
  QueuePrediction,
  ErrorVsTarget,
};

std::string_view to_string(ReportKind k);
ReportKind report_kind_from_string(std::string_view s);
std::vector<std::string> report_kind_names();

/// Writes the CSV for `kind` and returns the number of data rows. Throws
/// EmptySelection when the selection yields no rows.
std::size_t write_report(ReportKind kind, const std::vector<JobRecord>& records, std::ostream& os);

}  // namespace qbench
