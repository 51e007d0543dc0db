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

#include "qbench/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <tuple>

namespace qbench {

namespace {

double total_weight(const ProbabilityMap& m) {
  double t = 0.0;
  for (const auto& [k, v] : m) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("distribution weights must be finite and >= 0");
    t += v;
  }
  if (!(t > 0.0)) throw std::invalid_argument("distribution is empty");
  return t;
}

ProbabilityMap to_map(const CountsDistribution& d) {
  ProbabilityMap m;
  for (const auto& [k, v] : d.counts) m[k] = static_cast<double>(v);
  return m;
}

// Mean and population standard deviation.
std::pair<double, double> mean_std(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size()))};
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

__extension__ typedef __int128 Wide;

using GroupKey = std::tuple<int, CloudKind, std::string>;

std::map<GroupKey, std::vector<const JobRecord*>> group(const std::vector<JobRecord>& records, bool processed_only) {
  std::map<GroupKey, std::vector<const JobRecord*>> g;
  for (const auto& r : records) {
    if (processed_only && r.status != JobStatus::Processed) continue;
    g[{r.qubits, r.cloud, r.target}].push_back(&r);
  }
  return g;
}

std::vector<JobRecord> processed(const std::vector<JobRecord>& records) {
  std::vector<JobRecord> out;
  for (const auto& r : records) {
    if (r.status == JobStatus::Processed) out.push_back(r);
  }
  return out;
}

}  // namespace

double hellinger_fidelity(const ProbabilityMap& p, const ProbabilityMap& q) {
  const double tp = total_weight(p);
  const double tq = total_weight(q);
  double bc = 0.0;
  // Only the intersection of supports contributes.
  for (const auto& [k, v] : p) {
    const auto it = q.find(k);
    if (it != q.end()) bc += std::sqrt((v / tp) * (it->second / tq));
  }
  return std::clamp(bc * bc, 0.0, 1.0);
}

double hellinger_fidelity(const CountsDistribution& p, const CountsDistribution& q) {
  return hellinger_fidelity(to_map(p), to_map(q));
}

FidelityScore score_against_ideal(const CountsDistribution& measured, const std::string& ideal) {
  return {hellinger_fidelity(to_map(measured), ProbabilityMap{{ideal, 1.0}}), measured.shots, ideal};
}

bool classify_success(double fidelity) { return fidelity >= kSuccessThreshold; }

std::optional<TwoQubitGateEstimate> infer_f2qg(double fidelity, std::int64_t n_2q) {
  if (n_2q < 1) throw std::invalid_argument("two-qubit gate count must be >= 1");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw std::invalid_argument("fidelity must lie in [0, 1]");
  if (fidelity == 0.0) return std::nullopt;
  const double f = std::pow(fidelity, 1.0 / static_cast<double>(n_2q));
  return TwoQubitGateEstimate{f, 1.0 - f, n_2q};
}

double debias_fidelity(double hellinger, int qubits) {
  if (qubits < 1 || qubits > 62) throw std::invalid_argument("qubits must be in [1, 62]");
  const double floor = std::ldexp(1.0, -qubits);
  return std::clamp((hellinger - floor) / (1.0 - floor), 0.0, 1.0);
}

std::optional<TwoQubitGateEstimate> infer_f2qg_debiased(double hellinger, int qubits, std::int64_t n_2q) {
  return infer_f2qg(debias_fidelity(hellinger, qubits), n_2q);
}

std::vector<AggregateRow> aggregate(const std::vector<JobRecord>& records) {
  if (records.empty()) throw EmptySelection("no records to aggregate");
  for (const auto& r : records) {
    if (r.status != JobStatus::Processed || !r.fidelity) {
      throw std::invalid_argument("aggregate needs Processed records; " + r.job_id + " is " +
                                  std::string(to_string(r.status)));
    }
  }
  std::vector<AggregateRow> rows;
  for (const auto& [key, members] : group(records, true)) {
    AggregateRow row;
    std::tie(row.qubits, row.cloud, row.target) = key;
    row.job_count = static_cast<std::int64_t>(members.size());
    std::vector<double> fids;
    std::vector<double> costs;
    Wide cost_sum = 0;
    for (const JobRecord* r : members) {
      fids.push_back(*r->fidelity);
      costs.push_back(static_cast<double>(r->cost.micros()));
      cost_sum += r->cost.micros();
    }
    std::tie(row.mean_fidelity, row.fidelity_std) = mean_std(fids);
    const Wide n = row.job_count;
    row.mean_cost = Money::from_micros(static_cast<std::int64_t>((2 * cost_sum + n) / (2 * n)));
    row.cost_std = Money::from_micros(static_cast<std::int64_t>(std::llround(mean_std(costs).second)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QueuePrediction queue_prediction_report(const std::vector<JobRecord>& records) {
  QueuePrediction out;
  std::size_t over = 0;
  for (const auto& r : records) {
    if (!r.predicted_wait || !r.actual_wait) continue;
    out.points.emplace_back(*r.predicted_wait, *r.actual_wait);
    if (*r.predicted_wait > *r.actual_wait) ++over;
  }
  if (out.points.empty()) throw EmptySelection("no records carry both predicted and actual waits");
  out.fraction_overestimated = static_cast<double>(over) / static_cast<double>(out.points.size());
  return out;
}

std::string_view to_string(ReportKind k) {
  switch (k) {
    case ReportKind::Table6:
      return "table6";
    case ReportKind::FidelityVsQubits:
      return "fidelity_vs_qubits";
    case ReportKind::FidelityVsTime:
      return "fidelity_vs_time";
    case ReportKind::CostVsFidelity:
      return "cost_vs_fidelity";
    case ReportKind::Availability:
      return "availability";
    case ReportKind::QueuePrediction:
      return "queue_prediction";
    case ReportKind::ErrorVsTarget:
      return "error_vs_target";
  }
  return "?";
}

std::vector<std::string> report_kind_names() {
  std::vector<std::string> out;
  for (ReportKind k : {ReportKind::Table6, ReportKind::FidelityVsQubits, ReportKind::FidelityVsTime,
                       ReportKind::CostVsFidelity, ReportKind::Availability, ReportKind::QueuePrediction,
                       ReportKind::ErrorVsTarget}) {
    out.emplace_back(to_string(k));
  }
  return out;
}

ReportKind report_kind_from_string(std::string_view s) {
  for (ReportKind k : {ReportKind::Table6, ReportKind::FidelityVsQubits, ReportKind::FidelityVsTime,
                       ReportKind::CostVsFidelity, ReportKind::Availability, ReportKind::QueuePrediction,
                       ReportKind::ErrorVsTarget}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown report kind '" + std::string(s) + "'");
}

std::size_t write_report(ReportKind kind, const std::vector<JobRecord>& records, std::ostream& os) {
  const char* eol = "\r\n";
  switch (kind) {
    case ReportKind::Table6: {
      const auto done = processed(records);
      if (done.empty()) throw EmptySelection("no Processed records selected");
      const auto rows = aggregate(done);
      os << "index,qubits,cloud,target,fidelity,fid_std,jobs,cost,cost_std" << eol;
      std::size_t i = 0;
      for (const auto& r : rows) {
        os << i++ << ',' << r.qubits << ',' << to_string(r.cloud) << ',' << csv_escape(r.target) << ','
           << fixed(r.mean_fidelity, 4) << ',' << fixed(r.fidelity_std, 4) << ',' << r.job_count << ','
           << r.mean_cost.to_string() << ',' << r.cost_std.to_string() << eol;
      }
      return rows.size();
    }
    case ReportKind::FidelityVsQubits:
    case ReportKind::FidelityVsTime: {
      auto done = processed(records);
      if (done.empty()) throw EmptySelection("no Processed records selected");
      std::stable_sort(done.begin(), done.end(), record_order);
      if (kind == ReportKind::FidelityVsQubits) {
        os << "job_id,cloud,target,qubits,fidelity,success" << eol;
      } else {
        os << "job_id,cloud,target,qubits,day,executed_at,fidelity" << eol;
      }
      for (const auto& r : done) {
        os << csv_escape(r.job_id) << ',' << to_string(r.cloud) << ',' << csv_escape(r.target) << ',' << r.qubits
           << ',';
        if (kind == ReportKind::FidelityVsQubits) {
          os << render_field(r, "fidelity") << ',' << (*r.success ? "true" : "false") << eol;
        } else {
          const SimTime t = r.executed_at.value_or(r.submitted_at);
          os << t / kSecondsPerDay << ',' << t << ',' << render_field(r, "fidelity") << eol;
        }
      }
      return done.size();
    }
    case ReportKind::CostVsFidelity: {
      const auto done = processed(records);
      if (done.empty()) throw EmptySelection("no Processed records selected");
      const auto rows = aggregate(done);
      os << "qubits,cloud,target,jobs,mean_cost,mean_fidelity" << eol;
      for (const auto& r : rows) {
        os << r.qubits << ',' << to_string(r.cloud) << ',' << csv_escape(r.target) << ',' << r.job_count << ','
           << r.mean_cost.to_string() << ',' << fixed(r.mean_fidelity, 4) << eol;
      }
      return rows.size();
    }
    case ReportKind::Availability: {
      if (records.empty()) throw EmptySelection("no records selected");
      std::map<std::pair<CloudKind, std::string>, std::array<std::int64_t, 3>> tally;
      for (const auto& r : records) ++tally[{r.cloud, r.target}][static_cast<std::size_t>(r.target_status)];
      os << "cloud,target,submissions,available,degraded,unavailable,available_pct" << eol;
      for (const auto& [key, t] : tally) {
        const std::int64_t n = t[0] + t[1] + t[2];
        os << to_string(key.first) << ',' << csv_escape(key.second) << ',' << n << ',' << t[0] << ',' << t[1] << ','
           << t[2] << ',' << fixed(100.0 * static_cast<double>(t[0]) / static_cast<double>(n), 2) << eol;
      }
      return tally.size();
    }
    case ReportKind::QueuePrediction: {
      std::vector<JobRecord> sel;
      for (const auto& r : records) {
        if (r.predicted_wait && r.actual_wait) sel.push_back(r);
      }
      if (sel.empty()) throw EmptySelection("no records carry both predicted and actual waits");
      std::stable_sort(sel.begin(), sel.end(), record_order);
      os << "job_id,cloud,target,predicted_wait,actual_wait,overestimated" << eol;
      for (const auto& r : sel) {
        os << csv_escape(r.job_id) << ',' << to_string(r.cloud) << ',' << csv_escape(r.target) << ','
           << *r.predicted_wait << ',' << *r.actual_wait << ','
           << (*r.predicted_wait > *r.actual_wait ? "true" : "false") << eol;
      }
      return sel.size();
    }
    case ReportKind::ErrorVsTarget: {
      std::map<GroupKey, std::vector<double>> errors;
      std::map<GroupKey, std::int64_t> skipped;
      for (const auto& r : records) {
        if (r.status != JobStatus::Processed || r.census.n_2q < 1) continue;
        const GroupKey key{r.qubits, r.cloud, r.target};
        const auto est = infer_f2qg(*r.fidelity, r.census.n_2q);
        if (est) {
          errors[key].push_back(est->error);
        } else {
          ++skipped[key];
          errors[key];
        }
      }
      if (errors.empty()) throw EmptySelection("no Processed records with two-qubit gates selected");
      os << "qubits,cloud,target,jobs,no_estimate,error_mean,error_std,log10_jobs,log10_error_mean,log10_error_std"
         << eol;
      for (const auto& [key, errs] : errors) {
        const auto& [q, cloud, target] = key;
        os << q << ',' << to_string(cloud) << ',' << csv_escape(target) << ',' << errs.size() << ','
           << (skipped.count(key) ? skipped.at(key) : 0) << ',';
        if (errs.empty()) {
          os << ",,0,," << eol;
          continue;
        }
        const auto [m, s] = mean_std(errs);
        os << fixed(m, 6) << ',' << fixed(s, 6) << ',';
        std::vector<double> logs;
        for (double e : errs) {
          if (e > 0.0) logs.push_back(std::log10(e));
        }
        os << logs.size() << ',';
        if (logs.empty()) {
          os << ',' << eol;
        } else {
          const auto [lm, ls] = mean_std(logs);
          os << fixed(lm, 6) << ',' << fixed(ls, 6) << eol;
        }
      }
      return errors.size();
    }
  }
  throw std::logic_error("unhandled report kind");
}

}  // namespace qbench
