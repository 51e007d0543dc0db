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
#include <fstream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "qbench/circuit.hpp"
#include "qbench/costing.hpp"
#include "qbench/providers.hpp"
#include "qbench/simulator.hpp"

namespace qbench {

/// One normalized job, as persisted. Optional fields are omitted from the
/// JSON line when absent.
struct JobRecord {
  std::string job_id;
  CloudKind cloud = CloudKind::SimAWS;
  std::string target;
  int qubits = 0;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t input = 0;
  SimTime submitted_at = 0;
  std::optional<SimTime> executed_at;
  std::optional<SimTime> predicted_wait;
  std::optional<SimTime> actual_wait;
  JobStatus status = JobStatus::Submitted;
  Availability target_status = Availability::Available;
  GateCensus census;
  std::optional<CountsDistribution> counts;
  std::optional<double> fidelity;
  std::optional<bool> success;
  Money cost;
  std::optional<std::string> error_message;

  friend bool operator==(const JobRecord&, const JobRecord&) = default;
};

/// Throws std::invalid_argument naming the first violated invariant.
void validate(const JobRecord& r);

std::string to_json_line(const JobRecord& r);
JobRecord record_from_json(std::string_view line);

/// Money rendered with at least two and at most six decimals, no rounding.
std::string exact_money_string(Money m);

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

/// One field predicate. Numeric and time fields support every operator;
/// text and enum fields compare lexicographically.
struct Predicate {
  std::string field;
  CompareOp op = CompareOp::Eq;
  std::string value;

  /// Parses "qubits>=10", "cloud=SimAWS", "status!=Error".
  static Predicate parse(std::string_view text);
};

/// Conjunction of predicates. Field names are checked at construction.
class Filter {
 public:
  Filter() = default;
  explicit Filter(std::vector<Predicate> predicates);

  /// A record missing an optional field never matches a predicate on it.
  bool matches(const JobRecord& r) const;
  const std::vector<Predicate>& predicates() const { return predicates_; }
  bool empty() const { return predicates_.empty(); }

 private:
  std::vector<Predicate> predicates_;
};

/// Every queryable field, in canonical column order.
const std::vector<std::string>& record_fields();
bool is_record_field(std::string_view name);

/// Column value as written to CSV ("" when absent). Accepts record_fields()
/// plus "counts" (compact JSON).
std::string render_field(const JobRecord& r, std::string_view column);

/// Orders by (submitted_at, job_id).
bool record_order(const JobRecord& a, const JobRecord& b);

/// Append-only JSON-lines file with an offset index at `<path>.idx`.
///
/// Opening recovers from a torn final line by truncating it. Appends are
/// serialized; each line is flushed before append() returns.
class JobStore {
 public:
  explicit JobStore(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }
  std::size_t size() const;
  /// Number of partial trailing lines discarded when the store was opened (0 or 1).
  std::size_t recovered_partial_lines() const { return dropped_; }

  void append(const JobRecord& r);
  bool contains(std::string_view job_id) const;

  std::vector<JobRecord> all() const;
  std::vector<JobRecord> query(const Filter& filter) const;
  /// Re-reads record `i` (append order) from disk through the offset index.
  JobRecord read_at(std::size_t i) const;
  std::vector<std::uint64_t> offsets() const;

  /// RFC 4180 CSV (CRLF line breaks, header row). Empty `columns` means all fields.
  void export_csv(const Filter& filter, const std::vector<std::string>& columns,
                  const std::filesystem::path& out) const;

 private:
  void write_index() const;

  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::vector<JobRecord> records_;
  std::vector<std::uint64_t> offsets_;
  std::unordered_set<std::string> ids_;
  std::uint64_t end_offset_ = 0;
  std::size_t dropped_ = 0;
  std::ofstream out_;
  std::ofstream index_out_;
};

/// Writes CSV rows for `records` in the given order.
void write_csv(std::ostream& os, const std::vector<JobRecord>& records, const std::vector<std::string>& columns);
/// Quotes a CSV cell when it contains a comma, quote or line break.
std::string csv_escape(std::string_view cell);

}  // namespace qbench
