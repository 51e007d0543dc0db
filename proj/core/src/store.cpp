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

#include "qbench/store.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qbench/analysis.hpp"

namespace qbench {

namespace {

using json = nlohmann::json;

enum class FieldType { Int, UInt, Real, Cash, Bool, Text };

struct FieldDef {
  const char* name;
  FieldType type;
};

constexpr FieldDef kFields[] = {
    {"job_id", FieldType::Text},         {"cloud", FieldType::Text},
    {"target", FieldType::Text},         {"qubits", FieldType::Int},
    {"shots", FieldType::Int},           {"seed", FieldType::UInt},
    {"input", FieldType::UInt},          {"submitted_at", FieldType::Int},
    {"executed_at", FieldType::Int},     {"predicted_wait", FieldType::Int},
    {"actual_wait", FieldType::Int},     {"status", FieldType::Text},
    {"target_status", FieldType::Text},  {"n_1q", FieldType::Int},
    {"n_2q", FieldType::Int},            {"total_gates", FieldType::Int},
    {"fidelity", FieldType::Real},       {"success", FieldType::Bool},
    {"cost", FieldType::Cash},           {"error_message", FieldType::Text},
};

const FieldDef* find_field(std::string_view name) {
  for (const auto& f : kFields) {
    if (name == f.name) return &f;
  }
  return nullptr;
}

// Money is carried as integer micro-dollars.
using Value = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;

template <typename T>
std::optional<Value> opt(const std::optional<T>& v) {
  if (!v) return std::nullopt;
  return Value{*v};
}

std::optional<Value> extract(const JobRecord& r, std::string_view f) {
  if (f == "job_id") return Value{r.job_id};
  if (f == "cloud") return Value{std::string(to_string(r.cloud))};
  if (f == "target") return Value{r.target};
  if (f == "qubits") return Value{std::int64_t{r.qubits}};
  if (f == "shots") return Value{r.shots};
  if (f == "seed") return Value{r.seed};
  if (f == "input") return Value{r.input};
  if (f == "submitted_at") return Value{r.submitted_at};
  if (f == "executed_at") return opt(r.executed_at);
  if (f == "predicted_wait") return opt(r.predicted_wait);
  if (f == "actual_wait") return opt(r.actual_wait);
  if (f == "status") return Value{std::string(to_string(r.status))};
  if (f == "target_status") return Value{std::string(to_string(r.target_status))};
  if (f == "n_1q") return Value{r.census.n_1q};
  if (f == "n_2q") return Value{r.census.n_2q};
  if (f == "total_gates") return Value{r.census.total};
  if (f == "fidelity") return opt(r.fidelity);
  if (f == "success") return opt(r.success);
  if (f == "cost") return Value{r.cost.micros()};
  if (f == "error_message") return opt(r.error_message);
  throw std::invalid_argument("unknown field '" + std::string(f) + "'");
}

template <typename T>
T parse_number(std::string_view text, std::string_view field) {
  T v{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("bad value '" + std::string(text) + "' for field " + std::string(field));
  }
  return v;
}

Value parse_literal(const FieldDef& f, std::string_view text) {
  switch (f.type) {
    case FieldType::Int:
      return parse_number<std::int64_t>(text, f.name);
    case FieldType::UInt:
      return parse_number<std::uint64_t>(text, f.name);
    case FieldType::Real:
      return parse_number<double>(text, f.name);
    case FieldType::Cash:
      return Money::parse(text).micros();
    case FieldType::Bool:
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw std::invalid_argument("bad boolean '" + std::string(text) + "' for field " + f.name);
    case FieldType::Text:
      return std::string(text);
  }
  throw std::logic_error("unhandled field type");
}

std::partial_ordering compare(const Value& a, const Value& b) {
  return std::visit(
      [&](const auto& x) -> std::partial_ordering {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, std::string>) {
          const int c = x.compare(y);
          return c < 0 ? std::partial_ordering::less
                       : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
        } else {
          return x <=> y;
        }
      },
      a);
}

bool holds(CompareOp op, std::partial_ordering c) {
  switch (op) {
    case CompareOp::Eq:
      return c == 0;
    case CompareOp::Ne:
      return c != 0;
    case CompareOp::Lt:
      return c < 0;
    case CompareOp::Le:
      return c <= 0;
    case CompareOp::Gt:
      return c > 0;
    case CompareOp::Ge:
      return c >= 0;
  }
  return false;
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument("invalid job record: " + msg);
}

}  // namespace

std::string exact_money_string(Money m) {
  const std::int64_t micros = m.micros();
  const std::uint64_t mag = micros < 0 ? 0ULL - static_cast<std::uint64_t>(micros) : static_cast<std::uint64_t>(micros);
  std::string frac = std::to_string(mag % 1'000'000);
  frac.insert(0, 6 - frac.size(), '0');
  while (frac.size() > 2 && frac.back() == '0') frac.pop_back();
  return (micros < 0 ? "-" : "") + std::to_string(mag / 1'000'000) + "." + frac;
}

void validate(const JobRecord& r) {
  require(!r.job_id.empty(), "job_id is empty");
  require(!r.target.empty(), "target is empty");
  require(r.qubits >= 1, "qubits must be >= 1");
  require(r.shots >= 1, "shots must be >= 1");
  require(r.cost.micros() >= 0, "cost must be >= 0");
  const bool processed = r.status == JobStatus::Processed;
  const bool has_results = r.counts.has_value() && r.fidelity.has_value() && r.success.has_value();
  const bool has_any = r.counts.has_value() || r.fidelity.has_value() || r.success.has_value();
  require(processed == has_results && processed == has_any,
          "counts, fidelity and success must be present exactly when status is Processed");
  if (r.fidelity) {
    require(*r.fidelity >= 0.0 && *r.fidelity <= 1.0, "fidelity outside [0, 1]");
    require(*r.success == classify_success(*r.fidelity), "success disagrees with the 1/e threshold");
  }
  if (r.counts) {
    std::int64_t sum = 0;
    for (const auto& [bits, n] : r.counts->counts) {
      require(n >= 0, "negative count");
      require(static_cast<int>(bits.size()) == r.qubits, "bitstring width differs from qubits");
      sum += n;
    }
    require(sum == r.shots && r.counts->shots == r.shots, "counts do not sum to shots");
  }
  if (r.status == JobStatus::Error) require(r.error_message.has_value(), "Error status needs an error_message");
}

std::string to_json_line(const JobRecord& r) {
  json j;
  j["job_id"] = r.job_id;
  j["cloud"] = std::string(to_string(r.cloud));
  j["target"] = r.target;
  j["qubits"] = r.qubits;
  j["shots"] = r.shots;
  j["seed"] = r.seed;
  j["input"] = r.input;
  j["submitted_at"] = r.submitted_at;
  if (r.executed_at) j["executed_at"] = *r.executed_at;
  if (r.predicted_wait) j["predicted_wait"] = *r.predicted_wait;
  if (r.actual_wait) j["actual_wait"] = *r.actual_wait;
  j["status"] = std::string(to_string(r.status));
  j["target_status"] = std::string(to_string(r.target_status));
  j["census"] = {{"n_1q", r.census.n_1q}, {"n_2q", r.census.n_2q}, {"total", r.census.total}};
  if (r.counts) j["counts"] = {{"counts", r.counts->counts}, {"shots", r.counts->shots}};
  if (r.fidelity) j["fidelity"] = *r.fidelity;
  if (r.success) j["success"] = *r.success;
  j["cost"] = exact_money_string(r.cost);
  if (r.error_message) j["error_message"] = *r.error_message;
  return j.dump();
}

JobRecord record_from_json(std::string_view line) {
  JobRecord r;
  try {
    const json j = json::parse(line);
    r.job_id = j.at("job_id").get<std::string>();
    r.cloud = cloud_from_string(j.at("cloud").get<std::string>());
    r.target = j.at("target").get<std::string>();
    r.qubits = j.at("qubits").get<int>();
    r.shots = j.at("shots").get<std::int64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.input = j.at("input").get<std::uint64_t>();
    r.submitted_at = j.at("submitted_at").get<SimTime>();
    if (j.contains("executed_at")) r.executed_at = j["executed_at"].get<SimTime>();
    if (j.contains("predicted_wait")) r.predicted_wait = j["predicted_wait"].get<SimTime>();
    if (j.contains("actual_wait")) r.actual_wait = j["actual_wait"].get<SimTime>();
    r.status = job_status_from_string(j.at("status").get<std::string>());
    r.target_status = availability_from_string(j.at("target_status").get<std::string>());
    const json& c = j.at("census");
    r.census = {c.at("n_1q").get<std::int64_t>(), c.at("n_2q").get<std::int64_t>(), c.at("total").get<std::int64_t>()};
    if (j.contains("counts")) {
      CountsDistribution d;
      d.counts = j["counts"].at("counts").get<std::map<std::string, std::int64_t>>();
      d.shots = j["counts"].at("shots").get<std::int64_t>();
      r.counts = std::move(d);
    }
    if (j.contains("fidelity")) r.fidelity = j["fidelity"].get<double>();
    if (j.contains("success")) r.success = j["success"].get<bool>();
    r.cost = Money::parse(j.at("cost").get<std::string>());
    if (j.contains("error_message")) r.error_message = j["error_message"].get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed job record: ") + e.what());
  }
  validate(r);
  return r;
}

Predicate Predicate::parse(std::string_view text) {
  static constexpr std::pair<std::string_view, CompareOp> kOps[] = {
      {"!=", CompareOp::Ne}, {"<=", CompareOp::Le}, {">=", CompareOp::Ge},
      {"=", CompareOp::Eq},  {"<", CompareOp::Lt},  {">", CompareOp::Gt},
  };
  const std::size_t pos = text.find_first_of("!=<>");
  if (pos == std::string_view::npos || pos == 0) {
    throw std::invalid_argument("filter '" + std::string(text) + "' is not of the form field<op>value");
  }
  for (const auto& [sym, op] : kOps) {
    if (text.substr(pos, sym.size()) == sym) {
      return {std::string(text.substr(0, pos)), op, std::string(text.substr(pos + sym.size()))};
    }
  }
  throw std::invalid_argument("filter '" + std::string(text) + "' has an unknown operator");
}

Filter::Filter(std::vector<Predicate> predicates) : predicates_(std::move(predicates)) {
  for (const auto& p : predicates_) {
    const FieldDef* f = find_field(p.field);
    if (!f) throw std::invalid_argument("unknown field '" + p.field + "'");
    parse_literal(*f, p.value);
  }
}

bool Filter::matches(const JobRecord& r) const {
  for (const auto& p : predicates_) {
    const auto v = extract(r, p.field);
    if (!v) return false;
    if (!holds(p.op, compare(*v, parse_literal(*find_field(p.field), p.value)))) return false;
  }
  return true;
}

const std::vector<std::string>& record_fields() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& f : kFields) v.emplace_back(f.name);
    return v;
  }();
  return names;
}

bool is_record_field(std::string_view name) { return find_field(name) != nullptr; }

std::string render_field(const JobRecord& r, std::string_view column) {
  if (column == "counts") return r.counts ? r.counts->to_json() : std::string();
  const FieldDef* f = find_field(column);
  if (!f) throw std::invalid_argument("unknown column '" + std::string(column) + "'");
  const auto v = extract(r, column);
  if (!v) return {};
  if (f->type == FieldType::Cash) return exact_money_string(Money::from_micros(std::get<std::int64_t>(*v)));
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          return shortest(x);
        } else {
          return std::to_string(x);
        }
      },
      *v);
}

bool record_order(const JobRecord& a, const JobRecord& b) {
  if (a.submitted_at != b.submitted_at) return a.submitted_at < b.submitted_at;
  return a.job_id < b.job_id;
}

std::string csv_escape(std::string_view cell) {
  if (cell.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(cell);
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& os, const std::vector<JobRecord>& records, const std::vector<std::string>& columns) {
  const std::vector<std::string>& cols = columns.empty() ? record_fields() : columns;
  for (const auto& c : cols) {
    if (c != "counts" && !is_record_field(c)) throw std::invalid_argument("unknown column '" + c + "'");
  }
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_escape(cols[i]);
  os << "\r\n";
  for (const auto& r : records) {
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_escape(render_field(r, cols[i]));
    os << "\r\n";
  }
}

JobStore::JobStore(std::filesystem::path path) : path_(std::move(path)) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path_.has_parent_path()) fs::create_directories(path_.parent_path(), ec);
  std::string data;
  if (fs::exists(path_)) {
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw StoreError("cannot open store " + path_.string());
    data.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < data.size()) {
    const std::size_t nl = data.find('\n', pos);
    if (nl == std::string::npos) {
      dropped_ = 1;
      fs::resize_file(path_, pos, ec);
      if (ec) throw StoreError("cannot truncate torn record in " + path_.string() + ": " + ec.message());
      break;
    }
    ++line_no;
    const std::string_view line(data.data() + pos, nl - pos);
    if (!line.empty()) {
      JobRecord r;
      try {
        r = record_from_json(line);
      } catch (const std::exception& e) {
        throw StoreError(path_.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
      if (!ids_.insert(r.job_id).second) {
        throw StoreError(path_.string() + ":" + std::to_string(line_no) + ": duplicate job_id " + r.job_id);
      }
      offsets_.push_back(pos);
      records_.push_back(std::move(r));
    }
    pos = nl + 1;
  }
  end_offset_ = pos;
  write_index();
  out_.open(path_, std::ios::binary | std::ios::app);
  if (!out_) throw StoreError("cannot open store for append: " + path_.string());
  index_out_.open(path_.string() + ".idx", std::ios::binary | std::ios::app);
  if (!index_out_) throw StoreError("cannot open store index: " + path_.string() + ".idx");
}

void JobStore::write_index() const {
  std::ofstream idx(path_.string() + ".idx", std::ios::binary | std::ios::trunc);
  for (std::uint64_t off : offsets_) idx << off << '\n';
  if (!idx) throw StoreError("cannot write store index for " + path_.string());
}

std::size_t JobStore::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

bool JobStore::contains(std::string_view job_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  return ids_.count(std::string(job_id)) > 0;
}

void JobStore::append(const JobRecord& r) {
  validate(r);
  const std::string line = to_json_line(r);
  std::lock_guard<std::mutex> lock(mu_);
  if (ids_.count(r.job_id)) throw StoreError("duplicate job_id " + r.job_id);
  out_ << line << '\n';
  out_.flush();
  if (!out_) throw StoreError("write failed on " + path_.string());
  index_out_ << end_offset_ << '\n';
  index_out_.flush();
  offsets_.push_back(end_offset_);
  end_offset_ += line.size() + 1;
  ids_.insert(r.job_id);
  records_.push_back(r);
}

std::vector<JobRecord> JobStore::all() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_;
}

std::vector<JobRecord> JobStore::query(const Filter& filter) const {
  std::vector<JobRecord> out;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& r : records_) {
      if (filter.matches(r)) out.push_back(r);
    }
  }
  std::stable_sort(out.begin(), out.end(), record_order);
  return out;
}

std::vector<std::uint64_t> JobStore::offsets() const {
  std::lock_guard<std::mutex> lock(mu_);
  return offsets_;
}

JobRecord JobStore::read_at(std::size_t i) const {
  std::uint64_t off;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (i >= offsets_.size()) throw std::out_of_range("record index out of range");
    off = offsets_[i];
  }
  std::ifstream in(path_, std::ios::binary);
  in.seekg(static_cast<std::streamoff>(off));
  std::string line;
  if (!std::getline(in, line)) throw StoreError("cannot read record " + std::to_string(i));
  return record_from_json(line);
}

void JobStore::export_csv(const Filter& filter, const std::vector<std::string>& columns,
                          const std::filesystem::path& out) const {
  const auto rows = query(filter);
  std::ostringstream ss;
  write_csv(ss, rows, columns);
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw StoreError("cannot open " + out.string() + " for writing");
  f << ss.str();
  if (!f) throw StoreError("write failed on " + out.string());
}

}  // namespace qbench
