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

#include "qbench/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iterator>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "qbench/analysis.hpp"
#include "qbench/circuit.hpp"
#include "qbench/random.hpp"

namespace qbench {

namespace {

// ---------------------------------------------------------------------------
// Sectioned key/value files.

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  std::string kind;  // "campaign", "target", "price", ...
  std::string name;  // argument after the kind, may be empty
  int line = 0;
  std::vector<Entry> entries;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg);
}

std::vector<Section> parse_sections(std::string_view text) {
  std::vector<Section> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      const auto words = split_ws(line.substr(1, line.size() - 2));
      if (words.empty() || words.size() > 2) fail(line_no, "section header must be [kind] or [kind name]");
      out.push_back({words[0], words.size() == 2 ? words[1] : std::string(), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    if (out.empty()) fail(line_no, "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) fail(line_no, "empty key");
    out.back().entries.push_back({key, std::string(trim(line.substr(eq + 1))), line_no});
  }
  return out;
}

template <typename T>
T to_number(const Entry& e) {
  T v{};
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) fail(e.line, "bad number for " + e.key + ": '" + e.value + "'");
  return v;
}

bool to_bool(const Entry& e) {
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  fail(e.line, "bad boolean for " + e.key + ": '" + e.value + "'");
}

Money to_money(const Entry& e) {
  try {
    return Money::parse(e.value);
  } catch (const std::exception& ex) {
    fail(e.line, ex.what());
  }
}

// "HH:MM" -> seconds after midnight.
SimTime clock_time(const std::string& s, int line) {
  int h = -1;
  int m = -1;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%d:%d%c", &h, &m, &tail) != 2 || h < 0 || h > 24 || m < 0 || m > 59 ||
      (h == 24 && m != 0)) {
    fail(line, "bad time of day '" + s + "' (expected HH:MM)");
  }
  return h * 3600 + m * 60;
}

// ---------------------------------------------------------------------------
// Target sections.

struct PendingWindow {
  SimTime start;
  SimTime end;
  Availability state;
};

Availability parse_state(const std::string& s, int line) {
  try {
    return availability_from_string(s);
  } catch (const std::exception&) {
    fail(line, "unknown availability state '" + s + "'");
  }
}

NoiseSpec parse_noise(const Entry& e) {
  const auto w = split_ws(e.value);
  if (w.size() == 1 && w[0] == "none") return NoNoise{};
  if (w.size() == 2) {
    Entry num{e.key, w[1], e.line};
    if (w[0] == "depolarizing") return GlobalDepolarizing{to_number<double>(num)};
    if (w[0] == "pauli") return PauliTrajectory{to_number<double>(num)};
  }
  fail(e.line, "noise must be 'none', 'depolarizing F' or 'pauli P'");
}

void add_wrapped(std::vector<PendingWindow>& out, SimTime a, SimTime b, SimTime period, Availability st) {
  if (a < b) {
    out.push_back({a, b, st});
  } else {
    if (a < period) out.push_back({a, period, st});
    if (b > 0) out.push_back({0, b, st});
  }
}

ProviderProfile build_target(const std::string& name, const Section* section, const PriceTable& prices) {
  std::string preset_name = name;
  if (section) {
    for (const auto& e : section->entries) {
      if (e.key == "preset") preset_name = e.value;
    }
  }
  ProviderProfile p;
  try {
    p = preset(preset_name);
  } catch (const std::invalid_argument& ex) {
    fail(section ? section->line : 0, "target '" + name + "': " + ex.what());
  }
  p.target_name = name;
  std::string price_key = preset_price_key(preset_name);
  if (section) {
    std::vector<PendingWindow> windows;
    std::optional<std::string> window_kind;
    std::optional<Availability> always;
    DegradedSemantics semantics = DegradedSemantics::AcceptHold;
    int reduced_width = 0;
    for (const auto& e : section->entries) {
      if (e.key == "preset") {
        continue;
      } else if (e.key == "cloud") {
        try {
          p.cloud = cloud_from_string(e.value);
        } catch (const std::exception& ex) {
          fail(e.line, ex.what());
        }
      } else if (e.key == "price") {
        price_key = e.value;
      } else if (e.key == "gate_profile") {
        try {
          p.gate_profile = profile_by_name(e.value);
        } catch (const std::exception& ex) {
          fail(e.line, ex.what());
        }
      } else if (e.key == "gate_limit") {
        if (e.value == "none") {
          p.gate_limit.reset();
        } else {
          p.gate_limit = to_number<std::int64_t>(e);
        }
      } else if (e.key == "max_width") {
        p.max_width = to_number<int>(e);
      } else if (e.key == "statevector_max_width") {
        p.statevector_max_width = to_number<int>(e);
      } else if (e.key == "noise") {
        p.noise = parse_noise(e);
      } else if (e.key == "queue_mu") {
        p.queue.mu = to_number<double>(e);
      } else if (e.key == "queue_sigma") {
        p.queue.sigma = to_number<double>(e);
      } else if (e.key == "predictor_bias") {
        p.queue.predictor_bias = to_number<double>(e);
      } else if (e.key == "predictor_sigma") {
        p.queue.predictor_sigma = to_number<double>(e);
      } else if (e.key == "execution_seconds") {
        p.execution_seconds = to_number<SimTime>(e);
      } else if (e.key == "error_mitigation") {
        p.error_mitigation = to_bool(e);
      } else if (e.key == "degraded") {
        const auto w = split_ws(e.value);
        if (w.size() == 1 && w[0] == "hold") {
          semantics = DegradedSemantics::AcceptHold;
        } else if (w.size() == 2 && w[0] == "reduced") {
          semantics = DegradedSemantics::ReducedCapacity;
          reduced_width = to_number<int>({e.key, w[1], e.line});
        } else {
          fail(e.line, "degraded must be 'hold' or 'reduced WIDTH'");
        }
      } else if (e.key == "availability") {
        const auto w = split_ws(e.value);
        if (w.size() != 2 || w[0] != "always") fail(e.line, "availability must be 'always STATE'");
        always = parse_state(w[1], e.line);
      } else if (e.key == "window") {
        const auto w = split_ws(e.value);
        if (w.empty()) fail(e.line, "empty window");
        if (window_kind && *window_kind != w[0]) fail(e.line, "all windows of a target must share one kind");
        window_kind = w[0];
        if (w[0] == "daily" && w.size() == 4) {
          add_wrapped(windows, clock_time(w[1], e.line), clock_time(w[2], e.line), kSecondsPerDay,
                      parse_state(w[3], e.line));
        } else if (w[0] == "weekly" && w.size() == 6) {
          const int d1 = to_number<int>({e.key, w[1], e.line});
          const int d2 = to_number<int>({e.key, w[3], e.line});
          if (d1 < 0 || d1 > 6 || d2 < 0 || d2 > 6) fail(e.line, "weekday must be 0..6");
          add_wrapped(windows, d1 * kSecondsPerDay + clock_time(w[2], e.line),
                      d2 * kSecondsPerDay + clock_time(w[4], e.line), 7 * kSecondsPerDay, parse_state(w[5], e.line));
        } else if (w[0] == "span" && w.size() == 4) {
          windows.push_back({to_number<SimTime>({e.key, w[1], e.line}), to_number<SimTime>({e.key, w[2], e.line}),
                             parse_state(w[3], e.line)});
        } else {
          fail(e.line,
               "window must be 'daily HH:MM HH:MM STATE', 'weekly D HH:MM D HH:MM STATE' or 'span T0 T1 STATE'");
        }
      } else {
        fail(e.line, "unknown target key '" + e.key + "'");
      }
    }
    if (always && window_kind) fail(section->line, "target '" + name + "' sets both availability and windows");
    auto status_for = [&](Availability a) {
      if (a == Availability::Degraded) {
        return semantics == DegradedSemantics::AcceptHold ? TargetStatus::degraded_hold()
                                                          : TargetStatus::degraded_reduced(reduced_width);
      }
      return a == Availability::Available ? TargetStatus::available() : TargetStatus::unavailable();
    };
    try {
      if (always) {
        p.availability = AvailabilitySchedule::always(status_for(*always));
      } else if (window_kind) {
        std::vector<AvailabilityWindow> ws;
        for (const auto& pw : windows) ws.push_back({pw.start, pw.end, status_for(pw.state)});
        const SimTime period =
            *window_kind == "daily" ? kSecondsPerDay : (*window_kind == "weekly" ? 7 * kSecondsPerDay : 0);
        p.availability = AvailabilitySchedule(std::move(ws), period);
      }
    } catch (const std::invalid_argument& ex) {
      fail(section->line, "target '" + name + "': " + ex.what());
    }
  }
  const auto it = prices.find(price_key);
  if (it == prices.end()) fail(section ? section->line : 0, "unknown price entry '" + price_key + "'");
  p.cost_model = it->second;
  try {
    validate(p);
  } catch (const std::invalid_argument& ex) {
    fail(section ? section->line : 0, "target '" + name + "': " + ex.what());
  }
  return p;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

PriceTable default_price_table() {
  return {
      {"aws.ionq_aria", prices::aws_ionq_aria()},
      {"aws.ionq_forte", prices::aws_ionq_forte()},
      {"aws.iqm_garnet", prices::aws_iqm_garnet()},
      {"azure.ionq_aria", prices::azure_ionq_aria()},
      {"quantinuum.hardware", prices::quantinuum_hardware()},
      {"quantinuum.emulator", prices::quantinuum_emulator()},
      {"free", FreePricing{}},
  };
}

PriceTable parse_price_table(std::string_view text) {
  PriceTable table{{"free", FreePricing{}}};
  bool versioned = false;
  for (const auto& s : parse_sections(text)) {
    if (s.kind == "prices") {
      for (const auto& e : s.entries) {
        if (e.key != "version") fail(e.line, "unknown key '" + e.key + "' in [prices]");
        if (to_number<int>(e) != 1) fail(e.line, "unsupported price file version " + e.value);
        versioned = true;
      }
      continue;
    }
    if (s.kind != "price" || s.name.empty()) fail(s.line, "expected [prices] or [price NAME]");
    std::map<std::string, const Entry*> kv;
    for (const auto& e : s.entries) {
      if (!kv.emplace(e.key, &e).second) fail(e.line, "duplicate key '" + e.key + "'");
    }
    auto need = [&](const char* key) -> const Entry& {
      const auto it = kv.find(key);
      if (it == kv.end()) fail(s.line, "[price " + s.name + "] is missing '" + key + "'");
      return *it->second;
    };
    const std::string model = need("model").value;
    CostModel m;
    if (model == "aws_per_shot") {
      m = AwsPerShotPricing{to_money(need("per_task")), to_money(need("per_shot"))};
    } else if (model == "azure_ionq") {
      m = AzureIonQPricing{to_money(need("per_1q_gate")), to_money(need("per_2q_gate")), to_money(need("min_plain")),
                           to_money(need("min_mitigated"))};
    } else if (model == "quantinuum_hqc") {
      m = QuantinuumHqcPricing{to_money(need("usd_per_hqc")),
                               kv.count("emulator") ? to_bool(*kv.at("emulator")) : false};
    } else if (model == "free") {
      m = FreePricing{};
    } else {
      fail(need("model").line, "unknown price model '" + model + "'");
    }
    try {
      validate(m);
    } catch (const std::invalid_argument& ex) {
      fail(s.line, ex.what());
    }
    table[s.name] = m;
  }
  if (!versioned) throw ConfigError("price file lacks [prices] version = 1");
  return table;
}

std::string preset_price_key(std::string_view name) {
  if (name == "aria1-aws" || name == "aria2-aws") return "aws.ionq_aria";
  if (name == "forte1-aws") return "aws.ionq_forte";
  if (name == "garnet-aws") return "aws.iqm_garnet";
  if (name == "aria1-azure") return "azure.ionq_aria";
  if (name == "h1-azure" || name == "h2-azure") return "quantinuum.hardware";
  if (name == "h1-azure-emulator" || name == "h2-azure-emulator") return "quantinuum.emulator";
  if (name == "aria1-azure-emulator") return "free";
  throw std::invalid_argument("unknown target preset '" + std::string(name) + "'");
}

std::vector<int> CampaignConfig::qubit_counts() const {
  std::vector<int> out;
  for (int q = qubits_min; q <= qubits_max; q += qubits_step) out.push_back(q);
  return out;
}

void validate(const CampaignConfig& c) {
  if (c.qubits_min < 1 || c.qubits_min > c.qubits_max) throw ConfigError("qubit range start must be in [1, end]");
  if (c.qubits_max > kMaxBenchmarkQubits) {
    throw ConfigError("qubit range end exceeds " + std::to_string(kMaxBenchmarkQubits));
  }
  if (c.qubits_step < 1) throw ConfigError("qubit step must be >= 1");
  if (c.shots < 1) throw ConfigError("shots must be >= 1");
  if (c.days < 1) throw ConfigError("days must be >= 1");
  if (c.submissions_per_day < 1) throw ConfigError("submissions_per_day must be >= 1");
  if (c.workers < 0) throw ConfigError("workers must be >= 0");
  if (c.drain_days < 0) throw ConfigError("drain_days must be >= 0");
  if (c.start_of_day < 0 || c.start_of_day >= kSecondsPerDay) throw ConfigError("start must be within one day");
  if (c.budget_per_target && c.budget_per_target->micros() < 0) throw ConfigError("budget must be >= 0");
  if (c.targets.empty()) throw ConfigError("no targets configured");
  if (c.store_path.empty()) throw ConfigError("store path is empty");
  for (std::size_t i = 0; i < c.targets.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (c.targets[i].target_name == c.targets[j].target_name) {
        throw ConfigError("target '" + c.targets[i].target_name + "' listed twice");
      }
    }
  }
}

CampaignConfig parse_campaign_config(std::string_view text, const std::filesystem::path& base_dir) {
  const auto sections = parse_sections(text);
  CampaignConfig c;
  std::vector<std::string> target_names;
  std::map<std::string, const Section*> target_sections;
  PriceTable prices = default_price_table();
  bool have_campaign = false;
  for (const auto& s : sections) {
    if (s.kind == "target") {
      if (s.name.empty()) fail(s.line, "[target] needs a name");
      if (!target_sections.emplace(s.name, &s).second) fail(s.line, "duplicate [target " + s.name + "]");
      continue;
    }
    if (s.kind != "campaign" || !s.name.empty()) fail(s.line, "unknown section [" + s.kind + "]");
    if (have_campaign) fail(s.line, "duplicate [campaign] section");
    have_campaign = true;
    for (const auto& e : s.entries) {
      if (e.key == "qubits") {
        // "8..28 step 2", "8..16", or "10"
        const auto w = split_ws(e.value);
        std::string range = w.empty() ? std::string() : w[0];
        const auto dots = range.find("..");
        if (dots == std::string::npos) {
          c.qubits_min = c.qubits_max = to_number<int>({e.key, range, e.line});
        } else {
          c.qubits_min = to_number<int>({e.key, range.substr(0, dots), e.line});
          c.qubits_max = to_number<int>({e.key, range.substr(dots + 2), e.line});
        }
        if (w.size() == 3 && w[1] == "step") {
          c.qubits_step = to_number<int>({e.key, w[2], e.line});
        } else if (w.size() != 1) {
          fail(e.line, "qubits must be 'A..B [step S]' or a single count");
        }
      } else if (e.key == "shots") {
        c.shots = to_number<std::int64_t>(e);
      } else if (e.key == "days") {
        c.days = to_number<int>(e);
      } else if (e.key == "submissions_per_day") {
        c.submissions_per_day = to_number<int>(e);
      } else if (e.key == "seed") {
        c.seed = to_number<std::uint64_t>(e);
      } else if (e.key == "budget_usd") {
        if (e.value == "none") {
          c.budget_per_target.reset();
        } else {
          c.budget_per_target = to_money(e);
        }
      } else if (e.key == "store") {
        c.store_path = e.value;
      } else if (e.key == "workers") {
        c.workers = to_number<int>(e);
      } else if (e.key == "start") {
        c.start_of_day = clock_time(e.value, e.line);
      } else if (e.key == "drain_days") {
        c.drain_days = to_number<int>(e);
      } else if (e.key == "prices") {
        const std::filesystem::path path = base_dir.empty() ? std::filesystem::path(e.value) : base_dir / e.value;
        try {
          prices = parse_price_table(read_file(path));
        } catch (const ConfigError& ex) {
          fail(e.line, path.string() + ": " + ex.what());
        }
      } else if (e.key == "targets") {
        std::string list = e.value;
        std::replace(list.begin(), list.end(), ',', ' ');
        target_names = split_ws(list);
      } else {
        fail(e.line, "unknown campaign key '" + e.key + "'");
      }
    }
  }
  if (!have_campaign) throw ConfigError("missing [campaign] section");
  for (const auto& [name, s] : target_sections) {
    if (std::find(target_names.begin(), target_names.end(), name) == target_names.end()) {
      fail(s->line, "[target " + name + "] is not listed in campaign targets");
    }
  }
  for (const auto& name : target_names) {
    const auto it = target_sections.find(name);
    c.targets.push_back(build_target(name, it == target_sections.end() ? nullptr : it->second, prices));
  }
  validate(c);
  return c;
}

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
  return parse_campaign_config(read_file(path), path.parent_path());
}

void apply_environment(CampaignConfig& c) {
  if (const char* store = std::getenv("QBENCH_STORE"); store && *store) c.store_path = store;
  if (const char* seed = std::getenv("QBENCH_SEED"); seed && *seed) {
    c.seed = to_number<std::uint64_t>({"QBENCH_SEED", seed, 0});
  }
}

std::uint64_t job_seed(std::uint64_t campaign_seed, std::string_view target, int day, int slot, int qubits) {
  return derive_seed({campaign_seed, fnv1a64(target), static_cast<std::uint64_t>(day),
                      static_cast<std::uint64_t>(slot), static_cast<std::uint64_t>(qubits)});
}

std::string job_id(std::string_view target, int day, int slot, int qubits) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "-d%03d-s%02d-q%02d", day, slot, qubits);
  return std::string(target) + buf;
}

namespace {

struct Pending {
  std::size_t target = 0;
  JobRecord record;
  std::optional<JobHandle> handle;
  std::optional<SimTime> poll_at;
  PollResult result;
};

template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void tally(CampaignSummary& s, const JobRecord& r) {
  ++s.status_counts[r.target][r.status];
  s.cost_per_target[r.target] += r.cost;
  s.total_cost += r.cost;
  ++s.records;
}

}  // namespace

CampaignSummary run_campaign(const CampaignConfig& config, JobStore& store) {
  validate(config);
  std::vector<std::unique_ptr<SimulatedProvider>> providers;
  for (const auto& p : config.targets) providers.push_back(std::make_unique<SimulatedProvider>(p));
  const int workers =
      config.workers > 0 ? config.workers : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  const SimTime horizon = static_cast<SimTime>(config.days + config.drain_days) * kSecondsPerDay;
  const SimTime slot_spacing = kSecondsPerDay / config.submissions_per_day;
  const auto widths = config.qubit_counts();

  CampaignSummary summary;
  std::vector<Money> committed(providers.size());
  for (const auto& p : config.targets) {
    summary.cost_per_target[p.target_name] = Money{};
    summary.skipped_for_budget[p.target_name] = 0;
  }

  for (int day = 0; day < config.days; ++day) {
    std::vector<Pending> batch;
    for (int slot = 0; slot < config.submissions_per_day; ++slot) {
      const SimTime clock =
          static_cast<SimTime>(day) * kSecondsPerDay + (config.start_of_day + slot * slot_spacing) % kSecondsPerDay;
      for (std::size_t t = 0; t < providers.size(); ++t) {
        SimulatedProvider& provider = *providers[t];
        const ProviderProfile& prof = provider.profile();
        for (int q : widths) {
          if (config.budget_per_target && committed[t] >= *config.budget_per_target) {
            ++summary.skipped_for_budget[prof.target_name];
            continue;
          }
          Pending p;
          p.target = t;
          JobRecord& r = p.record;
          r.job_id = job_id(prof.target_name, day, slot, q);
          r.cloud = prof.cloud;
          r.target = prof.target_name;
          r.qubits = q;
          r.shots = config.shots;
          r.seed = job_seed(config.seed, prof.target_name, day, slot, q);
          r.input = random_input(q, r.seed);
          r.submitted_at = clock;
          const Circuit bench = build_qft_benchmark(q, r.input);
          const SubmitResult sub = provider.submit(bench, config.shots, clock, r.seed);
          r.status = sub.status;
          r.target_status = sub.observed.state;
          r.census = sub.census;
          r.predicted_wait = sub.predicted_wait;
          if (!sub.error_message.empty() && sub.status == JobStatus::Error) r.error_message = sub.error_message;
          p.handle = sub.handle;
          if (sub.status == JobStatus::Submitted) {
            committed[t] += job_cost(prof.cost_model, sub.census, config.shots, q, prof.error_mitigation);
            const auto done = provider.completion_time(*sub.handle);
            if (done && *done <= horizon) p.poll_at = *done;
          }
          batch.push_back(std::move(p));
        }
      }
    }

    parallel_for(batch.size(), workers, [&](std::size_t i) {
      Pending& p = batch[i];
      if (p.poll_at) p.result = providers[p.target]->poll(*p.handle, *p.poll_at);
    });

    for (Pending& p : batch) {
      JobRecord& r = p.record;
      const ProviderProfile& prof = providers[p.target]->profile();
      if (r.status == JobStatus::Submitted) {
        if (!p.poll_at) {
          r.status = providers[p.target]->cancel(*p.handle);
        } else {
          r.status = p.result.status;
          if (r.status == JobStatus::Processed) {
            r.executed_at = p.result.executed_at;
            r.actual_wait = *r.executed_at - r.submitted_at;
            r.counts = std::move(p.result.counts);
            const FidelityScore score = score_against_ideal(*r.counts, ideal_output(r.qubits, r.input));
            r.fidelity = score.value;
            r.success = classify_success(score);
            r.cost = job_cost(prof.cost_model, r.census, r.shots, r.qubits, prof.error_mitigation);
          } else if (r.status == JobStatus::Error) {
            r.error_message = p.result.error_message;
          }
        }
      }
      store.append(r);
      tally(summary, r);
    }
  }
  return summary;
}

CampaignSummary summarize(const std::vector<JobRecord>& records) {
  CampaignSummary s;
  for (const auto& r : records) tally(s, r);
  return s;
}

}  // namespace qbench
