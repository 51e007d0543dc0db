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

// qbench: run simulated benchmark campaigns and report on the job store.
//
//   qbench campaign run --config campaign.ini [--store PATH] [--seed N]
//   qbench jobs poll [--store PATH]
//   qbench report table6 --filter qubits>=10 --out table6.csv
//   qbench store export --columns job_id,fidelity --out jobs.csv
//
// Exit codes: 0 ok, 2 configuration or usage error, 3 store error,
// 4 empty report selection.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "qbench/analysis.hpp"
#include "qbench/campaign.hpp"
#include "qbench/store.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitStore = 3;
constexpr int kExitEmpty = 4;

struct Options {
  bool json = false;
  std::string store;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string report_kind;
  std::vector<std::string> filters;
  std::vector<std::string> columns;
  std::string out;
};

std::string resolve_store(const Options& o, const std::string& fallback) {
  if (!o.store.empty()) return o.store;
  if (const char* env = std::getenv("QBENCH_STORE"); env && *env) return env;
  return fallback;
}

qbench::Filter make_filter(const std::vector<std::string>& raw) {
  std::vector<qbench::Predicate> preds;
  for (const auto& f : raw) preds.push_back(qbench::Predicate::parse(f));
  return qbench::Filter(std::move(preds));
}

nlohmann::json summary_json(const qbench::CampaignSummary& s) {
  nlohmann::json targets = nlohmann::json::object();
  for (const auto& [target, counts] : s.status_counts) {
    nlohmann::json row = nlohmann::json::object();
    for (const auto& [status, n] : counts) row[std::string(qbench::to_string(status))] = n;
    targets[target]["status"] = row;
  }
  for (const auto& [target, cost] : s.cost_per_target) targets[target]["cost"] = cost.to_string();
  for (const auto& [target, n] : s.skipped_for_budget) {
    if (n > 0) targets[target]["skipped_for_budget"] = n;
  }
  return {{"records", s.records}, {"total_cost", s.total_cost.to_string()}, {"targets", targets}};
}

void print_summary(const qbench::CampaignSummary& s) {
  std::cout << "records: " << s.records << "  total cost: $" << s.total_cost.to_string() << "\n";
  for (const auto& [target, counts] : s.status_counts) {
    std::cout << "  " << target << ":";
    for (const auto& [status, n] : counts) std::cout << " " << qbench::to_string(status) << "=" << n;
    const auto it = s.cost_per_target.find(target);
    if (it != s.cost_per_target.end()) std::cout << "  cost=$" << it->second.to_string();
    std::cout << "\n";
  }
}

int run_campaign(const Options& o) {
  qbench::CampaignConfig cfg = qbench::load_campaign_config(o.config);
  qbench::apply_environment(cfg);
  if (o.seed) cfg.seed = *o.seed;
  if (!o.store.empty()) cfg.store_path = o.store;
  qbench::JobStore store(cfg.store_path);
  const auto summary = qbench::run_campaign(cfg, store);
  if (o.json) {
    auto j = summary_json(summary);
    j["store"] = cfg.store_path;
    j["seed"] = cfg.seed;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "store: " << cfg.store_path << "\n";
    print_summary(summary);
  }
  return kExitOk;
}

int run_jobs_poll(const Options& o) {
  qbench::JobStore store(resolve_store(o, "qbench.jsonl"));
  const auto summary = qbench::summarize(store.query(make_filter(o.filters)));
  if (o.json) {
    std::cout << summary_json(summary).dump() << "\n";
  } else {
    print_summary(summary);
  }
  return kExitOk;
}

int run_report(const Options& o) {
  const qbench::ReportKind kind = qbench::report_kind_from_string(o.report_kind);
  const qbench::Filter filter = make_filter(o.filters);
  qbench::JobStore store(resolve_store(o, "qbench.jsonl"));
  const auto records = store.query(filter);
  std::ostringstream csv;
  const std::size_t rows = qbench::write_report(kind, records, csv);
  std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
  if (!out) throw qbench::StoreError("cannot open " + o.out + " for writing");
  out << csv.str();
  if (!out) throw qbench::StoreError("write failed on " + o.out);
  nlohmann::json j = {{"report", o.report_kind}, {"rows", rows}, {"out", o.out}};
  if (kind == qbench::ReportKind::QueuePrediction) {
    j["fraction_overestimated"] = qbench::queue_prediction_report(records).fraction_overestimated;
  }
  if (o.json) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "wrote " << rows << " rows to " << o.out << "\n";
  }
  return kExitOk;
}

int run_export(const Options& o) {
  const qbench::Filter filter = make_filter(o.filters);
  qbench::JobStore store(resolve_store(o, "qbench.jsonl"));
  std::vector<std::string> cols;
  for (const auto& c : o.columns) {
    std::stringstream ss(c);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) cols.push_back(part);
    }
  }
  store.export_csv(filter, cols, o.out);
  const auto n = store.query(filter).size();
  if (o.json) {
    std::cout << nlohmann::json{{"rows", n}, {"out", o.out}}.dump() << "\n";
  } else {
    std::cout << "exported " << n << " records to " << o.out << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulated cloud quantum benchmark campaigns"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Print a single-line JSON summary");

  auto* campaign = app.add_subcommand("campaign", "Campaign commands");
  campaign->require_subcommand(1);
  auto* campaign_run = campaign->add_subcommand("run", "Run a campaign from a config file");
  campaign_run->add_option("--config", o.config, "Campaign config file")->required()->check(CLI::ExistingFile);
  campaign_run->add_option("--store", o.store, "Store path (overrides config and QBENCH_STORE)");
  campaign_run->add_option("--seed", o.seed, "Campaign seed (overrides config and QBENCH_SEED)");

  auto* jobs = app.add_subcommand("jobs", "Job commands");
  jobs->require_subcommand(1);
  auto* jobs_poll = jobs->add_subcommand("poll", "Summarize job status per target from the store");
  jobs_poll->add_option("--store", o.store, "Store path");
  jobs_poll->add_option("--filter", o.filters, "Field predicate, e.g. cloud=SimAWS (repeatable)");

  auto* report = app.add_subcommand("report", "Write a CSV report");
  report->add_option("kind", o.report_kind, "Report kind")
      ->required()
      ->check(CLI::IsMember(qbench::report_kind_names()));
  report->add_option("--filter", o.filters, "Field predicate, e.g. qubits>=10 (repeatable)");
  report->add_option("--out", o.out, "Output CSV path")->required();
  report->add_option("--store", o.store, "Store path");

  auto* store = app.add_subcommand("store", "Store commands");
  store->require_subcommand(1);
  auto* store_export = store->add_subcommand("export", "Export records as CSV");
  store_export->add_option("--filter", o.filters, "Field predicate (repeatable)");
  store_export->add_option("--columns", o.columns, "Comma-separated column list");
  store_export->add_option("--out", o.out, "Output CSV path")->required();
  store_export->add_option("--store", o.store, "Store path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (campaign_run->parsed()) return run_campaign(o);
    if (jobs_poll->parsed()) return run_jobs_poll(o);
    if (report->parsed()) return run_report(o);
    if (store_export->parsed()) return run_export(o);
  } catch (const qbench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qbench::StoreError& e) {
    std::cerr << "store error: " << e.what() << "\n";
    return kExitStore;
  } catch (const qbench::EmptySelection& e) {
    std::cerr << "empty report: " << e.what() << "\n";
    if (o.json) std::cout << nlohmann::json{{"error", "empty"}, {"message", e.what()}}.dump() << "\n";
    return kExitEmpty;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStore;
  }
  return kExitConfig;
}
