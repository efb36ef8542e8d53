/*
 * Copyright 2026 The Graphleak Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <string>

#include "config_json.h"
#include "graphleak/csv_util.h"
#include "graphleak/error.h"
#include "graphleak/experiment.h"

namespace graphleak {

using internal::Json;

namespace {

Json ReportToJson(const ExperimentReport& r) {
  Json j;
  j["cell"] = r.cell;
  j["seed"] = r.seed;
  j["target_class"] = r.target_class;
  j["status"] = r.status;
  j["diagnostic"] = r.diagnostic;
  j["overall_auc"] = r.overall_auc;
  j["intra_class_auc"] = r.intra_class_auc;
  j["detector_val_auc"] = r.detector_val_auc;
  j["detector_pairs"] = r.detector_pairs;
  Json s;
  s["acc_clean"] = r.stealth.acc_clean;
  s["acc_poisoned"] = r.stealth.acc_poisoned;
  s["acc_delta"] = r.stealth.acc_delta;
  s["homophily_shift"] = r.stealth.homophily_shift;
  s["thresholds"] = internal::ToJson(r.stealth.thresholds);
  s["flagged"] = r.stealth.flagged;
  j["stealthiness"] = std::move(s);
  return j;
}

ExperimentReport ReportFromJson(const Json& j) {
  ExperimentReport r;
  r.cell = j.at("cell").get<std::string>();
  r.seed = j.at("seed").get<uint64_t>();
  r.target_class = j.at("target_class").get<int>();
  r.status = j.at("status").get<std::string>();
  r.diagnostic = j.at("diagnostic").get<std::string>();
  r.overall_auc = j.at("overall_auc").get<double>();
  r.intra_class_auc = j.at("intra_class_auc").get<double>();
  r.detector_val_auc = j.at("detector_val_auc").get<double>();
  r.detector_pairs = j.at("detector_pairs").get<size_t>();
  const Json& s = j.at("stealthiness");
  r.stealth.acc_clean = s.at("acc_clean").get<double>();
  r.stealth.acc_poisoned = s.at("acc_poisoned").get<double>();
  r.stealth.acc_delta = s.at("acc_delta").get<double>();
  r.stealth.homophily_shift = s.at("homophily_shift").get<double>();
  internal::MergeJson(s.at("thresholds"), r.stealth.thresholds);
  r.stealth.flagged = s.at("flagged").get<bool>();
  return r;
}

}  // namespace

std::string LedgerToJson(const RunLedger& ledger) {
  Json j;
  j["command"] = ledger.command;
  j["config"] = ledger.config_json.empty() ? Json(nullptr) : Json::parse(ledger.config_json);
  j["cells"] = ledger.cells;
  Json runs = Json::array();
  for (const ExperimentReport& r : ledger.runs) runs.push_back(ReportToJson(r));
  j["runs"] = std::move(runs);
  Json agg = Json::array();
  for (const CellSummary& c : ledger.aggregate) {
    Json cj;
    cj["cell"] = c.cell;
    Json metrics;
    // Fixed metric order keeps the file stable.
    for (const std::string& name : LedgerMetricNames()) {
      auto it = c.metrics.find(name);
      if (it == c.metrics.end()) continue;
      metrics[name] = {{"mean", it->second.mean}, {"std", it->second.std}, {"n", it->second.n}};
    }
    cj["metrics"] = std::move(metrics);
    agg.push_back(std::move(cj));
  }
  j["aggregate"] = std::move(agg);
  Json stats = Json::array();
  for (const PairStatsEntry& s : ledger.pair_stats) {
    stats.push_back({{"dataset", s.dataset},
                     {"num_nodes", s.num_nodes},
                     {"num_edges", s.num_edges},
                     {"r_linked_intra", s.r_linked_intra},
                     {"r_linked_inter", s.r_linked_inter},
                     {"r_unlinked_intra", s.r_unlinked_intra},
                     {"r_unlinked_inter", s.r_unlinked_inter}});
  }
  j["pair_stats"] = std::move(stats);
  return j.dump(2) + "\n";
}

RunLedger LedgerFromJson(std::string_view json) {
  try {
    const Json j = Json::parse(json);
    RunLedger ledger;
    ledger.command = j.at("command").get<std::string>();
    if (!j.at("config").is_null()) ledger.config_json = j.at("config").dump(2);
    ledger.cells = j.at("cells").get<std::vector<std::string>>();
    for (const Json& r : j.at("runs")) ledger.runs.push_back(ReportFromJson(r));
    for (const Json& c : j.at("aggregate")) {
      CellSummary summary;
      summary.cell = c.at("cell").get<std::string>();
      for (const auto& item : c.at("metrics").items()) {
        summary.metrics[item.key()] = {item.value().at("mean").get<double>(),
                                       item.value().at("std").get<double>(),
                                       item.value().at("n").get<size_t>()};
      }
      ledger.aggregate.push_back(std::move(summary));
    }
    for (const Json& s : j.at("pair_stats")) {
      ledger.pair_stats.push_back({s.at("dataset").get<std::string>(),
                                   s.at("num_nodes").get<size_t>(),
                                   s.at("num_edges").get<size_t>(),
                                   s.at("r_linked_intra").get<double>(),
                                   s.at("r_linked_inter").get<double>(),
                                   s.at("r_unlinked_intra").get<double>(),
                                   s.at("r_unlinked_inter").get<double>()});
    }
    return ledger;
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed ledger JSON: ") + e.what());
  }
}

namespace {

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string AggregateTableCsv(const RunLedger& ledger) {
  std::string out = "cell,n";
  for (const std::string& m : LedgerMetricNames()) out += "," + m + "_mean," + m + "_std";
  out += '\n';
  for (const CellSummary& c : ledger.aggregate) {
    const auto first = c.metrics.find(LedgerMetricNames().front());
    out += CsvField(c.cell) + ',' +
           std::to_string(first == c.metrics.end() ? 0 : first->second.n);
    for (const std::string& m : LedgerMetricNames()) {
      const MetricSummary s = c.metrics.count(m) ? c.metrics.at(m) : MetricSummary{};
      out += ',' + FormatDouble(s.mean) + ',' + FormatDouble(s.std);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string RunsTableCsv(const RunLedger& ledger) {
  std::string out = "cell,seed,target_class,status";
  for (const std::string& m : LedgerMetricNames()) out += "," + m;
  out += ",detector_pairs,flagged\n";
  for (const ExperimentReport& r : ledger.runs) {
    out += CsvField(r.cell) + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.target_class) + ',' + r.status;
    for (const std::string& m : LedgerMetricNames()) {
      out += ',' + FormatDouble(MetricValue(r, m));
    }
    out += ',' + std::to_string(r.detector_pairs) + ',' +
           (r.stealth.flagged ? "1" : "0") + '\n';
  }
  return out;
}

std::string PairStatsCsv(const RunLedger& ledger) {
  std::string out =
      "dataset,num_nodes,num_edges,r_linked_intra,r_linked_inter,"
      "r_unlinked_intra,r_unlinked_inter\n";
  for (const PairStatsEntry& s : ledger.pair_stats) {
    out += CsvField(s.dataset) + ',' + std::to_string(s.num_nodes) + ',' +
           std::to_string(s.num_edges) + ',' + FormatDouble(s.r_linked_intra) + ',' +
           FormatDouble(s.r_linked_inter) + ',' + FormatDouble(s.r_unlinked_intra) +
           ',' + FormatDouble(s.r_unlinked_inter) + '\n';
  }
  return out;
}

}  // namespace

void EmitReports(const RunOutput& output, const std::filesystem::path& out_dir) {
  const RunLedger& ledger = output.ledger;
  if (ledger.runs.empty() && ledger.pair_stats.empty()) {
    throw InvalidArgument("EmitReports: empty ledger");
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + out_dir.string() + ": " +
                  ec.message());
  }
  WriteFile(out_dir / "ledger.json", LedgerToJson(ledger));
  if (!ledger.runs.empty()) {
    WriteFile(out_dir / "tables" / (ledger.command + ".csv"), AggregateTableCsv(ledger));
    WriteFile(out_dir / "tables" / (ledger.command + "_runs.csv"), RunsTableCsv(ledger));
  }
  if (!ledger.pair_stats.empty()) {
    WriteFile(out_dir / "tables" / "pair_stats.csv", PairStatsCsv(ledger));
  }
  for (const auto& [rel, contents] : output.files) WriteFile(out_dir / rel, contents);
}

}  // namespace graphleak
