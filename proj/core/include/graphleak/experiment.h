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

#ifndef GRAPHLEAK_EXPERIMENT_H_
#define GRAPHLEAK_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphleak/gnn.h"
#include "graphleak/graph.h"
#include "graphleak/poison.h"
#include "graphleak/report.h"
#include "graphleak/synthetic.h"

namespace graphleak {

enum class DetectorKind { kMlp, kAttn };
enum class AttackMode { kOffline, kOnline, kBlackbox };
enum class AblationSweep { kRegWeights, kDepth, kDistortion };

std::string_view DetectorKindName(DetectorKind kind);
DetectorKind ParseDetectorKind(std::string_view name);
std::string_view AttackModeName(AttackMode mode);
AttackMode ParseAttackMode(std::string_view name);
std::string_view AblationSweepName(AblationSweep sweep);
AblationSweep ParseAblationSweep(std::string_view name);

// One (poisoning, detector) combination, e.g. "SLA+MLP" or "VS+ATTN".
struct MethodCell {
  bool poisoning = false;
  DetectorKind detector = DetectorKind::kMlp;

  std::string Label() const;
  friend bool operator==(const MethodCell&, const MethodCell&) = default;
};

struct AttackRunConfig {
  // Canonical dataset directory. When empty, `synthetic` must be set.
  std::string dataset;
  std::optional<SbmOptions> synthetic;

  double train_fraction = 0.8;
  double partial_fraction = 0.1;
  GnnConfig vendor;
  GnnConfig shadow;
  PoisonConfig poison;
  // Cells are the cross product of these two lists.
  std::vector<bool> poisoning = {false, true};
  std::vector<DetectorKind> detector = {DetectorKind::kMlp, DetectorKind::kAttn};
  // Poisoning target and intra-class evaluation class; one report each.
  std::vector<int> target_classes = {1};
  std::vector<uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};

  AttackMode mode = AttackMode::kOffline;
  int online_batches = 8;
  // Position of the attacker's batch for a single online run (1-based).
  int poison_position = 1;
  // Shadow and vendor architectures swept by the black-box grid.
  std::vector<GnnArch> blackbox_archs = {GnnArch::kGcn, GnnArch::kSage,
                                         GnnArch::kGat};

  // "all": detectors learn from every partial-graph pair. "target": only
  // pairs inside the target class.
  std::string detector_scope = "all";
  // Balanced evaluation pair budget per AUC.
  size_t eval_pairs = 2000;
  StealthinessThresholds thresholds;
  bool emit_pca = true;

  // Throws InvalidArgument on inconsistent settings.
  void Validate() const;
  std::vector<MethodCell> Cells() const;
  friend bool operator==(const AttackRunConfig&, const AttackRunConfig&) = default;
};

// Defaults matching the reference protocol: GraphSAGE vendor and shadow,
// the four method cells, target class 1.
AttackRunConfig DefaultAttackConfig();

std::string AttackConfigToJson(const AttackRunConfig& cfg);
// Missing keys keep their defaults; unknown keys are rejected.
AttackRunConfig AttackConfigFromJson(std::string_view json);
AttackRunConfig LoadAttackConfig(const std::filesystem::path& path);

// Dataset named by the config, with masks cleared.
Graph LoadExperimentGraph(const AttackRunConfig& cfg);

struct ExperimentReport {
  std::string cell;
  uint64_t seed = 0;
  int target_class = 0;
  // "ok" or "error"; metrics are meaningless for failed runs.
  std::string status = "ok";
  std::string diagnostic;

  double overall_auc = 0.0;
  double intra_class_auc = 0.0;
  double detector_val_auc = 0.0;
  size_t detector_pairs = 0;
  StealthinessReport stealth;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

// Metric names aggregated per cell, in table column order.
const std::vector<std::string>& LedgerMetricNames();
double MetricValue(const ExperimentReport& r, std::string_view metric);

struct MetricSummary {
  double mean = 0.0;
  // Population standard deviation over completed seeds.
  double std = 0.0;
  size_t n = 0;

  friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

struct CellSummary {
  std::string cell;
  std::map<std::string, MetricSummary> metrics;

  friend bool operator==(const CellSummary&, const CellSummary&) = default;
};

struct PairStatsEntry {
  std::string dataset;
  size_t num_nodes = 0;
  size_t num_edges = 0;
  double r_linked_intra = 0.0;
  double r_linked_inter = 0.0;
  double r_unlinked_intra = 0.0;
  double r_unlinked_inter = 0.0;

  friend bool operator==(const PairStatsEntry&, const PairStatsEntry&) = default;
};

struct RunLedger {
  std::string command;
  std::string config_json;
  // Cells in first-seen order.
  std::vector<std::string> cells;
  std::vector<ExperimentReport> runs;
  std::vector<CellSummary> aggregate;
  std::vector<PairStatsEntry> pair_stats;

  friend bool operator==(const RunLedger&, const RunLedger&) = default;
};

// Recomputes `cells` and `aggregate` from `runs`.
void Aggregate(RunLedger& ledger);

// Everything a command writes: the ledger plus CSV side files keyed by their
// path relative to the output directory.
struct RunOutput {
  RunLedger ledger;
  std::map<std::string, std::string> files;
};

RunOutput RunAttack(const AttackRunConfig& cfg);
RunOutput RunOnline(const AttackRunConfig& cfg);
RunOutput RunBlackbox(const AttackRunConfig& cfg);
RunOutput RunAblation(const AttackRunConfig& cfg, AblationSweep sweep);
// Linked/unlinked intra-class ratios of the configured dataset.
RunOutput RunStats(const AttackRunConfig& cfg, size_t n_samples = 100000);

std::string LedgerToJson(const RunLedger& ledger);
RunLedger LedgerFromJson(std::string_view json);

// Table with one row per cell: cell,n,<metric>_mean,<metric>_std,...
std::string AggregateTableCsv(const RunLedger& ledger);

// Writes ledger.json, tables/<command>.csv and every side file.
void EmitReports(const RunOutput& output, const std::filesystem::path& out_dir);

}  // namespace graphleak

#endif  // GRAPHLEAK_EXPERIMENT_H_
