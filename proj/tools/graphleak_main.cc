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

// graphleak: runs link-inference experiments from a JSON config and writes
// ledger.json plus CSV tables, traces and PCA projections.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "graphleak/csv_util.h"
#include "graphleak/error.h"
#include "graphleak/experiment.h"
#include "graphleak/log.h"

namespace {

std::vector<uint64_t> ParseSeeds(const std::string& csv) {
  std::vector<uint64_t> seeds;
  for (std::string_view field : graphleak::SplitFields(csv)) {
    const int64_t v = graphleak::ParseInt(field);
    if (v < 0) throw graphleak::InvalidArgument("seeds must be non-negative");
    seeds.push_back(static_cast<uint64_t>(v));
  }
  if (seeds.empty()) throw graphleak::InvalidArgument("--seeds is empty");
  return seeds;
}

void PrintSummary(const graphleak::RunLedger& ledger) {
  for (const auto& c : ledger.aggregate) {
    const auto& intra = c.metrics.at("intra_class_auc");
    const auto& overall = c.metrics.at("overall_auc");
    std::printf("%-40s n=%zu intra=%.4f+-%.4f overall=%.4f+-%.4f\n", c.cell.c_str(),
                intra.n, intra.mean, intra.std, overall.mean, overall.std);
  }
  for (const auto& s : ledger.pair_stats) {
    std::printf("%-24s nodes=%zu edges=%zu linked %.3f:%.3f unlinked %.3f:%.3f\n",
                s.dataset.c_str(), s.num_nodes, s.num_edges, s.r_linked_intra,
                s.r_linked_inter, s.r_unlinked_intra, s.r_unlinked_inter);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link-inference attack experiments on graph neural networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string seeds_csv;
  bool quiet = false;
  std::string sweep = "reg_weights";
  size_t samples = 100000;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON experiment config")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seeds", seeds_csv, "Comma-separated seeds (overrides config)");
    sub->add_flag("--quiet", quiet, "Only print errors");
  };
  CLI::App* attack = app.add_subcommand("attack", "Run the configured attack cells");
  CLI::App* online = app.add_subcommand("online", "Sweep the attacker batch position");
  CLI::App* blackbox = app.add_subcommand("blackbox", "Shadow x vendor architecture grid");
  CLI::App* ablation = app.add_subcommand("ablation", "Regularization, depth or distortion sweep");
  CLI::App* stats = app.add_subcommand("stats", "Intra/inter-class pair statistics");
  for (CLI::App* sub : {attack, online, blackbox, ablation, stats}) add_common(sub);
  ablation->add_option("--sweep", sweep, "reg_weights | depth | distortion")
      ->check(CLI::IsMember({"reg_weights", "depth", "distortion"}));
  stats->add_option("--samples", samples, "Non-edge samples for the unlinked ratio");

  CLI11_PARSE(app, argc, argv);

  graphleak::SetLogLevel(quiet ? graphleak::LogLevel::kError : graphleak::LogLevel::kInfo);
  try {
    graphleak::AttackRunConfig cfg = graphleak::LoadAttackConfig(config_path);
    if (!seeds_csv.empty()) {
      cfg.seeds = ParseSeeds(seeds_csv);
      cfg.Validate();
    }
    graphleak::RunOutput output;
    if (attack->parsed()) {
      output = graphleak::RunAttack(cfg);
    } else if (online->parsed()) {
      output = graphleak::RunOnline(cfg);
    } else if (blackbox->parsed()) {
      output = graphleak::RunBlackbox(cfg);
    } else if (ablation->parsed()) {
      output = graphleak::RunAblation(cfg, graphleak::ParseAblationSweep(sweep));
    } else {
      output = graphleak::RunStats(cfg, samples);
    }
    graphleak::EmitReports(output, out_dir);
    if (!quiet) PrintSummary(output.ledger);
  } catch (const graphleak::InvalidArgument& e) {
    std::fprintf(stderr, "graphleak: invalid input: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "graphleak: %s\n", e.what());
    return 1;
  }
  return 0;
}
