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

#include "graphleak/experiment.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "graphleak/detector.h"
#include "graphleak/error.h"
#include "graphleak/homophily.h"
#include "graphleak/log.h"
#include "graphleak/metrics.h"
#include "graphleak/pca.h"
#include "graphleak/rng.h"
#include "graphleak/sampling.h"
#include "config_json.h"

namespace graphleak {

namespace {

// Stream ids for MixSeed so every stage draws from its own generator.
enum Stream : uint64_t {
  kSplitStream = 11,
  kPartialStream,
  kOnlineStream,
  kDatasetStream,
  kMlpStream,
  kAttnInitStream,
  kAttnTrainStream,
  kIntraPairStream,
  kOverallPairStream,
  kVendorStream,
  kShadowStream,
  kPoisonStream,
};

std::string FormatValue(double v) {
  // Short, stable labels for swept values: 0.1, 1, 10, 0.25.
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string FileStem(std::string_view label) {
  std::string out;
  for (char c : label) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
                      c == '-' || c == '_';
    out += keep ? c : '_';
  }
  return out;
}

// Online training schedule: `batches` stages, attacker batch at `position`.
struct Schedule {
  int batches = 1;
  int position = 1;
};

// One swept configuration: model and poisoning settings plus a label prefix.
struct Variant {
  std::string prefix;
  GnnConfig vendor;
  GnnConfig shadow;
  PoisonConfig poison;
  std::optional<Schedule> online;
};

struct VendorRun {
  Posteriors posteriors;
  double test_acc = 0.0;
};

struct PoisonedRun {
  VendorRun vendor;
  double homophily_shift = 0.0;
};

struct DetectorRun {
  PairDataset dataset;
  MlpDetector mlp;
  std::optional<AttnDetector> attn;
};

// Everything shared by the variants and cells of one seed.
class SeedRunner {
 public:
  SeedRunner(const Graph& g, const AttackRunConfig& cfg, uint64_t seed, RunOutput& out)
      : cfg_(cfg), seed_(seed), out_(out) {
    graph_ = SplitTrainTest(g, cfg.train_fraction, MixSeed(seed, kSplitStream));
    partial_ = SamplePartial(graph_, cfg.partial_fraction, MixSeed(seed, kPartialStream));
    in_partial_.assign(graph_.num_nodes(), false);
    for (size_t id : partial_.parent_ids) in_partial_[id] = true;
  }

  void Run(const Variant& var, std::span<const MethodCell> cells) {
    for (int k : cfg_.target_classes) {
      try {
        RunTarget(var, cells, k);
      } catch (const Error& e) {
        LogWarning("seed " + std::to_string(seed_) + " " + var.prefix + "k=" +
                   std::to_string(k) + " failed: " + e.what());
        for (const MethodCell& c : cells) {
          ExperimentReport r;
          r.cell = CellName(var, c, k);
          r.seed = seed_;
          r.target_class = k;
          r.status = "error";
          r.diagnostic = e.what();
          out_.ledger.runs.push_back(std::move(r));
        }
      }
    }
  }

 private:
  std::string CellName(const Variant& var, const MethodCell& c, int k) const {
    std::string name = var.prefix + c.Label();
    if (cfg_.target_classes.size() > 1) name += "/k=" + std::to_string(k);
    return name;
  }

  GnnConfig SeededConfig(GnnConfig c, uint64_t stream) const {
    c.seed = MixSeed(MixSeed(c.seed, seed_), stream);
    return c;
  }

  std::vector<Mask> OnlineMasks(const Schedule& s) const {
    // The attacker's nodes sit in batch `position`; the remaining training
    // nodes are shuffled into the other batches. Batch sizes differ by at
    // most one where the partial graph allows it.
    std::vector<size_t> others;
    for (size_t v = 0; v < graph_.num_nodes(); ++v) {
      if (graph_.train_mask()[v] && !in_partial_[v]) others.push_back(v);
    }
    SeededRng rng(MixSeed(seed_, kOnlineStream));
    rng.Shuffle(std::span<size_t>(others));
    const size_t total = others.size() + partial_.parent_ids.size();
    const size_t b = static_cast<size_t>(s.batches);
    std::vector<size_t> sizes(b, total / b);
    for (size_t i = 0; i < total % b; ++i) ++sizes[i];
    const size_t attacker = static_cast<size_t>(s.position - 1);
    std::vector<std::vector<size_t>> batches(b);
    batches[attacker] = partial_.parent_ids;
    if (batches[attacker].size() > sizes[attacker]) {
      LogWarning("online: attacker batch exceeds the even batch size");
      const size_t extra = batches[attacker].size() - sizes[attacker];
      sizes[attacker] = batches[attacker].size();
      // Shrink the other batches to keep the total.
      for (size_t i = 0, left = extra; left > 0; i = (i + 1) % b) {
        if (i != attacker && sizes[i] > 0) {
          --sizes[i];
          --left;
        }
      }
    }
    size_t next = 0;
    for (size_t i = 0; i < b; ++i) {
      while (batches[i].size() < sizes[i] && next < others.size()) {
        batches[i].push_back(others[next++]);
      }
    }
    std::vector<Mask> masks;
    Mask seen(graph_.num_nodes(), false);
    for (size_t i = 0; i < b; ++i) {
      Mask in_batch(graph_.num_nodes(), false);
      for (size_t v : batches[i]) in_batch[v] = seen[v] = true;
      size_t edges = 0;
      for (const Edge& e : graph_.edges()) edges += in_batch[e.u] && in_batch[e.v];
      if (edges == 0) {
        LogWarning("online: batch " + std::to_string(i + 1) + " has no edges");
      }
      masks.push_back(seen);
    }
    return masks;
  }

  // Vendor model trained on `features_graph` (clean or poisoned). Online
  // schedules feed the poisoned rows from the attacker's batch onwards.
  const VendorRun& Vendor(const Variant& var, const Graph& final_graph,
                          const std::string& poison_key) {
    const std::string key = VendorKey(var, poison_key);
    auto it = vendors_.find(key);
    if (it != vendors_.end()) return it->second;

    const GnnConfig vcfg = SeededConfig(var.vendor, kVendorStream);
    GnnModel model;
    if (!var.online) {
      model = TrainGnn(final_graph, vcfg);
    } else {
      vcfg.Validate();
      const Schedule& s = *var.online;
      GnnTrainer trainer(vcfg, graph_.num_features(), graph_.num_classes());
      const GraphOperators ops = GraphOperators::Build(graph_);
      const auto masks = OnlineMasks(s);
      for (int stage = 0; stage < s.batches; ++stage) {
        const int epochs = vcfg.epochs / s.batches + (stage < vcfg.epochs % s.batches ? 1 : 0);
        const Graph& g = stage + 1 >= s.position ? final_graph : graph_;
        trainer.RunEpochs(g, ops, masks[static_cast<size_t>(stage)], epochs);
      }
      model = trainer.model();
    }
    VendorRun run;
    run.posteriors = PredictPosteriors(model, final_graph);
    run.test_acc = Accuracy(run.posteriors, final_graph.labels(), final_graph.test_mask());
    return vendors_.emplace(key, std::move(run)).first->second;
  }

  // Poisons the partial graph for target k (cached per shadow and poison
  // settings), substitutes it into the full graph and trains the vendor.
  const PoisonedRun& Poisoned(const Variant& var, int k, std::string* key_out) {
    PoisonConfig pcfg = var.poison;
    pcfg.target_class = k;
    pcfg.seed = MixSeed(MixSeed(pcfg.seed, seed_), kPoisonStream);
    const GnnConfig scfg = SeededConfig(var.shadow, kShadowStream);
    const std::string key =
        internal::ToJson(scfg).dump() + internal::ToJson(pcfg).dump();
    *key_out = key;
    const std::string vendor_key = VendorKey(var, key);
    auto done = poisoned_.find(vendor_key);
    if (done != poisoned_.end()) return done->second;

    auto it = poisons_.find(key);
    if (it == poisons_.end()) {
      PoisonResult result = PgdPoison(partial_, scfg, pcfg);
      const std::string stem = FileStem(var.prefix + "k" + std::to_string(k) +
                                        "_seed" + std::to_string(seed_));
      out_.files["traces/" + stem + ".csv"] = TraceToCsv(result.trace);
      it = poisons_.emplace(key, std::move(result.poisoned.graph.features())).first;
    }
    Tensor x = graph_.features();
    const Tensor& px = it->second;
    for (size_t i = 0; i < partial_.parent_ids.size(); ++i) {
      std::copy_n(px.Row(i).data(), px.cols(), x.Row(partial_.parent_ids[i]).data());
    }
    const Graph poisoned = graph_.WithFeatures(std::move(x));
    const HomophilyDist after = ComputeHomophily(poisoned);
    PoisonedRun run{Vendor(var, poisoned, key), HomophilyShift(CleanHomophily(), after)};
    const std::string stem = FileStem(var.prefix + "k" + std::to_string(k) +
                                      "_seed" + std::to_string(seed_));
    out_.files["tables/homophily_" + stem + ".csv"] =
        HomophilyHistogramCsv(CleanHomophily(), after);
    return poisoned_.emplace(vendor_key, std::move(run)).first->second;
  }

  std::string VendorKey(const Variant& var, const std::string& poison_key) const {
    std::string key = internal::ToJson(var.vendor).dump() + "|" + poison_key;
    if (var.online) {
      key += "|online:" + std::to_string(var.online->batches) + ":" +
             std::to_string(var.online->position);
    }
    return key;
  }

  const HomophilyDist& CleanHomophily() {
    if (!clean_homophily_) clean_homophily_ = ComputeHomophily(graph_);
    return *clean_homophily_;
  }

  const DetectorRun& Detectors(const std::string& key, const Posteriors& posteriors,
                               int k, bool need_attn) {
    auto it = detectors_.find(key);
    if (it == detectors_.end()) {
      const Posteriors local = QueryPosteriors(posteriors, partial_.parent_ids);
      const PairScope scope =
          cfg_.detector_scope == "target" ? PairScope::Class(k) : PairScope::All();
      DetectorRun run{BuildPairDataset(partial_.graph, local, scope,
                                       MixSeed(seed_, kDatasetStream)),
                      {}, std::nullopt};
      run.mlp = TrainMlp(run.dataset, DetectorTrainOptions::Mlp(MixSeed(seed_, kMlpStream)));
      it = detectors_.emplace(key, std::move(run)).first;
    }
    DetectorRun& run = it->second;
    if (need_attn && !run.attn) {
      run.attn = TrainAttn(InitAttnFromMlp(run.mlp, MixSeed(seed_, kAttnInitStream)),
                           run.dataset,
                           DetectorTrainOptions::Attn(MixSeed(seed_, kAttnTrainStream)));
    }
    return run;
  }

  const std::vector<PairSample>& IntraPairs(int k) {
    auto it = intra_pairs_.find(k);
    if (it != intra_pairs_.end()) return it->second;
    PairScope scope = PairScope::Class(k);
    scope.admit = Admit();
    auto pairs = EvaluationPairs(graph_, scope, cfg_.eval_pairs,
                                 MixSeed(MixSeed(seed_, kIntraPairStream), k));
    return intra_pairs_.emplace(k, std::move(pairs)).first->second;
  }

  const std::vector<PairSample>& OverallPairs() {
    if (!overall_pairs_) {
      PairScope scope = PairScope::All();
      scope.admit = Admit();
      overall_pairs_ = EvaluationPairs(graph_, scope, cfg_.eval_pairs,
                                       MixSeed(seed_, kOverallPairStream));
    }
    return *overall_pairs_;
  }

  // Evaluation excludes pairs the attacker already owns.
  std::function<bool(size_t, size_t)> Admit() const {
    return [this](size_t u, size_t v) { return !(in_partial_[u] && in_partial_[v]); };
  }

  void RunTarget(const Variant& var, std::span<const MethodCell> cells, int k) {
    if (k >= graph_.num_classes()) {
      throw InvalidArgument("target class " + std::to_string(k) + " >= " +
                            std::to_string(graph_.num_classes()) + " classes");
    }
    const VendorRun& clean = Vendor(var, graph_, "clean");
    for (bool poisoning : {false, true}) {
      const bool wanted = std::any_of(cells.begin(), cells.end(), [&](const MethodCell& c) {
        return c.poisoning == poisoning;
      });
      if (!wanted) continue;
      const bool need_attn = std::any_of(cells.begin(), cells.end(), [&](const MethodCell& c) {
        return c.poisoning == poisoning && c.detector == DetectorKind::kAttn;
      });
      std::string poison_key = "clean";
      const PoisonedRun* poison = poisoning ? &Poisoned(var, k, &poison_key) : nullptr;
      const VendorRun& vendor = poison != nullptr ? poison->vendor : clean;
      const std::string det_key =
          VendorKey(var, poison_key) +
          (cfg_.detector_scope == "target" ? "|k" + std::to_string(k) : "");
      const DetectorRun& det = Detectors(det_key, vendor.posteriors, k, need_attn);

      for (const MethodCell& c : cells) {
        if (c.poisoning != poisoning) continue;
        const Detector detector = c.detector == DetectorKind::kMlp ? Detector(det.mlp)
                                                                   : Detector(*det.attn);
        const Posteriors& p = vendor.posteriors;
        const PairScorer scorer = [&](size_t u, size_t v) {
          return PredictLink(detector, SimilarityFeatures(p.Row(u), p.Row(v)));
        };
        ExperimentReport r;
        r.cell = CellName(var, c, k);
        r.seed = seed_;
        r.target_class = k;
        r.intra_class_auc = ScorePairs(IntraPairs(k), scorer).auc;
        r.overall_auc = ScorePairs(OverallPairs(), scorer).auc;
        r.detector_val_auc = SplitAuc(detector, det.dataset, false);
        r.detector_pairs = det.dataset.size();
        r.stealth = MakeStealthinessReport(clean.test_acc, vendor.test_acc,
                                           poison != nullptr ? poison->homophily_shift : 0.0,
                                           cfg_.thresholds);
        if (cfg_.emit_pca) EmitPca(r.cell, IntraPairs(k), p);
        out_.ledger.runs.push_back(std::move(r));
      }
    }
  }

  void EmitPca(const std::string& cell, std::span<const PairSample> pairs,
               const Posteriors& p) {
    Tensor features(pairs.size(), kNumSimilarityFeatures);
    std::vector<int> labels;
    for (size_t i = 0; i < pairs.size(); ++i) {
      const SimilarityFeature f = SimilarityFeatures(p.Row(pairs[i].u), p.Row(pairs[i].v));
      std::copy(f.begin(), f.end(), features.Row(i).begin());
      labels.push_back(pairs[i].linked ? 1 : 0);
    }
    try {
      const PcaResult pca = Pca2d(features);
      out_.files["pca/" + FileStem(cell) + "_seed" + std::to_string(seed_) + ".csv"] =
          ProjectionCsv(pca.projection, labels);
    } catch (const NumericalError& e) {
      LogWarning("PCA skipped for " + cell + ": " + e.what());
    }
  }

  const AttackRunConfig& cfg_;
  uint64_t seed_;
  RunOutput& out_;
  Graph graph_;
  PartialGraph partial_;
  Mask in_partial_;
  std::optional<HomophilyDist> clean_homophily_;
  std::map<std::string, VendorRun> vendors_;
  // Poisoned partial-graph features per shadow and poison settings.
  std::map<std::string, Tensor> poisons_;
  std::map<std::string, PoisonedRun> poisoned_;
  std::map<std::string, DetectorRun> detectors_;
  std::map<int, std::vector<PairSample>> intra_pairs_;
  std::optional<std::vector<PairSample>> overall_pairs_;
};

Variant BaseVariant(const AttackRunConfig& cfg) {
  Variant v{"", cfg.vendor, cfg.shadow, cfg.poison, std::nullopt};
  if (cfg.mode == AttackMode::kOnline) {
    v.online = Schedule{cfg.online_batches, cfg.poison_position};
  }
  return v;
}

RunOutput RunVariants(const AttackRunConfig& cfg, std::string command,
                      const std::vector<Variant>& variants) {
  cfg.Validate();
  const Graph g = LoadExperimentGraph(cfg);
  RunOutput out;
  out.ledger.command = std::move(command);
  out.ledger.config_json = AttackConfigToJson(cfg);
  const auto cells = cfg.Cells();
  for (uint64_t seed : cfg.seeds) {
    LogInfo("seed " + std::to_string(seed));
    std::unique_ptr<SeedRunner> runner;
    try {
      runner = std::make_unique<SeedRunner>(g, cfg, seed, out);
    } catch (const Error& e) {
      LogWarning("seed " + std::to_string(seed) + " failed: " + e.what());
      for (const Variant& var : variants) {
        for (int k : cfg.target_classes) {
          for (const MethodCell& c : cells) {
            ExperimentReport r;
            r.cell = var.prefix + c.Label() +
                     (cfg.target_classes.size() > 1 ? "/k=" + std::to_string(k) : "");
            r.seed = seed;
            r.target_class = k;
            r.status = "error";
            r.diagnostic = e.what();
            out.ledger.runs.push_back(std::move(r));
          }
        }
      }
      continue;
    }
    for (const Variant& var : variants) runner->Run(var, cells);
  }
  Aggregate(out.ledger);
  return out;
}

}  // namespace

const std::vector<std::string>& LedgerMetricNames() {
  static const std::vector<std::string> kNames = {
      "overall_auc", "intra_class_auc", "detector_val_auc", "acc_clean",
      "acc_poisoned", "acc_delta",      "homophily_shift"};
  return kNames;
}

double MetricValue(const ExperimentReport& r, std::string_view metric) {
  if (metric == "overall_auc") return r.overall_auc;
  if (metric == "intra_class_auc") return r.intra_class_auc;
  if (metric == "detector_val_auc") return r.detector_val_auc;
  if (metric == "acc_clean") return r.stealth.acc_clean;
  if (metric == "acc_poisoned") return r.stealth.acc_poisoned;
  if (metric == "acc_delta") return r.stealth.acc_delta;
  if (metric == "homophily_shift") return r.stealth.homophily_shift;
  throw InvalidArgument("unknown metric '" + std::string(metric) + "'");
}

void Aggregate(RunLedger& ledger) {
  ledger.cells.clear();
  ledger.aggregate.clear();
  for (const ExperimentReport& r : ledger.runs) {
    if (std::find(ledger.cells.begin(), ledger.cells.end(), r.cell) == ledger.cells.end()) {
      ledger.cells.push_back(r.cell);
    }
  }
  for (const std::string& cell : ledger.cells) {
    CellSummary summary{cell, {}};
    for (const std::string& metric : LedgerMetricNames()) {
      std::vector<double> values;
      for (const ExperimentReport& r : ledger.runs) {
        if (r.cell == cell && r.status == "ok") values.push_back(MetricValue(r, metric));
      }
      MetricSummary m;
      m.n = values.size();
      if (!values.empty()) {
        double sum = 0.0;
        for (double v : values) sum += v;
        m.mean = sum / static_cast<double>(values.size());
        double ss = 0.0;
        for (double v : values) ss += (v - m.mean) * (v - m.mean);
        m.std = std::sqrt(ss / static_cast<double>(values.size()));
      }
      summary.metrics[metric] = m;
    }
    ledger.aggregate.push_back(std::move(summary));
  }
}

RunOutput RunAttack(const AttackRunConfig& cfg) {
  cfg.Validate();
  if (cfg.mode == AttackMode::kBlackbox && cfg.shadow.arch == cfg.vendor.arch) {
    throw InvalidArgument("blackbox mode needs different shadow and vendor architectures");
  }
  return RunVariants(cfg, "attack", {BaseVariant(cfg)});
}

RunOutput RunOnline(const AttackRunConfig& cfg) {
  cfg.Validate();
  std::vector<Variant> variants;
  for (int p = 1; p <= cfg.online_batches; ++p) {
    Variant v = BaseVariant(cfg);
    v.online = Schedule{cfg.online_batches, p};
    v.prefix = "p=" + std::to_string(p) + "/";
    variants.push_back(std::move(v));
  }
  return RunVariants(cfg, "online", variants);
}

RunOutput RunBlackbox(const AttackRunConfig& cfg) {
  cfg.Validate();
  std::vector<Variant> variants;
  for (GnnArch shadow : cfg.blackbox_archs) {
    for (GnnArch vendor : cfg.blackbox_archs) {
      Variant v = BaseVariant(cfg);
      v.shadow.arch = shadow;
      v.vendor.arch = vendor;
      v.prefix = "shadow=" + std::string(ArchName(shadow)) + ",vendor=" +
                 std::string(ArchName(vendor)) + "/";
      variants.push_back(std::move(v));
    }
  }
  return RunVariants(cfg, "blackbox", variants);
}

RunOutput RunAblation(const AttackRunConfig& cfg, AblationSweep sweep) {
  cfg.Validate();
  std::vector<Variant> variants;
  switch (sweep) {
    case AblationSweep::kRegWeights:
      for (double a : {0.1, 1.0, 10.0}) {
        for (double b : {0.01, 0.1, 1.0}) {
          for (double l : {0.1, 1.0}) {
            Variant v = BaseVariant(cfg);
            v.poison.alpha = a;
            v.poison.beta = b;
            v.poison.lambda = l;
            v.prefix = "alpha=" + FormatValue(a) + ",beta=" + FormatValue(b) +
                       ",lambda=" + FormatValue(l) + "/";
            variants.push_back(std::move(v));
          }
        }
      }
      break;
    case AblationSweep::kDepth:
      for (int d = 1; d <= 5; ++d) {
        Variant v = BaseVariant(cfg);
        v.vendor.depth = d;
        v.shadow.depth = d;
        v.prefix = "depth=" + std::to_string(d) + "/";
        variants.push_back(std::move(v));
      }
      break;
    case AblationSweep::kDistortion:
      if (!(cfg.poison.step_size > 0.0)) {
        throw InvalidArgument("distortion sweep needs a positive step_size");
      }
      for (double budget : {0.0, 0.25, 0.5, 1.0}) {
        Variant v = BaseVariant(cfg);
        v.poison.iterations = static_cast<int>(std::llround(budget / cfg.poison.step_size));
        v.prefix = "distortion=" + FormatValue(budget) + "/";
        variants.push_back(std::move(v));
      }
      break;
  }
  return RunVariants(cfg, "ablation_" + std::string(AblationSweepName(sweep)), variants);
}

RunOutput RunStats(const AttackRunConfig& cfg, size_t n_samples) {
  cfg.Validate();
  const Graph g = LoadExperimentGraph(cfg);
  RunOutput out;
  out.ledger.command = "stats";
  out.ledger.config_json = AttackConfigToJson(cfg);
  const PairDistributionStats s = PairDistribution(g, n_samples, MixSeed(cfg.seeds.front(), 1));
  out.ledger.pair_stats.push_back({g.name(), g.num_nodes(), g.num_edges(), s.r_linked_intra,
                                   s.r_linked_inter, s.r_unlinked_intra, s.r_unlinked_inter});
  if (cfg.synthetic) {
    const SbmExpectation e = ExpectedSbmRatios(*cfg.synthetic);
    out.ledger.pair_stats.push_back(
        {g.name() + ":expected", g.num_nodes(),
         static_cast<size_t>(std::llround(e.expected_edges)), e.r_linked_intra,
         1.0 - e.r_linked_intra, e.r_unlinked_intra, 1.0 - e.r_unlinked_intra});
  }
  return out;
}

}  // namespace graphleak
