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

#include <algorithm>
#include <cctype>
#include <set>
#include <string>

#include "config_json.h"
#include "graphleak/csv_util.h"
#include "graphleak/dataset_io.h"
#include "graphleak/error.h"
#include "graphleak/experiment.h"

namespace graphleak {

using internal::Json;

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string_view DetectorKindName(DetectorKind kind) {
  return kind == DetectorKind::kMlp ? "mlp" : "attn";
}

DetectorKind ParseDetectorKind(std::string_view name) {
  const std::string s = Lower(name);
  if (s == "mlp") return DetectorKind::kMlp;
  if (s == "attn" || s == "attention") return DetectorKind::kAttn;
  throw InvalidArgument("unknown detector '" + std::string(name) + "'");
}

std::string_view AttackModeName(AttackMode mode) {
  switch (mode) {
    case AttackMode::kOffline:
      return "offline";
    case AttackMode::kOnline:
      return "online";
    case AttackMode::kBlackbox:
      return "blackbox";
  }
  return "offline";
}

AttackMode ParseAttackMode(std::string_view name) {
  const std::string s = Lower(name);
  if (s == "offline") return AttackMode::kOffline;
  if (s == "online") return AttackMode::kOnline;
  if (s == "blackbox") return AttackMode::kBlackbox;
  throw InvalidArgument("unknown mode '" + std::string(name) + "'");
}

std::string_view AblationSweepName(AblationSweep sweep) {
  switch (sweep) {
    case AblationSweep::kRegWeights:
      return "reg_weights";
    case AblationSweep::kDepth:
      return "depth";
    case AblationSweep::kDistortion:
      return "distortion";
  }
  return "reg_weights";
}

AblationSweep ParseAblationSweep(std::string_view name) {
  const std::string s = Lower(name);
  if (s == "reg_weights") return AblationSweep::kRegWeights;
  if (s == "depth") return AblationSweep::kDepth;
  if (s == "distortion") return AblationSweep::kDistortion;
  throw InvalidArgument("unknown ablation sweep '" + std::string(name) + "'");
}

std::string MethodCell::Label() const {
  return std::string(poisoning ? "VS" : "SLA") + "+" +
         (detector == DetectorKind::kMlp ? "MLP" : "ATTN");
}

void AttackRunConfig::Validate() const {
  if (dataset.empty() == !synthetic.has_value()) {
    throw InvalidArgument("config: set exactly one of 'dataset' and 'synthetic'");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgument("config: train_fraction must be in (0, 1)");
  }
  if (!(partial_fraction > 0.0 && partial_fraction <= 1.0)) {
    throw InvalidArgument("config: partial_fraction must be in (0, 1]");
  }
  vendor.Validate();
  shadow.Validate();
  poison.Validate();
  if (poisoning.empty() || detector.empty()) {
    throw InvalidArgument("config: 'poisoning' and 'detector' must be non-empty");
  }
  if (target_classes.empty()) throw InvalidArgument("config: no target classes");
  for (int k : target_classes) {
    if (k < 0) throw InvalidArgument("config: negative target class");
  }
  if (seeds.empty()) throw InvalidArgument("config: no seeds");
  if (online_batches < 1) throw InvalidArgument("config: online_batches must be >= 1");
  if (poison_position < 1 || poison_position > online_batches) {
    throw InvalidArgument("config: poison_position must be in [1, online_batches]");
  }
  if (blackbox_archs.empty()) throw InvalidArgument("config: empty blackbox_archs");
  std::set<GnnArch> distinct(blackbox_archs.begin(), blackbox_archs.end());
  if (distinct.size() != blackbox_archs.size()) {
    throw InvalidArgument("config: blackbox_archs must be distinct");
  }
  if (detector_scope != "all" && detector_scope != "target") {
    throw InvalidArgument("config: detector_scope must be 'all' or 'target'");
  }
  if (eval_pairs < 2) throw InvalidArgument("config: eval_pairs must be >= 2");
}

std::vector<MethodCell> AttackRunConfig::Cells() const {
  std::vector<MethodCell> cells;
  for (bool p : poisoning) {
    for (DetectorKind d : detector) {
      MethodCell c{p, d};
      if (std::find(cells.begin(), cells.end(), c) == cells.end()) cells.push_back(c);
    }
  }
  return cells;
}

AttackRunConfig DefaultAttackConfig() { return AttackRunConfig{}; }

std::string AttackConfigToJson(const AttackRunConfig& cfg) {
  Json j;
  j["dataset"] = cfg.dataset;
  j["synthetic"] = cfg.synthetic ? internal::ToJson(*cfg.synthetic) : Json(nullptr);
  j["train_fraction"] = cfg.train_fraction;
  j["partial_fraction"] = cfg.partial_fraction;
  j["vendor"] = internal::ToJson(cfg.vendor);
  j["shadow"] = internal::ToJson(cfg.shadow);
  j["poison"] = internal::ToJson(cfg.poison);
  j["poisoning"] = cfg.poisoning;
  Json dets = Json::array();
  for (DetectorKind d : cfg.detector) dets.push_back(std::string(DetectorKindName(d)));
  j["detector"] = std::move(dets);
  j["target_classes"] = cfg.target_classes;
  j["seeds"] = cfg.seeds;
  j["mode"] = std::string(AttackModeName(cfg.mode));
  j["online_batches"] = cfg.online_batches;
  j["poison_position"] = cfg.poison_position;
  Json archs = Json::array();
  for (GnnArch a : cfg.blackbox_archs) archs.push_back(std::string(ArchName(a)));
  j["blackbox_archs"] = std::move(archs);
  j["detector_scope"] = cfg.detector_scope;
  j["eval_pairs"] = cfg.eval_pairs;
  j["thresholds"] = internal::ToJson(cfg.thresholds);
  j["emit_pca"] = cfg.emit_pca;
  return j.dump(2);
}

AttackRunConfig AttackConfigFromJson(std::string_view json) {
  AttackRunConfig cfg = DefaultAttackConfig();
  try {
    const Json j = Json::parse(json);
    internal::RejectUnknownKeys(
        j, {"dataset", "synthetic", "train_fraction", "partial_fraction", "vendor",
            "shadow", "poison", "poisoning", "detector", "target_classes", "seeds",
            "mode", "online_batches", "poison_position", "blackbox_archs",
            "detector_scope", "eval_pairs", "thresholds", "emit_pca"},
        "attack config");
    if (j.contains("dataset")) cfg.dataset = j.at("dataset").get<std::string>();
    if (j.contains("synthetic")) {
      const Json& s = j.at("synthetic");
      if (s.is_null()) {
        cfg.synthetic.reset();
      } else {
        SbmOptions o;
        internal::MergeJson(s, o);
        cfg.synthetic = o;
      }
    }
    if (j.contains("train_fraction")) cfg.train_fraction = j.at("train_fraction").get<double>();
    if (j.contains("partial_fraction")) {
      cfg.partial_fraction = j.at("partial_fraction").get<double>();
    }
    if (j.contains("vendor")) internal::MergeJson(j.at("vendor"), cfg.vendor);
    if (j.contains("shadow")) internal::MergeJson(j.at("shadow"), cfg.shadow);
    if (j.contains("poison")) internal::MergeJson(j.at("poison"), cfg.poison);
    if (j.contains("poisoning")) {
      const Json& p = j.at("poisoning");
      cfg.poisoning = p.is_array() ? p.get<std::vector<bool>>()
                                   : std::vector<bool>{p.get<bool>()};
    }
    if (j.contains("detector")) {
      const Json& d = j.at("detector");
      cfg.detector.clear();
      if (d.is_array()) {
        for (const auto& name : d) cfg.detector.push_back(ParseDetectorKind(name.get<std::string>()));
      } else {
        cfg.detector.push_back(ParseDetectorKind(d.get<std::string>()));
      }
    }
    if (j.contains("target_classes")) {
      cfg.target_classes = j.at("target_classes").get<std::vector<int>>();
    }
    if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<uint64_t>>();
    if (j.contains("mode")) cfg.mode = ParseAttackMode(j.at("mode").get<std::string>());
    if (j.contains("online_batches")) cfg.online_batches = j.at("online_batches").get<int>();
    if (j.contains("poison_position")) cfg.poison_position = j.at("poison_position").get<int>();
    if (j.contains("blackbox_archs")) {
      cfg.blackbox_archs.clear();
      for (const auto& a : j.at("blackbox_archs")) {
        cfg.blackbox_archs.push_back(ParseArch(a.get<std::string>()));
      }
    }
    if (j.contains("detector_scope")) {
      cfg.detector_scope = j.at("detector_scope").get<std::string>();
    }
    if (j.contains("eval_pairs")) cfg.eval_pairs = j.at("eval_pairs").get<size_t>();
    if (j.contains("thresholds")) internal::MergeJson(j.at("thresholds"), cfg.thresholds);
    if (j.contains("emit_pca")) cfg.emit_pca = j.at("emit_pca").get<bool>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("attack config: ") + e.what());
  }
  cfg.Validate();
  return cfg;
}

AttackRunConfig LoadAttackConfig(const std::filesystem::path& path) {
  AttackRunConfig cfg = AttackConfigFromJson(ReadFile(path));
  // Relative dataset paths resolve against the config file's directory.
  if (!cfg.dataset.empty()) {
    std::filesystem::path d(cfg.dataset);
    if (d.is_relative() && !std::filesystem::exists(d)) {
      cfg.dataset = (path.parent_path() / d).lexically_normal().string();
    }
  }
  return cfg;
}

Graph LoadExperimentGraph(const AttackRunConfig& cfg) {
  if (cfg.synthetic) return MakeSbmGraph(*cfg.synthetic);
  return LoadCanonical(cfg.dataset);
}

}  // namespace graphleak
