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

#include "config_json.h"

#include <string>

#include "graphleak/error.h"

namespace graphleak::internal {

void RejectUnknownKeys(const Json& j, std::initializer_list<std::string_view> allowed,
                       std::string_view where) {
  if (!j.is_object()) {
    throw InvalidArgument(std::string(where) + ": expected a JSON object");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (std::string_view key : allowed) known = known || item.key() == key;
    if (!known) {
      throw InvalidArgument(std::string(where) + ": unknown key '" + item.key() + "'");
    }
  }
}

namespace {

template <typename T>
void Take(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

Json ToJson(const GnnConfig& c) {
  Json j;
  j["arch"] = std::string(ArchName(c.arch));
  j["depth"] = c.depth;
  j["hidden_dim"] = c.hidden_dim;
  j["num_heads"] = c.num_heads;
  j["dropout"] = c.dropout;
  j["lr"] = c.lr;
  j["epochs"] = c.epochs;
  j["weight_decay"] = c.weight_decay;
  j["seed"] = c.seed;
  return j;
}

void MergeJson(const Json& j, GnnConfig& c) {
  RejectUnknownKeys(j, {"arch", "depth", "hidden_dim", "num_heads", "dropout",
                        "lr", "epochs", "weight_decay", "seed"},
                    "gnn config");
  if (j.contains("arch")) c.arch = ParseArch(j.at("arch").get<std::string>());
  Take(j, "depth", c.depth);
  Take(j, "hidden_dim", c.hidden_dim);
  Take(j, "num_heads", c.num_heads);
  Take(j, "dropout", c.dropout);
  Take(j, "lr", c.lr);
  Take(j, "epochs", c.epochs);
  Take(j, "weight_decay", c.weight_decay);
  Take(j, "seed", c.seed);
}

Json ToJson(const PoisonConfig& c) {
  Json j;
  j["target_class"] = c.target_class;
  j["step_size"] = c.step_size;
  j["iterations"] = c.iterations;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["lambda"] = c.lambda;
  j["unlinked_sample_cap"] =
      c.unlinked_sample_cap ? Json(*c.unlinked_sample_cap) : Json(nullptr);
  j["gradient_mode"] = std::string(GradientModeName(c.gradient_mode));
  j["linf_radius"] = c.linf_radius ? Json(*c.linf_radius) : Json(nullptr);
  j["ce_descent"] = c.ce_descent;
  j["seed"] = c.seed;
  return j;
}

void MergeJson(const Json& j, PoisonConfig& c) {
  RejectUnknownKeys(j, {"target_class", "step_size", "iterations", "alpha", "beta",
                        "lambda", "unlinked_sample_cap", "gradient_mode",
                        "linf_radius", "ce_descent", "seed"},
                    "poison config");
  Take(j, "target_class", c.target_class);
  Take(j, "step_size", c.step_size);
  Take(j, "iterations", c.iterations);
  Take(j, "alpha", c.alpha);
  Take(j, "beta", c.beta);
  Take(j, "lambda", c.lambda);
  if (j.contains("unlinked_sample_cap")) {
    const Json& v = j.at("unlinked_sample_cap");
    c.unlinked_sample_cap =
        v.is_null() ? std::nullopt : std::optional<size_t>(v.get<size_t>());
  }
  if (j.contains("gradient_mode")) {
    c.gradient_mode = ParseGradientMode(j.at("gradient_mode").get<std::string>());
  }
  if (j.contains("linf_radius")) {
    const Json& v = j.at("linf_radius");
    c.linf_radius = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
  }
  Take(j, "ce_descent", c.ce_descent);
  Take(j, "seed", c.seed);
}

Json ToJson(const SbmOptions& o) {
  Json j;
  j["num_nodes"] = o.num_nodes;
  j["num_classes"] = o.num_classes;
  j["p_intra"] = o.p_intra;
  j["p_inter"] = o.p_inter;
  j["num_features"] = o.num_features;
  j["feature_kind"] = std::string(SyntheticFeaturesName(o.feature_kind));
  j["words_per_node"] = o.words_per_node;
  j["word_noise"] = o.word_noise;
  j["separation"] = o.separation;
  j["subclusters"] = o.subclusters;
  j["subcluster_affinity"] = o.subcluster_affinity;
  j["secondary_weight"] = o.secondary_weight;
  j["seed"] = o.seed;
  j["name"] = o.name;
  return j;
}

void MergeJson(const Json& j, SbmOptions& o) {
  RejectUnknownKeys(j, {"num_nodes", "num_classes", "p_intra", "p_inter",
                        "num_features", "feature_kind", "words_per_node",
                        "word_noise", "separation", "subclusters",
                        "subcluster_affinity", "secondary_weight", "seed", "name"},
                    "synthetic config");
  Take(j, "num_nodes", o.num_nodes);
  Take(j, "num_classes", o.num_classes);
  Take(j, "p_intra", o.p_intra);
  Take(j, "p_inter", o.p_inter);
  Take(j, "num_features", o.num_features);
  if (j.contains("feature_kind")) {
    o.feature_kind = ParseSyntheticFeatures(j.at("feature_kind").get<std::string>());
  }
  Take(j, "words_per_node", o.words_per_node);
  Take(j, "word_noise", o.word_noise);
  Take(j, "separation", o.separation);
  Take(j, "subclusters", o.subclusters);
  Take(j, "subcluster_affinity", o.subcluster_affinity);
  Take(j, "secondary_weight", o.secondary_weight);
  Take(j, "seed", o.seed);
  Take(j, "name", o.name);
}

Json ToJson(const StealthinessThresholds& t) {
  Json j;
  j["max_acc_delta"] = t.max_acc_delta;
  j["max_homophily_shift"] = t.max_homophily_shift;
  return j;
}

void MergeJson(const Json& j, StealthinessThresholds& t) {
  RejectUnknownKeys(j, {"max_acc_delta", "max_homophily_shift"}, "thresholds");
  Take(j, "max_acc_delta", t.max_acc_delta);
  Take(j, "max_homophily_shift", t.max_homophily_shift);
}

}  // namespace graphleak::internal
