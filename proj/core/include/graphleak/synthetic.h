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

#ifndef GRAPHLEAK_SYNTHETIC_H_
#define GRAPHLEAK_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "graphleak/graph.h"

namespace graphleak {

enum class SyntheticFeatures {
  // Class means drawn from N(0, separation^2) per dimension plus unit noise.
  kGaussian,
  // Binary bag of words: each class prefers a block of the vocabulary;
  // rows are normalized to sum to one (citation-graph style).
  kBagOfWords,
};

// Stochastic block model with class-correlated features. Used by tests and
// benchmarks so nothing depends on downloaded datasets.
struct SbmOptions {
  size_t num_nodes = 500;
  int num_classes = 5;
  double p_intra = 0.02;
  double p_inter = 0.001;
  size_t num_features = 64;
  SyntheticFeatures feature_kind = SyntheticFeatures::kBagOfWords;
  // kBagOfWords: words per node and the probability a word is drawn from the
  // whole vocabulary instead of the class block.
  size_t words_per_node = 12;
  double word_noise = 0.5;
  // kGaussian: scale of the class means.
  double separation = 1.0;
  // Optional structure inside each class. With subclusters > 1, a share
  // `subcluster_affinity` of each class's expected edges falls inside the
  // same subcluster, and every subcluster draws `secondary_weight` of its
  // topic words from one other class (bag of words only).
  size_t subclusters = 1;
  double subcluster_affinity = 0.8;
  double secondary_weight = 0.0;
  uint64_t seed = 0;
  std::string name = "sbm";

  friend bool operator==(const SbmOptions&, const SbmOptions&) = default;
};

std::string_view SyntheticFeaturesName(SyntheticFeatures kind);
SyntheticFeatures ParseSyntheticFeatures(std::string_view name);

// Labels are balanced (sizes differ by at most one) and randomly placed.
Graph MakeSbmGraph(const SbmOptions& options);

struct SbmExpectation {
  double expected_edges = 0.0;
  // Expected intra-class share among edges and among non-edges.
  double r_linked_intra = 0.0;
  double r_unlinked_intra = 0.0;
};

// Closed-form expectations for MakeSbmGraph(options).
SbmExpectation ExpectedSbmRatios(const SbmOptions& options);

}  // namespace graphleak

#endif  // GRAPHLEAK_SYNTHETIC_H_
