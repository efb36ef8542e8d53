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

#ifndef GRAPHLEAK_SAMPLING_H_
#define GRAPHLEAK_SAMPLING_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "graphleak/graph.h"

namespace graphleak {

// Marks round(train_fraction * n) uniformly chosen nodes as train and the
// rest as test.
Graph SplitTrainTest(const Graph& g, double train_fraction, uint64_t seed);

// Induced subgraph over round(fraction * |train|) uniformly chosen training
// nodes. Throws InsufficientData when the sample has no edges.
PartialGraph SamplePartial(const Graph& g, double fraction, uint64_t seed);

// Which node pairs a sampler may return.
struct PairScope {
  // Restrict to pairs whose endpoints both carry this label.
  std::optional<int> class_filter;
  // Optional extra predicate on (u, v) with u < v; pairs it rejects are
  // neither sampled nor counted.
  std::function<bool(size_t, size_t)> admit;

  static PairScope All() { return {}; }
  static PairScope Class(int k) { return {k, {}}; }
};

// Every edge in scope, as PairSamples with u < v, in edge order.
std::vector<PairSample> LinkedPairs(const Graph& g, const PairScope& scope);

// Draws n_linked edges and n_unlinked non-edges uniformly without
// replacement from the scope. Throws InsufficientData if fewer than
// n_linked edges are in scope. If fewer than n_unlinked non-edges exist, all
// of them are returned with a warning; zero available non-edges when some
// were requested is an InsufficientData error. Linked pairs come first.
std::vector<PairSample> SamplePairs(const Graph& g, const PairScope& scope,
                                    size_t n_linked, size_t n_unlinked,
                                    uint64_t seed);

// Intra/inter-class ratios. Linked ratios are exact over all edges; unlinked
// ratios are estimated from n_samples uniform non-edge draws.
PairDistributionStats PairDistribution(const Graph& g, size_t n_samples,
                                       uint64_t seed);

}  // namespace graphleak

#endif  // GRAPHLEAK_SAMPLING_H_
