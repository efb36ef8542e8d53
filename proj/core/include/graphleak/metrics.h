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

#ifndef GRAPHLEAK_METRICS_H_
#define GRAPHLEAK_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "graphleak/graph.h"
#include "graphleak/sampling.h"

namespace graphleak {

struct RocResult {
  double auc = 0.5;
  size_t n_pos = 0;
  size_t n_neg = 0;
};

// Mann-Whitney statistic with midranks: P(pos > neg) + P(tie) / 2. Labels
// are positive when nonzero. Throws InvalidArgument unless both classes are
// present.
RocResult Auc(std::span<const double> scores, std::span<const int> labels);

// Link score for an (u, v) pair of node ids; higher means more likely linked.
using PairScorer = std::function<double(size_t u, size_t v)>;

// Balanced evaluation pairs: min(n_pairs / 2, edges in scope) linked pairs
// and as many non-edges. Throws InsufficientData without edges in scope.
std::vector<PairSample> EvaluationPairs(const Graph& g, const PairScope& scope,
                                        size_t n_pairs, uint64_t seed);

RocResult ScorePairs(std::span<const PairSample> pairs, const PairScorer& score);

// AUC on pairs whose endpoints are both labelled k.
RocResult IntraClassAuc(const PairScorer& score, const Graph& g, int k,
                        size_t n_pairs, uint64_t seed,
                        std::function<bool(size_t, size_t)> admit = {});

// AUC on pairs drawn from the whole graph.
RocResult OverallAuc(const PairScorer& score, const Graph& g, size_t n_pairs,
                     uint64_t seed, std::function<bool(size_t, size_t)> admit = {});

}  // namespace graphleak

#endif  // GRAPHLEAK_METRICS_H_
