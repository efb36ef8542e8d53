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

#include "graphleak/metrics.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "graphleak/error.h"

namespace graphleak {

RocResult Auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw InvalidArgument("Auc: " + std::to_string(scores.size()) +
                          " scores but " + std::to_string(labels.size()) +
                          " labels");
  }
  const size_t n = scores.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });
  RocResult r;
  double pos_rank_sum = 0.0;
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    // Ranks i+1 .. j share the midrank.
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (size_t t = i; t < j; ++t) {
      if (labels[order[t]] != 0) {
        pos_rank_sum += midrank;
        ++r.n_pos;
      }
    }
    i = j;
  }
  r.n_neg = n - r.n_pos;
  if (r.n_pos == 0 || r.n_neg == 0) {
    throw InvalidArgument("Auc: need both positive and negative labels");
  }
  const double np = static_cast<double>(r.n_pos);
  const double u = pos_rank_sum - np * (np + 1.0) / 2.0;
  r.auc = u / (np * static_cast<double>(r.n_neg));
  return r;
}

std::vector<PairSample> EvaluationPairs(const Graph& g, const PairScope& scope,
                                        size_t n_pairs, uint64_t seed) {
  const size_t available = LinkedPairs(g, scope).size();
  if (available == 0) {
    throw InsufficientData("EvaluationPairs: no linked pairs in scope");
  }
  const size_t n_linked = std::min(std::max<size_t>(n_pairs / 2, 1), available);
  return SamplePairs(g, scope, n_linked, n_linked, seed);
}

RocResult ScorePairs(std::span<const PairSample> pairs, const PairScorer& score) {
  std::vector<double> scores;
  std::vector<int> labels;
  scores.reserve(pairs.size());
  labels.reserve(pairs.size());
  for (const PairSample& p : pairs) {
    scores.push_back(score(p.u, p.v));
    labels.push_back(p.linked ? 1 : 0);
  }
  return Auc(scores, labels);
}

RocResult IntraClassAuc(const PairScorer& score, const Graph& g, int k,
                        size_t n_pairs, uint64_t seed,
                        std::function<bool(size_t, size_t)> admit) {
  PairScope scope = PairScope::Class(k);
  scope.admit = std::move(admit);
  return ScorePairs(EvaluationPairs(g, scope, n_pairs, seed), score);
}

RocResult OverallAuc(const PairScorer& score, const Graph& g, size_t n_pairs,
                     uint64_t seed, std::function<bool(size_t, size_t)> admit) {
  PairScope scope = PairScope::All();
  scope.admit = std::move(admit);
  return ScorePairs(EvaluationPairs(g, scope, n_pairs, seed), score);
}

}  // namespace graphleak
