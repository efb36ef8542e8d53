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

#include "graphleak/sampling.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "graphleak/error.h"
#include "graphleak/log.h"
#include "graphleak/rng.h"

namespace graphleak {
namespace {

constexpr uint64_t kLinkedStream = 1;
constexpr uint64_t kUnlinkedStream = 2;
// Scopes with at most this many candidate pairs are enumerated exactly.
constexpr size_t kEnumerationLimit = 2'000'000;

size_t RoundCount(double x) { return static_cast<size_t>(std::llround(x)); }

std::vector<size_t> ScopeNodes(const Graph& g, const PairScope& scope) {
  std::vector<size_t> nodes;
  for (size_t v = 0; v < g.num_nodes(); ++v) {
    if (!scope.class_filter || g.label(v) == *scope.class_filter) {
      nodes.push_back(v);
    }
  }
  return nodes;
}

bool Admitted(const PairScope& scope, size_t u, size_t v) {
  return !scope.admit || scope.admit(u, v);
}

// Moves a uniform random subset of size k to the front and truncates.
template <typename T>
void ChooseInPlace(std::vector<T>& items, size_t k, SeededRng& rng) {
  k = std::min(k, items.size());
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + static_cast<size_t>(rng.UniformIndex(items.size() - i));
    std::swap(items[i], items[j]);
  }
  items.resize(k);
}

std::vector<std::pair<size_t, size_t>> EnumerateNonEdges(
    const Graph& g, const PairScope& scope, const std::vector<size_t>& nodes) {
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t a = 0; a < nodes.size(); ++a) {
    for (size_t b = a + 1; b < nodes.size(); ++b) {
      const size_t u = nodes[a], v = nodes[b];
      if (g.HasEdge(u, v) || !Admitted(scope, u, v)) continue;
      out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::pair<size_t, size_t>> SampleNonEdges(
    const Graph& g, const PairScope& scope, size_t count, SeededRng& rng) {
  const std::vector<size_t> nodes = ScopeNodes(g, scope);
  const size_t m = nodes.size();
  const size_t candidates = m < 2 ? 0 : m * (m - 1) / 2;
  if (candidates <= kEnumerationLimit) {
    auto all = EnumerateNonEdges(g, scope, nodes);
    ChooseInPlace(all, count, rng);
    return all;
  }
  std::vector<std::pair<size_t, size_t>> out;
  std::unordered_set<uint64_t> seen;
  const size_t max_attempts = 50 * count + 10'000;
  for (size_t attempt = 0; attempt < max_attempts && out.size() < count;
       ++attempt) {
    size_t u = nodes[rng.UniformIndex(m)];
    size_t v = nodes[rng.UniformIndex(m)];
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (g.HasEdge(u, v) || !Admitted(scope, u, v)) continue;
    if (!seen.insert(static_cast<uint64_t>(u) * g.num_nodes() + v).second) {
      continue;
    }
    out.emplace_back(u, v);
  }
  if (out.size() < count) {
    // The scope is close to exhausted; fall back to exact enumeration.
    auto all = EnumerateNonEdges(g, scope, nodes);
    ChooseInPlace(all, count, rng);
    return all;
  }
  return out;
}

}  // namespace

Graph SplitTrainTest(const Graph& g, double train_fraction, uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgument("SplitTrainTest: train_fraction must be in (0, 1)");
  }
  const size_t n = g.num_nodes();
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  SeededRng rng(seed);
  rng.Shuffle(std::span<size_t>(order));
  const size_t n_train = RoundCount(train_fraction * static_cast<double>(n));
  Mask train(n, false), test(n, true);
  for (size_t i = 0; i < n_train; ++i) {
    train[order[i]] = true;
    test[order[i]] = false;
  }
  return g.WithMasks(std::move(train), std::move(test));
}

PartialGraph SamplePartial(const Graph& g, double fraction, uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidArgument("SamplePartial: fraction must be in (0, 1]");
  }
  std::vector<size_t> train;
  for (size_t v = 0; v < g.num_nodes(); ++v) {
    if (g.train_mask()[v]) train.push_back(v);
  }
  if (train.empty()) throw InvalidArgument("SamplePartial: empty train mask");
  const size_t k = RoundCount(fraction * static_cast<double>(train.size()));
  SeededRng rng(seed);
  ChooseInPlace(train, k, rng);
  PartialGraph partial = InducedSubgraph(g, std::move(train));
  if (partial.graph.num_edges() == 0) {
    throw InsufficientData("SamplePartial: sampled " + std::to_string(k) +
                           " nodes but the induced subgraph has no edges");
  }
  return partial;
}

std::vector<PairSample> LinkedPairs(const Graph& g, const PairScope& scope) {
  std::vector<PairSample> out;
  for (const Edge& e : g.edges()) {
    if (scope.class_filter && (g.label(e.u) != *scope.class_filter ||
                               g.label(e.v) != *scope.class_filter)) {
      continue;
    }
    if (!Admitted(scope, e.u, e.v)) continue;
    out.push_back(MakePairSample(g, e.u, e.v));
  }
  return out;
}

std::vector<PairSample> SamplePairs(const Graph& g, const PairScope& scope,
                                    size_t n_linked, size_t n_unlinked,
                                    uint64_t seed) {
  SeededRng base(seed);
  std::vector<PairSample> linked = LinkedPairs(g, scope);
  if (linked.size() < n_linked) {
    throw InsufficientData(
        "SamplePairs: requested " + std::to_string(n_linked) +
        " linked pairs but only " + std::to_string(linked.size()) +
        " are in scope");
  }
  SeededRng linked_rng = base.Fork(kLinkedStream);
  ChooseInPlace(linked, n_linked, linked_rng);

  SeededRng unlinked_rng = base.Fork(kUnlinkedStream);
  auto non_edges = SampleNonEdges(g, scope, n_unlinked, unlinked_rng);
  if (non_edges.size() < n_unlinked) {
    if (non_edges.empty()) {
      throw InsufficientData(
          "SamplePairs: no unlinked pairs available in scope");
    }
    LogWarning("SamplePairs: only " + std::to_string(non_edges.size()) +
               " unlinked pairs available, requested " +
               std::to_string(n_unlinked));
  }
  std::vector<PairSample> out = std::move(linked);
  out.reserve(out.size() + non_edges.size());
  for (const auto& [u, v] : non_edges) out.push_back(MakePairSample(g, u, v));
  return out;
}

PairDistributionStats PairDistribution(const Graph& g, size_t n_samples,
                                       uint64_t seed) {
  if (g.num_edges() == 0) {
    throw InsufficientData("PairDistribution: graph has no edges");
  }
  PairDistributionStats s;
  size_t intra = 0;
  for (const Edge& e : g.edges()) intra += g.label(e.u) == g.label(e.v);
  s.r_linked_intra =
      static_cast<double>(intra) / static_cast<double>(g.num_edges());
  s.r_linked_inter = 1.0 - s.r_linked_intra;

  const size_t n = g.num_nodes();
  const size_t total_pairs = n * (n - 1) / 2;
  if (n_samples == 0 || total_pairs == g.num_edges()) {
    // Complete graph or no budget: no non-edges to describe.
    return s;
  }
  SeededRng rng(seed);
  size_t drawn = 0, unlinked_intra = 0;
  while (drawn < n_samples) {
    const size_t u = rng.UniformIndex(n);
    const size_t v = rng.UniformIndex(n);
    if (u == v || g.HasEdge(u, v)) continue;
    ++drawn;
    unlinked_intra += g.label(u) == g.label(v);
  }
  s.r_unlinked_intra =
      static_cast<double>(unlinked_intra) / static_cast<double>(drawn);
  s.r_unlinked_inter = 1.0 - s.r_unlinked_intra;
  return s;
}

}  // namespace graphleak
