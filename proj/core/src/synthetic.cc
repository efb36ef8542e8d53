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

#include "graphleak/synthetic.h"

#include <algorithm>
#include <numeric>

#include "graphleak/error.h"
#include "graphleak/rng.h"

namespace graphleak {
namespace {

void Validate(const SbmOptions& o) {
  if (o.num_classes < 1 || o.num_nodes < 2 || o.num_features < 1) {
    throw InvalidArgument("MakeSbmGraph: need >= 2 nodes, >= 1 class and feature");
  }
  if (!(o.p_inter >= 0.0 && o.p_inter < o.p_intra && o.p_intra <= 1.0)) {
    throw InvalidArgument(
        "MakeSbmGraph: probabilities must satisfy 0 <= p_inter < p_intra <= 1");
  }
  if (o.subclusters < 1) throw InvalidArgument("MakeSbmGraph: subclusters must be >= 1");
  if (!(o.subcluster_affinity >= 0.0 && o.subcluster_affinity <= 1.0)) {
    throw InvalidArgument("MakeSbmGraph: subcluster_affinity must be in [0, 1]");
  }
  if (!(o.secondary_weight >= 0.0 && o.secondary_weight <= 1.0)) {
    throw InvalidArgument("MakeSbmGraph: secondary_weight must be in [0, 1]");
  }
}

// Edge probability for an intra-class pair in the same or in different
// subclusters; the mean over a class's pairs stays close to p_intra.
double IntraProbability(const SbmOptions& o, bool same_subcluster) {
  if (o.subclusters == 1) return o.p_intra;
  const double s = static_cast<double>(o.subclusters);
  if (same_subcluster) return std::min(1.0, o.p_intra * o.subcluster_affinity * s);
  return std::min(1.0, o.p_intra * (1.0 - o.subcluster_affinity) * s / (s - 1.0));
}

std::vector<size_t> ClassSizes(const SbmOptions& o) {
  std::vector<size_t> sizes(o.num_classes, o.num_nodes / o.num_classes);
  for (size_t c = 0; c < o.num_nodes % o.num_classes; ++c) ++sizes[c];
  return sizes;
}

}  // namespace

Graph MakeSbmGraph(const SbmOptions& o) {
  Validate(o);
  SeededRng rng(o.seed);
  SeededRng label_rng = rng.Fork(1);
  SeededRng edge_rng = rng.Fork(2);
  SeededRng feature_rng = rng.Fork(3);

  const size_t n = o.num_nodes;
  std::vector<int> labels(n);
  for (size_t v = 0; v < n; ++v) labels[v] = static_cast<int>(v % o.num_classes);
  label_rng.Shuffle(std::span<int>(labels));

  // Subclusters round-robin over each class's nodes in id order.
  std::vector<size_t> sub(n);
  std::vector<size_t> seen(o.num_classes, 0);
  for (size_t v = 0; v < n; ++v) sub[v] = seen[labels[v]]++ % o.subclusters;

  const double p_same = IntraProbability(o, true);
  const double p_diff = IntraProbability(o, false);
  std::vector<Edge> edges;
  for (size_t u = 0; u < n; ++u) {
    for (size_t v = u + 1; v < n; ++v) {
      double p = o.p_inter;
      if (labels[u] == labels[v]) p = sub[u] == sub[v] ? p_same : p_diff;
      if (edge_rng.Bernoulli(p)) edges.push_back({u, v});
    }
  }

  const size_t d = o.num_features;
  Tensor x(n, d);
  if (o.feature_kind == SyntheticFeatures::kGaussian) {
    Tensor means(o.num_classes, d);
    for (double& m : means.data()) m = o.separation * feature_rng.Normal();
    for (size_t v = 0; v < n; ++v) {
      for (size_t j = 0; j < d; ++j) {
        x(v, j) = means(labels[v], j) + feature_rng.Normal();
      }
    }
  } else {
    // Each class owns a random block of the vocabulary.
    const size_t block = std::max<size_t>(1, d / o.num_classes);
    std::vector<size_t> vocab(d);
    std::iota(vocab.begin(), vocab.end(), 0);
    std::vector<std::vector<size_t>> topics(o.num_classes);
    for (int c = 0; c < o.num_classes; ++c) {
      feature_rng.Shuffle(std::span<size_t>(vocab));
      topics[c].assign(vocab.begin(), vocab.begin() + block);
    }
    // Secondary class of every (class, subcluster).
    std::vector<std::vector<int>> secondary(o.num_classes);
    if (o.secondary_weight > 0.0 && o.num_classes > 1) {
      SeededRng mix_rng = rng.Fork(4);
      for (int c = 0; c < o.num_classes; ++c) {
        for (size_t s = 0; s < o.subclusters; ++s) {
          int other = static_cast<int>(mix_rng.UniformIndex(o.num_classes - 1));
          if (other >= c) ++other;
          secondary[c].push_back(other);
        }
      }
    }
    for (size_t v = 0; v < n; ++v) {
      const auto& own = topics[labels[v]];
      for (size_t w = 0; w < o.words_per_node; ++w) {
        size_t word = 0;
        if (feature_rng.Bernoulli(o.word_noise)) {
          word = feature_rng.UniformIndex(d);
        } else {
          const bool borrow = !secondary[labels[v]].empty() &&
                              feature_rng.Bernoulli(o.secondary_weight);
          const auto& topic = borrow ? topics[secondary[labels[v]][sub[v]]] : own;
          word = topic[feature_rng.UniformIndex(topic.size())];
        }
        x(v, word) = 1.0;
      }
      double total = 0.0;
      for (double val : x.Row(v)) total += val;
      for (double& val : x.Row(v)) val /= total;
    }
  }
  return Graph(std::move(x), std::move(labels), o.num_classes, std::move(edges),
               o.name);
}

std::string_view SyntheticFeaturesName(SyntheticFeatures kind) {
  return kind == SyntheticFeatures::kGaussian ? "gaussian" : "bag_of_words";
}

SyntheticFeatures ParseSyntheticFeatures(std::string_view name) {
  if (name == "gaussian") return SyntheticFeatures::kGaussian;
  if (name == "bag_of_words") return SyntheticFeatures::kBagOfWords;
  throw InvalidArgument("unknown synthetic feature kind '" + std::string(name) + "'");
}

SbmExpectation ExpectedSbmRatios(const SbmOptions& o) {
  Validate(o);
  const std::vector<size_t> sizes = ClassSizes(o);
  double intra_pairs = 0.0, e_intra = 0.0;
  const double p_same = IntraProbability(o, true);
  const double p_diff = IntraProbability(o, false);
  for (size_t s : sizes) {
    const double pairs = 0.5 * static_cast<double>(s) * static_cast<double>(s - 1);
    double same = 0.0;
    for (size_t k = 0; k < o.subclusters; ++k) {
      const double m = static_cast<double>(s / o.subclusters +
                                           (k < s % o.subclusters ? 1 : 0));
      same += 0.5 * m * (m - 1.0);
    }
    intra_pairs += pairs;
    e_intra += same * p_same + (pairs - same) * p_diff;
  }
  const double n = static_cast<double>(o.num_nodes);
  const double inter_pairs = 0.5 * n * (n - 1.0) - intra_pairs;
  const double e_inter = inter_pairs * o.p_inter;
  const double ne_intra = intra_pairs - e_intra;
  const double ne_inter = inter_pairs * (1.0 - o.p_inter);
  SbmExpectation e;
  e.expected_edges = e_intra + e_inter;
  e.r_linked_intra = e_intra / (e_intra + e_inter);
  e.r_unlinked_intra = ne_intra / (ne_intra + ne_inter);
  return e;
}

}  // namespace graphleak
