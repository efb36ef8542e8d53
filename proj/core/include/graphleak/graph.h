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

#ifndef GRAPHLEAK_GRAPH_H_
#define GRAPHLEAK_GRAPH_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphleak/tensor.h"

namespace graphleak {

using Mask = std::vector<bool>;

// Undirected edge, stored once with u < v.
struct Edge {
  size_t u = 0;
  size_t v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Node-classification dataset: features, labels, undirected topology and a
// train/test split. Immutable; the With* methods return modified copies.
class Graph {
 public:
  Graph() = default;
  // Edges may be given in either orientation and may repeat; they are
  // canonicalized to sorted, unique u < v pairs. Self-loops are rejected.
  // Masks start empty (all false).
  Graph(Tensor features, std::vector<int> labels, int num_classes,
        std::vector<Edge> edges, std::string name = "");

  size_t num_nodes() const { return labels_.size(); }
  size_t num_features() const { return features_.cols(); }
  int num_classes() const { return num_classes_; }
  size_t num_edges() const { return edges_.size(); }
  const std::string& name() const { return name_; }

  const Tensor& features() const { return features_; }
  std::span<const int> labels() const { return labels_; }
  int label(size_t v) const { return labels_[v]; }
  std::span<const Edge> edges() const { return edges_; }
  const Mask& train_mask() const { return train_mask_; }
  const Mask& test_mask() const { return test_mask_; }

  // Sorted neighbor ids of v.
  std::span<const size_t> Neighbors(size_t v) const;
  size_t Degree(size_t v) const { return Neighbors(v).size(); }
  bool HasEdge(size_t u, size_t v) const;

  // Throws unless masks have length n and are disjoint.
  Graph WithMasks(Mask train, Mask test) const;
  // Replaces the feature matrix; shape must match.
  Graph WithFeatures(Tensor features) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  void BuildAdjacency();

  std::string name_;
  Tensor features_;
  std::vector<int> labels_;
  int num_classes_ = 0;
  std::vector<Edge> edges_;
  Mask train_mask_;
  Mask test_mask_;
  std::vector<size_t> adj_offsets_;
  std::vector<size_t> adj_targets_;
};

// Induced subgraph owned by the attacker, with local ids mapped to the
// parent graph by parent_ids (strictly increasing).
struct PartialGraph {
  std::vector<size_t> parent_ids;
  Graph graph;
};

// Builds the subgraph induced by `nodes` (sorted and deduplicated here).
// Every local node is marked as training data.
PartialGraph InducedSubgraph(const Graph& g, std::vector<size_t> nodes);

struct PairSample {
  size_t u = 0;
  size_t v = 0;
  bool linked = false;
  bool same_class = false;
  // Shared label when same_class.
  std::optional<int> class_of_pair;
};

PairSample MakePairSample(const Graph& g, size_t u, size_t v);

struct PairDistributionStats {
  double r_linked_intra = 0.0;
  double r_linked_inter = 0.0;
  double r_unlinked_intra = 0.0;
  double r_unlinked_inter = 0.0;
};

}  // namespace graphleak

#endif  // GRAPHLEAK_GRAPH_H_
