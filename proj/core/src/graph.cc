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

#include "graphleak/graph.h"

#include <algorithm>
#include <string>

#include "graphleak/error.h"

namespace graphleak {

Graph::Graph(Tensor features, std::vector<int> labels, int num_classes,
             std::vector<Edge> edges, std::string name)
    : name_(std::move(name)),
      features_(std::move(features)),
      labels_(std::move(labels)),
      num_classes_(num_classes) {
  const size_t n = labels_.size();
  if (features_.rows() != n) {
    throw InvalidArgument("Graph: " + std::to_string(n) + " labels but " +
                          std::to_string(features_.rows()) + " feature rows");
  }
  if (num_classes_ < 1) throw InvalidArgument("Graph: num_classes must be >= 1");
  for (size_t v = 0; v < n; ++v) {
    if (labels_[v] < 0 || labels_[v] >= num_classes_) {
      throw InvalidArgument("Graph: label " + std::to_string(labels_[v]) +
                            " of node " + std::to_string(v) +
                            " outside [0, " + std::to_string(num_classes_) +
                            ")");
    }
  }
  for (Edge& e : edges) {
    if (e.u == e.v) {
      throw InvalidArgument("Graph: self-loop on node " + std::to_string(e.u));
    }
    if (e.u >= n || e.v >= n) {
      throw InvalidArgument("Graph: edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ") out of range");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  train_mask_.assign(n, false);
  test_mask_.assign(n, false);
  BuildAdjacency();
}

void Graph::BuildAdjacency() {
  const size_t n = num_nodes();
  adj_offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++adj_offsets_[e.u + 1];
    ++adj_offsets_[e.v + 1];
  }
  for (size_t v = 0; v < n; ++v) adj_offsets_[v + 1] += adj_offsets_[v];
  adj_targets_.assign(adj_offsets_[n], 0);
  std::vector<size_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adj_targets_[cursor[e.u]++] = e.v;
    adj_targets_[cursor[e.v]++] = e.u;
  }
  for (size_t v = 0; v < n; ++v) {
    std::sort(adj_targets_.begin() + static_cast<std::ptrdiff_t>(adj_offsets_[v]),
              adj_targets_.begin() +
                  static_cast<std::ptrdiff_t>(adj_offsets_[v + 1]));
  }
}

std::span<const size_t> Graph::Neighbors(size_t v) const {
  return std::span<const size_t>(adj_targets_)
      .subspan(adj_offsets_[v], adj_offsets_[v + 1] - adj_offsets_[v]);
}

bool Graph::HasEdge(size_t u, size_t v) const {
  if (u >= num_nodes() || v >= num_nodes() || u == v) return false;
  auto nb = Neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::WithMasks(Mask train, Mask test) const {
  const size_t n = num_nodes();
  if (train.size() != n || test.size() != n) {
    throw InvalidArgument("Graph::WithMasks: masks must have length " +
                          std::to_string(n));
  }
  for (size_t v = 0; v < n; ++v) {
    if (train[v] && test[v]) {
      throw InvalidArgument("Graph::WithMasks: node " + std::to_string(v) +
                            " is in both train and test");
    }
  }
  Graph out = *this;
  out.train_mask_ = std::move(train);
  out.test_mask_ = std::move(test);
  return out;
}

Graph Graph::WithFeatures(Tensor features) const {
  if (!features.SameShape(features_)) {
    throw InvalidArgument("Graph::WithFeatures: shape " +
                          features.ShapeString() + " != " +
                          features_.ShapeString());
  }
  Graph out = *this;
  out.features_ = std::move(features);
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.name_ == b.name_ && a.features_ == b.features_ &&
         a.labels_ == b.labels_ && a.num_classes_ == b.num_classes_ &&
         a.edges_ == b.edges_ && a.train_mask_ == b.train_mask_ &&
         a.test_mask_ == b.test_mask_;
}

PartialGraph InducedSubgraph(const Graph& g, std::vector<size_t> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const size_t n = g.num_nodes();
  std::vector<size_t> local(n, SIZE_MAX);
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] >= n) throw InvalidArgument("InducedSubgraph: id out of range");
    local[nodes[i]] = i;
  }
  const size_t d = g.num_features();
  Tensor features(nodes.size(), d);
  std::vector<int> labels(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    auto src = g.features().Row(nodes[i]);
    std::copy(src.begin(), src.end(), features.Row(i).begin());
    labels[i] = g.label(nodes[i]);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (local[e.u] != SIZE_MAX && local[e.v] != SIZE_MAX) {
      edges.push_back({local[e.u], local[e.v]});
    }
  }
  Graph sub(std::move(features), std::move(labels), g.num_classes(),
            std::move(edges), g.name());
  Mask train(nodes.size(), true), test(nodes.size(), false);
  return PartialGraph{std::move(nodes),
                      sub.WithMasks(std::move(train), std::move(test))};
}

PairSample MakePairSample(const Graph& g, size_t u, size_t v) {
  PairSample p;
  p.u = u;
  p.v = v;
  p.linked = g.HasEdge(u, v);
  p.same_class = g.label(u) == g.label(v);
  if (p.same_class) p.class_of_pair = g.label(u);
  return p;
}

}  // namespace graphleak
