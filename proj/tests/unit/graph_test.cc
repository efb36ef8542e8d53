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

#include <gtest/gtest.h>

#include "graphleak/error.h"
#include "support/toy_graphs.h"

namespace graphleak {
namespace {

TEST(GraphTest, CanonicalizesEdges) {
  Graph g(Tensor(4, 1), {0, 1, 0, 1}, 2, {{1, 0}, {0, 1}, {3, 2}, {2, 1}});
  ASSERT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 2}));
  EXPECT_EQ(g.edges()[2], (Edge{2, 3}));
  EXPECT_TRUE(g.HasEdge(2, 1));
  EXPECT_FALSE(g.HasEdge(0, 3));
  EXPECT_EQ(g.Degree(1), 2u);
  EXPECT_EQ(std::vector<size_t>(g.Neighbors(1).begin(), g.Neighbors(1).end()),
            (std::vector<size_t>{0, 2}));
}

TEST(GraphTest, RejectsBadInput) {
  EXPECT_THROW(Graph(Tensor(2, 1), {0, 0}, 1, {{1, 1}}), InvalidArgument);
  EXPECT_THROW(Graph(Tensor(2, 1), {0, 0}, 1, {{0, 2}}), InvalidArgument);
  EXPECT_THROW(Graph(Tensor(2, 1), {0, 3}, 2, {}), InvalidArgument);
  EXPECT_THROW(Graph(Tensor(3, 1), {0, 0}, 1, {}), InvalidArgument);
}

TEST(GraphTest, MasksMustBeDisjoint) {
  const Graph g = testing::Triangle();
  EXPECT_THROW(g.WithMasks({true, false, false}, {true, false, false}),
               InvalidArgument);
  EXPECT_THROW(g.WithMasks({true}, {false}), InvalidArgument);
  Graph m = g.WithMasks({true, true, false}, {false, false, true});
  EXPECT_TRUE(m.train_mask()[1]);
  EXPECT_TRUE(m.test_mask()[2]);
  EXPECT_TRUE(g.train_mask().empty() || !g.train_mask()[0]);
}

TEST(GraphTest, WithFeaturesChecksShape) {
  const Graph g = testing::Triangle();
  EXPECT_THROW(g.WithFeatures(Tensor(3, 3)), InvalidArgument);
  Graph h = g.WithFeatures(Tensor(3, 2, 7.0));
  EXPECT_EQ(h.features()(2, 1), 7.0);
  EXPECT_EQ(h.edges().size(), 3u);
  EXPECT_FALSE(h == g);
  EXPECT_TRUE(g == testing::Triangle());
}

TEST(InducedSubgraphTest, RelabelsAndKeepsInternalEdges) {
  const Graph g = testing::FourCycle();
  PartialGraph p = InducedSubgraph(g, {3, 0, 1, 0});
  EXPECT_EQ(p.parent_ids, (std::vector<size_t>{0, 1, 3}));
  ASSERT_EQ(p.graph.num_edges(), 2u);
  // 0-1 and 0-3 survive; 1-2, 2-3 are cut with node 2.
  EXPECT_EQ(p.graph.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(p.graph.edges()[1], (Edge{0, 2}));
  EXPECT_EQ(p.graph.label(2), 1);
  EXPECT_EQ(p.graph.features()(2, 0), 0.5);
  for (size_t v = 0; v < 3; ++v) EXPECT_TRUE(p.graph.train_mask()[v]);
  EXPECT_THROW(InducedSubgraph(g, {9}), InvalidArgument);
}

TEST(PairSampleTest, ClassifiesPairs) {
  const Graph g = testing::FourCycle();
  PairSample s = MakePairSample(g, 0, 1);
  EXPECT_TRUE(s.linked);
  EXPECT_FALSE(s.same_class);
  EXPECT_FALSE(s.class_of_pair.has_value());
  PairSample t = MakePairSample(g, 2, 0);
  EXPECT_FALSE(t.linked);
  EXPECT_TRUE(t.same_class);
  EXPECT_EQ(t.class_of_pair, 0);
}

}  // namespace
}  // namespace graphleak
