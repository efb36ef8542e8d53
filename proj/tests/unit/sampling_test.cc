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

#include <map>
#include <set>
#include <utility>

#include <gtest/gtest.h>

#include "graphleak/error.h"
#include "graphleak/synthetic.h"
#include "support/toy_graphs.h"

namespace graphleak {
namespace {

TEST(SplitTrainTestTest, PartitionAndDeterminism) {
  const Graph g = MakeSbmGraph(testing::SmallSbm(1));
  const Graph a = SplitTrainTest(g, 0.8, 5);
  const Graph b = SplitTrainTest(g, 0.8, 5);
  const Graph c = SplitTrainTest(g, 0.8, 6);
  size_t train = 0;
  for (size_t v = 0; v < g.num_nodes(); ++v) {
    EXPECT_NE(a.train_mask()[v], a.test_mask()[v]);
    train += a.train_mask()[v];
  }
  EXPECT_EQ(train, 160u);
  EXPECT_EQ(a.train_mask(), b.train_mask());
  EXPECT_NE(a.train_mask(), c.train_mask());
  EXPECT_THROW(SplitTrainTest(g, 1.0, 0), InvalidArgument);
}

TEST(SamplePartialTest, DrawsFromTrainNodes) {
  const Graph g = SplitTrainTest(MakeSbmGraph(testing::SmallSbm(2)), 0.8, 1);
  const PartialGraph p = SamplePartial(g, 0.5, 3);
  EXPECT_EQ(p.parent_ids.size(), 80u);
  for (size_t i = 0; i < p.parent_ids.size(); ++i) {
    EXPECT_TRUE(g.train_mask()[p.parent_ids[i]]);
    if (i) EXPECT_LT(p.parent_ids[i - 1], p.parent_ids[i]);
    EXPECT_EQ(p.graph.label(i), g.label(p.parent_ids[i]));
  }
  for (const Edge& e : p.graph.edges()) {
    EXPECT_TRUE(g.HasEdge(p.parent_ids[e.u], p.parent_ids[e.v]));
  }
}

TEST(SamplePartialTest, EdgelessSampleIsInsufficient) {
  Graph g(Tensor(4, 1), {0, 0, 0, 0}, 1, {{0, 1}});
  g = g.WithMasks({false, false, true, true}, {true, true, false, false});
  EXPECT_THROW(SamplePartial(g, 1.0, 0), InsufficientData);
}

TEST(SamplePairsTest, LinkedFirstAndScopeRespected) {
  const Graph g = MakeSbmGraph(testing::SmallSbm(4));
  const auto linked = LinkedPairs(g, PairScope::Class(1));
  ASSERT_GT(linked.size(), 5u);
  const auto pairs = SamplePairs(g, PairScope::Class(1), 5, 40, 9);
  ASSERT_EQ(pairs.size(), 45u);
  std::set<std::pair<size_t, size_t>> seen;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const PairSample& s = pairs[i];
    EXPECT_LT(s.u, s.v);
    EXPECT_EQ(s.linked, i < 5);
    EXPECT_EQ(s.linked, g.HasEdge(s.u, s.v));
    EXPECT_EQ(g.label(s.u), 1);
    EXPECT_EQ(g.label(s.v), 1);
    EXPECT_TRUE(seen.insert({s.u, s.v}).second);
  }
  EXPECT_THROW(SamplePairs(g, PairScope::Class(1), linked.size() + 1, 0, 0),
               InsufficientData);
}

TEST(SamplePairsTest, AdmitPredicateFilters) {
  const Graph g = MakeSbmGraph(testing::SmallSbm(4));
  PairScope scope;
  scope.admit = [](size_t u, size_t) { return u % 2 == 0; };
  for (const PairSample& s : SamplePairs(g, scope, 10, 50, 1)) {
    EXPECT_EQ(s.u % 2, 0u);
  }
  for (const PairSample& s : LinkedPairs(g, scope)) EXPECT_EQ(s.u % 2, 0u);
}

TEST(SamplePairsTest, ExhaustedScopes) {
  // The triangle has no non-edges at all.
  EXPECT_THROW(SamplePairs(testing::Triangle(), PairScope::All(), 3, 1, 0),
               InsufficientData);
  EXPECT_EQ(SamplePairs(testing::Triangle(), PairScope::All(), 3, 0, 0).size(), 3u);
  // The 4-cycle has two; asking for more returns both.
  const auto p = SamplePairs(testing::FourCycle(), PairScope::All(), 4, 5, 0);
  EXPECT_EQ(p.size(), 6u);
}

TEST(SamplePairsTest, NonEdgesAreUniform) {
  // Path 0-1-2-3-4: six non-edges, drawn one at a time.
  Graph g(Tensor(5, 1), {0, 0, 0, 0, 0}, 1, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  std::map<std::pair<size_t, size_t>, int> counts;
  const int draws = 6000;
  for (int i = 0; i < draws; ++i) {
    const auto p = SamplePairs(g, PairScope::All(), 0, 1, static_cast<uint64_t>(i));
    ++counts[{p[0].u, p[0].v}];
  }
  EXPECT_EQ(counts.size(), 6u);
  for (const auto& [pair, c] : counts) {
    EXPECT_FALSE(g.HasEdge(pair.first, pair.second));
    EXPECT_NEAR(c, draws / 6, 120);
  }
}

TEST(PairDistributionTest, FourCycleIsFullyHeterophilous) {
  const PairDistributionStats s = PairDistribution(testing::FourCycle(), 1000, 0);
  EXPECT_EQ(s.r_linked_intra, 0.0);
  EXPECT_EQ(s.r_linked_inter, 1.0);
  EXPECT_EQ(s.r_unlinked_intra, 1.0);
  EXPECT_EQ(s.r_unlinked_inter, 0.0);
}

TEST(PairDistributionTest, MatchesExhaustiveCount) {
  const Graph g = MakeSbmGraph(testing::SmallSbm(8));
  size_t e_intra = 0, ne_intra = 0, ne = 0;
  for (size_t u = 0; u < g.num_nodes(); ++u) {
    for (size_t v = u + 1; v < g.num_nodes(); ++v) {
      const bool same = g.label(u) == g.label(v);
      if (g.HasEdge(u, v)) {
        e_intra += same;
      } else {
        ++ne;
        ne_intra += same;
      }
    }
  }
  const PairDistributionStats s = PairDistribution(g, 50000, 3);
  EXPECT_DOUBLE_EQ(s.r_linked_intra,
                   static_cast<double>(e_intra) / static_cast<double>(g.num_edges()));
  EXPECT_NEAR(s.r_unlinked_intra,
              static_cast<double>(ne_intra) / static_cast<double>(ne), 0.01);
  EXPECT_DOUBLE_EQ(s.r_linked_intra + s.r_linked_inter, 1.0);
  EXPECT_DOUBLE_EQ(s.r_unlinked_intra + s.r_unlinked_inter, 1.0);
}

}  // namespace
}  // namespace graphleak
