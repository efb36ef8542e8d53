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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "graphleak/error.h"
#include "graphleak/sampling.h"
#include "support/toy_graphs.h"

namespace graphleak {
namespace {

TEST(SbmTest, DeterministicAndBalanced) {
  const SbmOptions o = testing::SmallSbm(5, 203);
  const Graph a = MakeSbmGraph(o);
  EXPECT_TRUE(a == MakeSbmGraph(o));
  std::vector<size_t> sizes(3, 0);
  for (int y : a.labels()) ++sizes[static_cast<size_t>(y)];
  for (size_t s : sizes) EXPECT_TRUE(s == 67 || s == 68);
  SbmOptions other = o;
  other.seed = 6;
  EXPECT_FALSE(a == MakeSbmGraph(other));
}

TEST(SbmTest, BagOfWordsRowsSumToOne) {
  const Graph g = MakeSbmGraph(testing::SmallSbm(1));
  for (size_t v = 0; v < g.num_nodes(); ++v) {
    double s = 0.0;
    for (double x : g.features().Row(v)) {
      EXPECT_GE(x, 0.0);
      s += x;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

// Mean edge statistics over many draws agree with the closed form.
void ExpectMatchesExpectation(SbmOptions o) {
  const SbmExpectation e = ExpectedSbmRatios(o);
  double edges = 0, linked_intra = 0, unlinked_intra = 0;
  const int draws = 30;
  for (int i = 0; i < draws; ++i) {
    o.seed = static_cast<uint64_t>(i);
    const Graph g = MakeSbmGraph(o);
    size_t intra = 0, ne_intra = 0;
    for (const Edge& ed : g.edges()) intra += g.label(ed.u) == g.label(ed.v);
    size_t intra_pairs = 0;
    std::vector<size_t> sizes(static_cast<size_t>(o.num_classes), 0);
    for (int y : g.labels()) ++sizes[static_cast<size_t>(y)];
    for (size_t s : sizes) intra_pairs += s * (s - 1) / 2;
    const double n = static_cast<double>(g.num_nodes());
    const double nonedges = n * (n - 1) / 2 - static_cast<double>(g.num_edges());
    ne_intra = intra_pairs - intra;
    edges += static_cast<double>(g.num_edges());
    linked_intra += static_cast<double>(intra) / static_cast<double>(g.num_edges());
    unlinked_intra += static_cast<double>(ne_intra) / nonedges;
  }
  EXPECT_NEAR(edges / draws, e.expected_edges, 0.03 * e.expected_edges);
  EXPECT_NEAR(linked_intra / draws, e.r_linked_intra, 0.01);
  EXPECT_NEAR(unlinked_intra / draws, e.r_unlinked_intra, 0.005);
}

TEST(SbmTest, EdgeRatiosMatchExpectation) {
  ExpectMatchesExpectation(testing::SmallSbm(0, 300));
}

TEST(SbmTest, SubclusterRatiosMatchExpectation) {
  SbmOptions o = testing::SmallSbm(0, 300);
  o.subclusters = 3;
  o.secondary_weight = 0.3;
  ExpectMatchesExpectation(o);
}

TEST(SbmTest, SubclustersKeepClassLevelRate) {
  // Subclusters redistribute intra-class edges; the total moves only through
  // the within-subcluster pair count.
  SbmOptions flat = testing::SmallSbm(0, 300);
  SbmOptions sub = flat;
  sub.subclusters = 4;
  EXPECT_NEAR(ExpectedSbmRatios(flat).expected_edges,
              ExpectedSbmRatios(sub).expected_edges,
              0.03 * ExpectedSbmRatios(flat).expected_edges);
}

TEST(SbmTest, ValidatesOptions) {
  SbmOptions o = testing::SmallSbm(0);
  o.p_intra = 1.5;
  EXPECT_THROW(MakeSbmGraph(o), InvalidArgument);
  o = testing::SmallSbm(0);
  o.subclusters = 0;
  EXPECT_THROW(MakeSbmGraph(o), InvalidArgument);
  EXPECT_EQ(ParseSyntheticFeatures("gaussian"), SyntheticFeatures::kGaussian);
  EXPECT_EQ(SyntheticFeaturesName(SyntheticFeatures::kBagOfWords), "bag_of_words");
  EXPECT_THROW(ParseSyntheticFeatures("nope"), InvalidArgument);
}

}  // namespace
}  // namespace graphleak
