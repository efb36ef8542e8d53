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

#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "graphleak/error.h"
#include "graphleak/rng.h"
#include "graphleak/synthetic.h"
#include "support/toy_graphs.h"

namespace graphleak {
namespace {

// O(n^2) pair counting.
double PairCountAuc(const std::vector<double>& s, const std::vector<int>& y) {
  double wins = 0;
  size_t np = 0, nn = 0;
  for (size_t i = 0; i < s.size(); ++i) (y[i] ? np : nn)++;
  for (size_t i = 0; i < s.size(); ++i) {
    if (!y[i]) continue;
    for (size_t j = 0; j < s.size(); ++j) {
      if (y[j]) continue;
      wins += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
    }
  }
  return wins / (static_cast<double>(np) * static_cast<double>(nn));
}

TEST(AucTest, HandExamples) {
  EXPECT_EQ(Auc(std::vector<double>{0.9, 0.4, 0.6, 0.1}, std::vector<int>{1, 0, 1, 0}).auc, 1.0);
  // One inversion out of four pairs.
  EXPECT_EQ(Auc(std::vector<double>{0.9, 0.7, 0.6, 0.1}, std::vector<int>{1, 0, 1, 0}).auc, 0.75);
  EXPECT_EQ(Auc(std::vector<double>{0.3, 0.3, 0.3}, std::vector<int>{1, 0, 0}).auc, 0.5);
  const RocResult r = Auc(std::vector<double>{1, 2, 3}, std::vector<int>{0, 5, 0});
  EXPECT_EQ(r.n_pos, 1u);
  EXPECT_EQ(r.n_neg, 2u);
  EXPECT_THROW(Auc(std::vector<double>{1, 2}, std::vector<int>{1, 1}), InvalidArgument);
  EXPECT_THROW(Auc(std::vector<double>{1}, std::vector<int>{1, 0}), InvalidArgument);
}

TEST(AucTest, EqualsPairCountingWithTies) {
  SeededRng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const size_t n = 2 + rng.UniformIndex(120);
    std::vector<double> s(n);
    std::vector<int> y(n);
    // Coarse scores so ties are common.
    for (size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.UniformIndex(8)) / 4.0;
      y[i] = rng.Bernoulli(0.4);
    }
    y[0] = 1;
    y[1] = 0;
    EXPECT_EQ(Auc(s, y).auc, PairCountAuc(s, y)) << "trial " << trial;
  }
}

TEST(AucTest, RankProperties) {
  SeededRng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t n = 10 + rng.UniformIndex(50);
    std::vector<double> s(n), neg(n), mono(n);
    std::vector<int> y(n), flipped(n);
    for (size_t i = 0; i < n; ++i) {
      s[i] = rng.Uniform(-2, 2);
      neg[i] = -s[i];
      mono[i] = std::exp(3 * s[i]) + 1;
      y[i] = i % 3 == 0;
      flipped[i] = !y[i];
    }
    const double a = Auc(s, y).auc;
    EXPECT_NEAR(Auc(neg, y).auc, 1.0 - a, 1e-15);
    EXPECT_NEAR(Auc(s, flipped).auc, 1.0 - a, 1e-15);
    EXPECT_EQ(Auc(mono, y).auc, a);
  }
}

TEST(EvaluationTest, OracleAndConstantDetectors) {
  const Graph g = MakeSbmGraph(testing::SmallSbm(3, 300));
  const PairScorer truth = [&g](size_t u, size_t v) { return g.HasEdge(u, v) ? 1.0 : 0.0; };
  const PairScorer constant = [](size_t, size_t) { return 0.3; };
  EXPECT_EQ(IntraClassAuc(truth, g, 1, 400, 1).auc, 1.0);
  EXPECT_EQ(OverallAuc(truth, g, 400, 1).auc, 1.0);
  EXPECT_EQ(IntraClassAuc(constant, g, 1, 400, 1).auc, 0.5);
  SeededRng rng(4);
  const PairScorer noise = [&rng](size_t, size_t) { return rng.Uniform(); };
  EXPECT_NEAR(OverallAuc(noise, g, 2000, 2).auc, 0.5, 0.05);
}

TEST(EvaluationTest, PairsAreBalancedAndScoped) {
  const Graph g = MakeSbmGraph(testing::SmallSbm(3, 300));
  const auto pairs = EvaluationPairs(g, PairScope::Class(2), 100, 5);
  size_t linked = 0;
  std::set<std::pair<size_t, size_t>> seen;
  for (const PairSample& s : pairs) {
    linked += s.linked;
    EXPECT_EQ(g.label(s.u), 2);
    EXPECT_EQ(g.label(s.v), 2);
    EXPECT_TRUE(seen.insert({s.u, s.v}).second);
  }
  EXPECT_EQ(linked, 50u);
  EXPECT_EQ(pairs.size(), 100u);
  // Budget larger than the edge count: every in-scope edge, same number of non-edges.
  const size_t in_scope = LinkedPairs(g, PairScope::Class(2)).size();
  const auto big = EvaluationPairs(g, PairScope::Class(2), 100000, 5);
  EXPECT_EQ(big.size(), 2 * in_scope);
  const Graph empty(Tensor(3, 1), {0, 0, 1}, 2, {{0, 2}});
  EXPECT_THROW(EvaluationPairs(empty, PairScope::Class(0), 10, 0), InsufficientData);
}

TEST(EvaluationTest, AdmitExcludesPairs) {
  const Graph g = MakeSbmGraph(testing::SmallSbm(3, 300));
  auto admit = [](size_t u, size_t v) { return (u + v) % 2 == 0; };
  const PairScorer record = [&](size_t u, size_t v) {
    EXPECT_EQ((u + v) % 2, 0u);
    return 0.0;
  };
  OverallAuc(record, g, 200, 3, admit);
  IntraClassAuc(record, g, 0, 200, 3, admit);
}

}  // namespace
}  // namespace graphleak
