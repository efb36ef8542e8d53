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

#include "graphleak/detector.h"

#include <algorithm>
#include <cmath>
#include <variant>
#include <vector>

#include <gtest/gtest.h>

#include "graphleak/error.h"
#include "graphleak/metrics.h"
#include "graphleak/rng.h"
#include "graphleak/synthetic.h"
#include "support/toy_graphs.h"

namespace graphleak {
namespace {

using testing::TempDir;

// Linked rows cluster around +1, unlinked around -1, in every feature.
PairDataset SeparableDataset(uint64_t seed, size_t per_class = 60) {
  SeededRng rng(seed);
  Tensor x(2 * per_class, kNumSimilarityFeatures);
  std::vector<int> y;
  for (size_t i = 0; i < 2 * per_class; ++i) {
    const int label = i < per_class ? 1 : 0;
    for (size_t j = 0; j < kNumSimilarityFeatures; ++j) {
      x(i, j) = (label ? 1.0 : -1.0) + rng.Uniform(-0.3, 0.3);
    }
    y.push_back(label);
  }
  return MakePairDataset(std::move(x), std::move(y), {}, 0.8, seed);
}

double TrainAccuracy(const Detector& det, const PairDataset& ds) {
  const auto scores = LinkScores(det, ds.features);
  size_t right = 0, total = 0;
  for (size_t r : ds.SplitRows(true)) {
    right += IsLinked(scores[r]) == (ds.labels[r] == 1);
    ++total;
  }
  return static_cast<double>(right) / static_cast<double>(total);
}

Posteriors RandomPosteriors(size_t n, size_t c, uint64_t seed) {
  SeededRng rng(seed);
  return Posteriors{SoftmaxRows(Tensor::Uniform(n, c, -2, 2, rng))};
}

TEST(PairDatasetTest, TriangleHasNoNegatives) {
  EXPECT_THROW(BuildPairDataset(testing::Triangle(), RandomPosteriors(3, 2, 0),
                                PairScope::All(), 0),
               InsufficientData);
}

TEST(PairDatasetTest, FourCycleCapsNegatives) {
  const PairDataset ds = BuildPairDataset(testing::FourCycle(),
                                          RandomPosteriors(4, 2, 0),
                                          PairScope::All(), 0);
  EXPECT_EQ(ds.size(), 6u);
  EXPECT_EQ(std::count(ds.labels.begin(), ds.labels.end(), 1), 4);
  // Class scope: class 0 holds one non-edge and no edges.
  EXPECT_THROW(BuildPairDataset(testing::FourCycle(), RandomPosteriors(4, 2, 0),
                                PairScope::Class(0), 0),
               InsufficientData);
}

TEST(PairDatasetTest, SplitAndFeaturesConsistent) {
  const Graph g = MakeSbmGraph(testing::SmallSbm(2, 150));
  const Posteriors p = RandomPosteriors(g.num_nodes(), 3, 1);
  const PairDataset ds = BuildPairDataset(g, p, PairScope::All(), 4);
  EXPECT_EQ(ds.size(), 2 * g.num_edges());
  const size_t pos = static_cast<size_t>(std::count(ds.labels.begin(), ds.labels.end(), 1));
  EXPECT_EQ(pos, g.num_edges());
  // Stratified 80/20 per label.
  size_t train_pos = 0;
  for (size_t r = 0; r < ds.size(); ++r) {
    train_pos += ds.is_train[r] && ds.labels[r] == 1;
    EXPECT_EQ(ds.labels[r] == 1, g.HasEdge(ds.pairs[r].u, ds.pairs[r].v));
    const SimilarityFeature f = PairFeature(p, ds.pairs[r].u, ds.pairs[r].v);
    for (size_t j = 0; j < kNumSimilarityFeatures; ++j) EXPECT_EQ(ds.features(r, j), f[j]);
  }
  EXPECT_EQ(train_pos, static_cast<size_t>(std::llround(0.8 * static_cast<double>(pos))));
  EXPECT_EQ(ds.num_train(), ds.SplitRows(true).size());
  EXPECT_EQ(ds.size(), ds.SplitRows(true).size() + ds.SplitRows(false).size());
  const PairDataset again = BuildPairDataset(g, p, PairScope::All(), 4);
  EXPECT_EQ(again.features, ds.features);
  EXPECT_EQ(again.is_train, ds.is_train);
}

TEST(MlpDetectorTest, SeparableToyReachesPerfectTrainAccuracy) {
  const PairDataset ds = SeparableDataset(1);
  const MlpDetector m = TrainMlp(ds, DetectorTrainOptions::Mlp(3));
  EXPECT_EQ(TrainAccuracy(m, ds), 1.0);
  EXPECT_TRUE(TrainMlp(ds, DetectorTrainOptions::Mlp(3)) == m);
  DetectorTrainOptions none = DetectorTrainOptions::Mlp(3);
  none.epochs = 0;
  EXPECT_TRUE(TrainMlp(ds, none) == MlpDetector(3));
}

TEST(MlpDetectorTest, ScoresAreProbabilitiesAndSymmetric) {
  const MlpDetector m(5);
  const Posteriors p = RandomPosteriors(10, 4, 2);
  for (size_t u = 0; u < 10; ++u) {
    for (size_t v = u + 1; v < 10; ++v) {
      const double a = PredictLink(m, PairFeature(p, u, v));
      EXPECT_GE(a, 0.0);
      EXPECT_LE(a, 1.0);
      EXPECT_EQ(a, PredictLink(m, PairFeature(p, v, u)));
    }
  }
}

TEST(AttnDetectorTest, WarmStartIdentity) {
  const PairDataset ds = SeparableDataset(2);
  const MlpDetector mlp = TrainMlp(ds, DetectorTrainOptions::Mlp(1));
  SeededRng rng(3);
  const Tensor x = Tensor::Uniform(25, kNumSimilarityFeatures, -3, 3, rng);
  const Tensor ref = mlp.FirstLayerPreactivation(x);
  for (uint64_t seed : {0u, 1u}) {
    const AttnDetector attn = InitAttnFromMlp(mlp, seed);
    Tensor pooled = attn.PooledRepresentation(x);
    for (double& v : pooled.data()) v *= static_cast<double>(kNumSimilarityFeatures);
    EXPECT_LT(MaxAbsDiff(pooled, ref), 1e-12);
    EXPECT_EQ(attn.Logits(x).cols(), 2u);
  }
  // Seeds differ only in the freshly drawn weights.
  const AttnDetector d0 = InitAttnFromMlp(mlp, 0);
  const AttnDetector d1 = InitAttnFromMlp(mlp, 1);
  const auto& a = d0.parameters();
  const auto& b = d1.parameters();
  EXPECT_EQ(a[0], b[0]);
  EXPECT_EQ(a[1], b[1]);
  EXPECT_NE(a[2], b[2]);
  EXPECT_EQ(a[5], b[5]);
}

TEST(AttnDetectorTest, BestCheckpointAndSeparableToy) {
  const PairDataset ds = SeparableDataset(4);
  const MlpDetector mlp = TrainMlp(ds, DetectorTrainOptions::Mlp(2));
  const AttnDetector init = InitAttnFromMlp(mlp, 2);
  DetectorTrainOptions opts = DetectorTrainOptions::Attn(2);
  opts.epochs = 30;
  std::vector<double> history;
  const AttnDetector best = TrainAttn(init, ds, opts, &history);
  ASSERT_FALSE(history.empty());
  const double got = SplitAuc(best, ds, false);
  EXPECT_GE(got, history.front());
  EXPECT_EQ(got, *std::max_element(history.begin(), history.end()));
  EXPECT_GE(got, 0.99);
  EXPECT_TRUE(TrainAttn(init, ds, opts) == best);
}

TEST(AttnDetectorTest, EarlyStoppingHonorsPatience) {
  const PairDataset ds = SeparableDataset(5);
  const AttnDetector init = InitAttnFromMlp(MlpDetector(1), 1);
  DetectorTrainOptions opts = DetectorTrainOptions::Attn(1);
  opts.epochs = 500;
  opts.patience = 3;
  std::vector<double> history;
  TrainAttn(init, ds, opts, &history);
  EXPECT_LT(history.size(), 501u);
}

TEST(DetectorIoTest, JsonRoundTrip) {
  const MlpDetector mlp(9);
  const AttnDetector attn = InitAttnFromMlp(mlp, 9);
  TempDir dir("det");
  for (const Detector& det : {Detector(mlp), Detector(attn)}) {
    SaveDetector(det, dir.path() / "d.json");
    const Detector back = LoadDetector(dir.path() / "d.json");
    EXPECT_EQ(back.index(), det.index());
    EXPECT_TRUE(back == det);
    EXPECT_TRUE(DetectorFromJson(DetectorToJson(det)) == det);
  }
  EXPECT_THROW(DetectorFromJson(R"({"kind": "svm", "params": []})"), Error);
}

TEST(DetectorTest, Validation) {
  EXPECT_THROW(MlpDetector(std::vector<Tensor>{Tensor(2, 2)}), InvalidArgument);
  EXPECT_THROW(InitAttnFromMlp(MlpDetector(), 0), InvalidArgument);
  PairDataset empty;
  EXPECT_THROW(TrainMlp(empty, DetectorTrainOptions::Mlp(0)), InvalidArgument);
  EXPECT_EQ(DetectorTrainOptions::Attn(0).patience, 20);
  EXPECT_EQ(DetectorTrainOptions::Mlp(0).epochs, 50);
}

}  // namespace
}  // namespace graphleak
