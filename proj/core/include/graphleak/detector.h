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

#ifndef GRAPHLEAK_DETECTOR_H_
#define GRAPHLEAK_DETECTOR_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "graphleak/autodiff.h"
#include "graphleak/gnn.h"
#include "graphleak/graph.h"
#include "graphleak/sampling.h"
#include "graphleak/similarity.h"
#include "graphleak/tensor.h"

namespace graphleak {

// Similarity features of labelled node pairs with a train/validation split.
struct PairDataset {
  Tensor features;  // m x kNumSimilarityFeatures
  std::vector<int> labels;  // 1 = linked
  Mask is_train;
  // Node ids of each row in the graph the dataset was built from; empty for
  // synthetic datasets.
  std::vector<Edge> pairs;

  size_t size() const { return labels.size(); }
  size_t num_train() const;
  // Rows of one split, in dataset order.
  std::vector<size_t> SplitRows(bool train) const;
};

SimilarityFeature PairFeature(const Posteriors& p, size_t u, size_t v);

// Stratified split: round(train_fraction * count) rows of each label go to
// training. Row order is shuffled.
PairDataset MakePairDataset(Tensor features, std::vector<int> labels,
                            std::vector<Edge> pairs, double train_fraction,
                            uint64_t seed);

// Every edge in scope plus as many uniformly drawn non-edges (capped with a
// warning when fewer exist), featurized with `posteriors` (rows indexed by
// node id of `graph`) and split 80/20.
PairDataset BuildPairDataset(const Graph& graph, const Posteriors& posteriors,
                             const PairScope& scope, uint64_t seed);

// f0..f11 named columns, label, split (train|val).
std::string PairDatasetToCsv(const PairDataset& ds);

struct DetectorTrainOptions {
  int epochs = 50;
  double lr = 1e-3;
  // Rows per Adam step; 0 means the whole training split.
  size_t batch_size = 0;
  // Epochs without validation AUC improvement before stopping; 0 disables.
  int patience = 0;
  uint64_t seed = 0;

  static DetectorTrainOptions Mlp(uint64_t seed);
  static DetectorTrainOptions Attn(uint64_t seed);
  friend bool operator==(const DetectorTrainOptions&,
                         const DetectorTrainOptions&) = default;
};

// Dense 12 -> 64 -> 32 -> 2 with ReLU.
class MlpDetector {
 public:
  static constexpr size_t kHidden1 = 64;
  static constexpr size_t kHidden2 = 32;

  MlpDetector() = default;
  explicit MlpDetector(uint64_t seed);
  explicit MlpDetector(std::vector<Tensor> params);

  // Logits for a batch of feature rows.
  ad::Var Forward(const ad::Var& x, ad::Tape* tape,
                  std::vector<ad::Var>* param_vars) const;
  Tensor Logits(const Tensor& x) const;
  // x W1 + b1.
  Tensor FirstLayerPreactivation(const Tensor& x) const;

  const Tensor& w1() const { return params_[0]; }
  const Tensor& b1() const { return params_[1]; }
  std::span<const Tensor> parameters() const { return params_; }
  std::vector<Tensor>& mutable_parameters() { return params_; }

  friend bool operator==(const MlpDetector&, const MlpDetector&) = default;

 private:
  std::vector<Tensor> params_;  // w1, b1, w2, b2, w3, b3
};

// Each feature becomes a token x_i * E_i + B_i (E, B: 12 x 64). One residual
// multi-head self-attention block, mean-pool over tokens, ReLU, dense 64 -> 2.
class AttnDetector {
 public:
  static constexpr size_t kModelDim = 64;
  static constexpr size_t kHeads = 16;

  AttnDetector() = default;
  // Parameters in order: emb, bias, wq, wk, wv, wo, bo, w_head, b_head.
  explicit AttnDetector(std::vector<Tensor> params);

  ad::Var Forward(const ad::Var& x, ad::Tape* tape,
                  std::vector<ad::Var>* param_vars) const;
  Tensor Logits(const Tensor& x) const;
  // Mean over tokens after the attention block, before the ReLU.
  Tensor PooledRepresentation(const Tensor& x) const;

  std::span<const Tensor> parameters() const { return params_; }
  std::vector<Tensor>& mutable_parameters() { return params_; }

  friend bool operator==(const AttnDetector&, const AttnDetector&) = default;

 private:
  ad::Var Pooled(const ad::Var& x, std::span<const ad::Var> p) const;
  std::vector<Tensor> params_;
};

// Token embeddings from the MLP's first layer (row i of W1, b1 / 12), a zero
// output projection so the block starts as the identity, other weights drawn
// from `seed`.
AttnDetector InitAttnFromMlp(const MlpDetector& mlp, uint64_t seed);

MlpDetector TrainMlp(const PairDataset& ds, const DetectorTrainOptions& opts);

// Fine-tunes and returns the checkpoint with the best validation AUC (the
// starting point counts). `val_history`, when given, receives the validation
// AUC before training and after each epoch.
AttnDetector TrainAttn(const AttnDetector& init, const PairDataset& ds,
                       const DetectorTrainOptions& opts,
                       std::vector<double>* val_history = nullptr);

using Detector = std::variant<MlpDetector, AttnDetector>;

// Softmax probability of the linked class for each feature row.
std::vector<double> LinkScores(const Detector& det, const Tensor& features);
double PredictLink(const Detector& det, const SimilarityFeature& f);
inline bool IsLinked(double score) { return score >= 0.5; }

// AUC of the detector on one split; falls back to the other split when the
// requested one holds a single class.
double SplitAuc(const Detector& det, const PairDataset& ds, bool train);

std::string DetectorToJson(const Detector& det);
Detector DetectorFromJson(std::string_view json);
void SaveDetector(const Detector& det, const std::filesystem::path& path);
Detector LoadDetector(const std::filesystem::path& path);

}  // namespace graphleak

#endif  // GRAPHLEAK_DETECTOR_H_
