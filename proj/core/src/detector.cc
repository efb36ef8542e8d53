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
#include <string>
#include <utility>

#include "graphleak/adam.h"
#include "graphleak/csv_util.h"
#include "graphleak/error.h"
#include "graphleak/log.h"
#include "graphleak/metrics.h"
#include "graphleak/rng.h"

namespace graphleak {

using ad::Var;

size_t PairDataset::num_train() const {
  return static_cast<size_t>(std::count(is_train.begin(), is_train.end(), true));
}

std::vector<size_t> PairDataset::SplitRows(bool train) const {
  std::vector<size_t> rows;
  for (size_t i = 0; i < size(); ++i) {
    if (is_train[i] == train) rows.push_back(i);
  }
  return rows;
}

SimilarityFeature PairFeature(const Posteriors& p, size_t u, size_t v) {
  if (u >= p.num_nodes() || v >= p.num_nodes()) {
    throw InvalidArgument("PairFeature: node id out of range");
  }
  return SimilarityFeatures(p.Row(u), p.Row(v));
}

PairDataset MakePairDataset(Tensor features, std::vector<int> labels,
                            std::vector<Edge> pairs, double train_fraction,
                            uint64_t seed) {
  const size_t m = labels.size();
  if (features.rows() != m || features.cols() != kNumSimilarityFeatures) {
    throw InvalidArgument("MakePairDataset: features must be " +
                          std::to_string(m) + " x " +
                          std::to_string(kNumSimilarityFeatures) + ", got " +
                          features.ShapeString());
  }
  if (!pairs.empty() && pairs.size() != m) {
    throw InvalidArgument("MakePairDataset: pair count mismatch");
  }
  if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
    throw InvalidArgument("MakePairDataset: train_fraction must be in (0, 1]");
  }
  SeededRng rng(seed);
  Mask train(m, false);
  for (int label : {0, 1}) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < m; ++i) {
      if ((labels[i] != 0) == (label == 1)) idx.push_back(i);
    }
    rng.Shuffle(std::span<size_t>(idx));
    const auto n_train = static_cast<size_t>(
        std::llround(train_fraction * static_cast<double>(idx.size())));
    for (size_t t = 0; t < n_train; ++t) train[idx[t]] = true;
  }
  std::vector<size_t> order(m);
  for (size_t i = 0; i < m; ++i) order[i] = i;
  rng.Shuffle(std::span<size_t>(order));

  PairDataset ds;
  ds.features = Tensor(m, kNumSimilarityFeatures);
  for (size_t i = 0; i < m; ++i) {
    const size_t src = order[i];
    std::copy_n(features.Row(src).data(), kNumSimilarityFeatures,
                ds.features.Row(i).data());
    ds.labels.push_back(labels[src] != 0 ? 1 : 0);
    ds.is_train.push_back(train[src]);
    if (!pairs.empty()) ds.pairs.push_back(pairs[src]);
  }
  return ds;
}

PairDataset BuildPairDataset(const Graph& graph, const Posteriors& posteriors,
                             const PairScope& scope, uint64_t seed) {
  if (posteriors.num_nodes() != graph.num_nodes()) {
    throw InvalidArgument("BuildPairDataset: posteriors cover " +
                          std::to_string(posteriors.num_nodes()) +
                          " nodes, graph has " +
                          std::to_string(graph.num_nodes()));
  }
  const size_t n_linked = LinkedPairs(graph, scope).size();
  if (n_linked == 0) {
    throw InsufficientData("BuildPairDataset: no linked pairs in scope");
  }
  const auto samples =
      SamplePairs(graph, scope, n_linked, n_linked, MixSeed(seed, 1));
  Tensor features(samples.size(), kNumSimilarityFeatures);
  std::vector<int> labels;
  std::vector<Edge> pairs;
  for (size_t i = 0; i < samples.size(); ++i) {
    const SimilarityFeature f = PairFeature(posteriors, samples[i].u, samples[i].v);
    std::copy(f.begin(), f.end(), features.Row(i).begin());
    labels.push_back(samples[i].linked ? 1 : 0);
    pairs.push_back({samples[i].u, samples[i].v});
  }
  return MakePairDataset(std::move(features), std::move(labels), std::move(pairs),
                         0.8, MixSeed(seed, 2));
}

std::string PairDatasetToCsv(const PairDataset& ds) {
  std::string out;
  for (std::string_view name : SimilarityFeatureNames()) {
    out += name;
    out += ',';
  }
  out += "label,split\n";
  for (size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.features.Row(i)) out += FormatDouble(v) + ',';
    out += std::to_string(ds.labels[i]);
    out += ds.is_train[i] ? ",train\n" : ",val\n";
  }
  return out;
}

DetectorTrainOptions DetectorTrainOptions::Mlp(uint64_t seed) {
  return {.epochs = 50, .lr = 1e-3, .batch_size = 0, .patience = 0, .seed = seed};
}

DetectorTrainOptions DetectorTrainOptions::Attn(uint64_t seed) {
  return {.epochs = 200, .lr = 1e-4, .batch_size = 16, .patience = 20, .seed = seed};
}

namespace {

std::vector<Var> Record(std::span<const Tensor> params, ad::Tape* tape) {
  std::vector<Var> p;
  p.reserve(params.size());
  for (const Tensor& t : params) {
    p.push_back(tape != nullptr ? tape->Variable(t) : ad::Tape::Constant(t));
  }
  return p;
}

void CheckInput(const Var& x) {
  if (x.cols() != kNumSimilarityFeatures) {
    throw InvalidArgument("detector input must have " +
                          std::to_string(kNumSimilarityFeatures) +
                          " columns, got " + std::to_string(x.cols()));
  }
}

void CheckShapes(std::span<const Tensor> params,
                 std::initializer_list<std::array<size_t, 2>> shapes,
                 const char* what) {
  if (params.size() != shapes.size()) {
    throw InvalidArgument(std::string(what) + ": wrong parameter count");
  }
  size_t i = 0;
  for (const auto& s : shapes) {
    if (params[i].rows() != s[0] || params[i].cols() != s[1]) {
      throw InvalidArgument(std::string(what) + ": parameter " +
                            std::to_string(i) + " has shape " +
                            params[i].ShapeString());
    }
    ++i;
  }
}

constexpr size_t kF = kNumSimilarityFeatures;
constexpr size_t kD = AttnDetector::kModelDim;

}  // namespace

MlpDetector::MlpDetector(uint64_t seed) {
  SeededRng rng(seed);
  params_.push_back(Tensor::GlorotUniform(kF, kHidden1, rng));
  params_.emplace_back(1, kHidden1);
  params_.push_back(Tensor::GlorotUniform(kHidden1, kHidden2, rng));
  params_.emplace_back(1, kHidden2);
  params_.push_back(Tensor::GlorotUniform(kHidden2, 2, rng));
  params_.emplace_back(1, 2);
}

MlpDetector::MlpDetector(std::vector<Tensor> params) : params_(std::move(params)) {
  CheckShapes(params_,
              {{kF, kHidden1}, {1, kHidden1}, {kHidden1, kHidden2},
               {1, kHidden2}, {kHidden2, 2}, {1, 2}},
              "MlpDetector");
}

Var MlpDetector::Forward(const Var& x, ad::Tape* tape,
                         std::vector<Var>* param_vars) const {
  CheckInput(x);
  const auto p = Record(params_, tape);
  const auto relu = ad::Activation::Relu();
  Var h = ad::Apply(ad::AddRowVector(ad::MatMul(x, p[0]), p[1]), relu);
  h = ad::Apply(ad::AddRowVector(ad::MatMul(h, p[2]), p[3]), relu);
  Var out = ad::AddRowVector(ad::MatMul(h, p[4]), p[5]);
  if (param_vars != nullptr) *param_vars = p;
  return out;
}

Tensor MlpDetector::Logits(const Tensor& x) const {
  return Forward(ad::Tape::Constant(x), nullptr, nullptr).value();
}

Tensor MlpDetector::FirstLayerPreactivation(const Tensor& x) const {
  Tensor out = MatMul(x, params_[0]);
  for (size_t r = 0; r < out.rows(); ++r) {
    for (size_t c = 0; c < out.cols(); ++c) out(r, c) += params_[1](0, c);
  }
  return out;
}

AttnDetector::AttnDetector(std::vector<Tensor> params) : params_(std::move(params)) {
  CheckShapes(params_,
              {{kF, kD}, {kF, kD}, {kD, kD}, {kD, kD}, {kD, kD}, {kD, kD},
               {1, kD}, {kD, 2}, {1, 2}},
              "AttnDetector");
}

Var AttnDetector::Pooled(const Var& x, std::span<const Var> p) const {
  CheckInput(x);
  Var tokens = ad::FeatureTokens(x, p[0], p[1]);
  Var attn = ad::MultiHeadSelfAttention(ad::MatMul(tokens, p[2]),
                                        ad::MatMul(tokens, p[3]),
                                        ad::MatMul(tokens, p[4]), kF, kHeads);
  Var h = ad::Add(tokens, ad::AddRowVector(ad::MatMul(attn, p[5]), p[6]));
  return ad::MeanRowGroups(h, kF);
}

Var AttnDetector::Forward(const Var& x, ad::Tape* tape,
                          std::vector<Var>* param_vars) const {
  const auto p = Record(params_, tape);
  Var pooled = ad::Apply(Pooled(x, p), ad::Activation::Relu());
  Var out = ad::AddRowVector(ad::MatMul(pooled, p[7]), p[8]);
  if (param_vars != nullptr) *param_vars = p;
  return out;
}

Tensor AttnDetector::Logits(const Tensor& x) const {
  return Forward(ad::Tape::Constant(x), nullptr, nullptr).value();
}

Tensor AttnDetector::PooledRepresentation(const Tensor& x) const {
  return Pooled(ad::Tape::Constant(x), Record(params_, nullptr)).value();
}

AttnDetector InitAttnFromMlp(const MlpDetector& mlp, uint64_t seed) {
  if (mlp.parameters().size() != 6 || mlp.w1().rows() != kF ||
      mlp.w1().cols() != kD) {
    throw InvalidArgument("InitAttnFromMlp: MLP first layer must be 12 x 64");
  }
  SeededRng rng(seed);
  Tensor bias(kF, kD);
  for (size_t i = 0; i < kF; ++i) {
    for (size_t c = 0; c < kD; ++c) {
      bias(i, c) = mlp.b1()(0, c) / static_cast<double>(kF);
    }
  }
  std::vector<Tensor> p;
  p.push_back(mlp.w1());
  p.push_back(std::move(bias));
  for (int i = 0; i < 3; ++i) p.push_back(Tensor::GlorotUniform(kD, kD, rng));
  p.emplace_back(kD, kD);  // zero output projection
  p.emplace_back(1, kD);
  p.push_back(Tensor::GlorotUniform(kD, 2, rng));
  p.emplace_back(1, 2);
  return AttnDetector(std::move(p));
}

namespace {

Tensor GatherFeatureRows(const Tensor& features, std::span<const size_t> rows) {
  Tensor out(rows.size(), features.cols());
  for (size_t i = 0; i < rows.size(); ++i) {
    std::copy_n(features.Row(rows[i]).data(), features.cols(), out.Row(i).data());
  }
  return out;
}

// One pass over the training split in shuffled minibatches.
template <typename Model>
void TrainEpoch(Model& model, const PairDataset& ds, std::span<const size_t> train,
                size_t batch_size, SeededRng& rng, AdamState& adam, int epoch) {
  std::vector<size_t> order(train.begin(), train.end());
  rng.Shuffle(std::span<size_t>(order));
  const size_t bs = batch_size == 0 ? order.size() : batch_size;
  std::vector<Tensor*> targets;
  for (Tensor& t : model.mutable_parameters()) targets.push_back(&t);
  for (size_t start = 0; start < order.size(); start += bs) {
    const std::span<const size_t> rows(order.data() + start,
                                       std::min(bs, order.size() - start));
    std::vector<int> labels;
    for (size_t r : rows) labels.push_back(ds.labels[r]);
    ad::Tape tape;
    std::vector<Var> pv;
    Var loss;
    try {
      Var logits = model.Forward(ad::Tape::Constant(GatherFeatureRows(ds.features, rows)),
                                 &tape, &pv);
      loss = ad::CrossEntropy(ad::SoftmaxRows(logits), labels,
                              Mask(rows.size(), true));
      tape.Backward(loss);
    } catch (const NumericalError& e) {
      throw NumericalError("detector training diverged at epoch " +
                           std::to_string(epoch) + ": " + e.what());
    }
    std::vector<Tensor> grads;
    for (const Var& v : pv) grads.push_back(v.grad());
    AdamStep(targets, grads, adam);
  }
}

void CheckTrainable(const PairDataset& ds, const DetectorTrainOptions& opts) {
  if (ds.num_train() == 0) throw InvalidArgument("detector training: empty train split");
  if (opts.epochs < 0) throw InvalidArgument("detector training: negative epochs");
  if (!(opts.lr > 0.0)) throw InvalidArgument("detector training: lr must be positive");
}

}  // namespace

MlpDetector TrainMlp(const PairDataset& ds, const DetectorTrainOptions& opts) {
  CheckTrainable(ds, opts);
  MlpDetector model(opts.seed);
  AdamState adam(AdamOptions{.lr = opts.lr});
  SeededRng rng = SeededRng(opts.seed).Fork(1);
  const auto train = ds.SplitRows(true);
  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    TrainEpoch(model, ds, train, opts.batch_size, rng, adam, epoch);
  }
  return model;
}

AttnDetector TrainAttn(const AttnDetector& init, const PairDataset& ds,
                       const DetectorTrainOptions& opts,
                       std::vector<double>* val_history) {
  CheckTrainable(ds, opts);
  AttnDetector model = init;
  AttnDetector best = init;
  double best_auc = SplitAuc(best, ds, false);
  if (val_history != nullptr) *val_history = {best_auc};
  AdamState adam(AdamOptions{.lr = opts.lr});
  SeededRng rng = SeededRng(opts.seed).Fork(2);
  const auto train = ds.SplitRows(true);
  int stale = 0;
  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    TrainEpoch(model, ds, train, opts.batch_size, rng, adam, epoch);
    const double auc = SplitAuc(model, ds, false);
    if (val_history != nullptr) val_history->push_back(auc);
    if (auc > best_auc) {
      best_auc = auc;
      best = model;
      stale = 0;
    } else if (opts.patience > 0 && ++stale >= opts.patience) {
      break;
    }
  }
  return best;
}

std::vector<double> LinkScores(const Detector& det, const Tensor& features) {
  const Tensor logits =
      std::visit([&](const auto& d) { return d.Logits(features); }, det);
  const Tensor probs = SoftmaxRows(logits);
  std::vector<double> scores(probs.rows());
  for (size_t r = 0; r < probs.rows(); ++r) scores[r] = probs(r, 1);
  return scores;
}

double PredictLink(const Detector& det, const SimilarityFeature& f) {
  Tensor x(1, kF, std::vector<double>(f.begin(), f.end()));
  return LinkScores(det, x)[0];
}

double SplitAuc(const Detector& det, const PairDataset& ds, bool train) {
  auto auc_of = [&](bool split) -> std::optional<double> {
    const auto rows = ds.SplitRows(split);
    std::vector<int> labels;
    for (size_t r : rows) labels.push_back(ds.labels[r]);
    const bool both = std::count(labels.begin(), labels.end(), 1) > 0 &&
                      std::count(labels.begin(), labels.end(), 0) > 0;
    if (!both) return std::nullopt;
    return Auc(LinkScores(det, GatherFeatureRows(ds.features, rows)), labels).auc;
  };
  if (auto a = auc_of(train)) return *a;
  if (auto a = auc_of(!train)) {
    LogInfo("SplitAuc: split holds a single class; using the other split");
    return *a;
  }
  throw InsufficientData("SplitAuc: dataset holds a single class");
}

}  // namespace graphleak
