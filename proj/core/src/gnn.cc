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

#include "graphleak/gnn.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "graphleak/error.h"

namespace graphleak {

using ad::Var;

std::string_view ArchName(GnnArch arch) {
  switch (arch) {
    case GnnArch::kGcn:
      return "gcn";
    case GnnArch::kSage:
      return "sage";
    case GnnArch::kGat:
      return "gat";
  }
  return "unknown";
}

GnnArch ParseArch(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "gcn") return GnnArch::kGcn;
  if (s == "sage" || s == "graphsage") return GnnArch::kSage;
  if (s == "gat") return GnnArch::kGat;
  throw InvalidArgument("unknown GNN architecture '" + std::string(name) + "'");
}

void GnnConfig::Validate() const {
  if (depth < 1) throw InvalidArgument("GnnConfig: depth must be >= 1");
  if (hidden_dim < 1) throw InvalidArgument("GnnConfig: hidden_dim must be >= 1");
  if (arch == GnnArch::kGat) {
    if (num_heads < 1) throw InvalidArgument("GnnConfig: num_heads must be >= 1");
    if (hidden_dim % num_heads != 0) {
      throw InvalidArgument("GnnConfig: GAT hidden_dim " +
                            std::to_string(hidden_dim) +
                            " not divisible by num_heads " +
                            std::to_string(num_heads));
    }
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw InvalidArgument("GnnConfig: dropout must be in [0, 1)");
  }
  if (!(lr > 0.0)) throw InvalidArgument("GnnConfig: lr must be positive");
  if (epochs < 0) throw InvalidArgument("GnnConfig: epochs must be >= 0");
  if (weight_decay < 0.0) {
    throw InvalidArgument("GnnConfig: weight_decay must be >= 0");
  }
}

GraphOperators GraphOperators::Build(const Graph& g) {
  const size_t n = g.num_nodes();
  GraphOperators ops;
  std::vector<size_t> offsets(n + 1, 0), self_offsets(n + 1, 0);
  std::vector<size_t> cols, self_cols;
  std::vector<double> gcn_vals, mean_vals;
  for (size_t v = 0; v < n; ++v) {
    const auto nb = g.Neighbors(v);
    const double deg_hat_v = static_cast<double>(nb.size() + 1);
    const double inv_deg = nb.empty() ? 0.0 : 1.0 / static_cast<double>(nb.size());
    bool self_done = false;
    auto push_self = [&] {
      self_cols.push_back(v);
      gcn_vals.push_back(1.0 / deg_hat_v);
      self_done = true;
    };
    for (size_t u : nb) {
      if (!self_done && u > v) push_self();
      const double deg_hat_u = static_cast<double>(g.Degree(u) + 1);
      self_cols.push_back(u);
      gcn_vals.push_back(1.0 / std::sqrt(deg_hat_v * deg_hat_u));
      cols.push_back(u);
      mean_vals.push_back(inv_deg);
    }
    if (!self_done) push_self();
    offsets[v + 1] = cols.size();
    self_offsets[v + 1] = self_cols.size();
  }
  std::vector<double> ones(self_cols.size(), 1.0);
  ops.gcn = SparseMatrix(n, n, self_offsets, self_cols, std::move(gcn_vals));
  ops.mean = SparseMatrix(n, n, std::move(offsets), std::move(cols),
                          std::move(mean_vals));
  ops.attention = SparseMatrix(n, n, self_offsets, self_cols, std::move(ones));
  ops.attention_src = self_cols;
  ops.attention_dst.resize(self_cols.size());
  for (size_t v = 0; v < n; ++v) {
    for (size_t k = self_offsets[v]; k < self_offsets[v + 1]; ++k) {
      ops.attention_dst[k] = v;
    }
  }
  return ops;
}

namespace {

// s * (h * w) or (s * h) * w, whichever keeps the sparse product narrower.
Var PropagateThenProject(const SparseMatrix& s, const Var& h, const Var& w) {
  if (h.cols() > w.cols()) return ad::SpMM(s, ad::MatMul(h, w));
  return ad::MatMul(ad::SpMM(s, h), w);
}

}  // namespace

Var GcnLayer(const Var& h, const GraphOperators& ops, const Var& w,
             const Var& b, bool activate) {
  if (h.cols() != w.rows()) {
    throw InvalidArgument("GcnLayer: input width " + std::to_string(h.cols()) +
                          " != weight rows " + std::to_string(w.rows()));
  }
  Var z = ad::AddRowVector(PropagateThenProject(ops.gcn, h, w), b);
  return activate ? ad::Apply(z, ad::Activation::Relu()) : z;
}

Var SageLayer(const Var& h, const GraphOperators& ops, const Var& w_self,
              const Var& w_neigh, const Var& b, bool activate) {
  if (h.cols() != w_self.rows() || h.cols() != w_neigh.rows()) {
    throw InvalidArgument("SageLayer: input width does not match weights");
  }
  Var z = ad::Add(ad::MatMul(h, w_self),
                  PropagateThenProject(ops.mean, h, w_neigh));
  z = ad::AddRowVector(z, b);
  return activate ? ad::Apply(z, ad::Activation::Relu()) : z;
}

GatLayerOutput GatLayer(const Var& h, const GraphOperators& ops, const Var& w,
                        const Var& a_src, const Var& a_dst, const Var& b,
                        size_t heads, bool final_layer) {
  if (heads == 0 || w.cols() % heads != 0) {
    throw InvalidArgument("GatLayer: width not divisible by heads");
  }
  if (h.cols() != w.rows()) {
    throw InvalidArgument("GatLayer: input width does not match weights");
  }
  const size_t f = w.cols() / heads;
  Var z = ad::MatMul(h, w);
  Var s_src = ad::HeadScores(z, a_src);
  Var s_dst = ad::HeadScores(z, a_dst);
  GatLayerOutput result;
  std::vector<Var> outs;
  for (size_t k = 0; k < heads; ++k) {
    Var e = ad::Add(ad::GatherRows(ad::SliceCols(s_src, k, k + 1), ops.attention_src),
                    ad::GatherRows(ad::SliceCols(s_dst, k, k + 1), ops.attention_dst));
    e = ad::Apply(e, ad::Activation::LeakyRelu(0.2));
    Var alpha = ad::SegmentSoftmax(e, ops.attention);
    outs.push_back(ad::SpMM(ops.attention, alpha, ad::SliceCols(z, k * f, (k + 1) * f)));
    result.attention.push_back(alpha);
  }
  if (final_layer) {
    Var acc = outs[0];
    for (size_t k = 1; k < heads; ++k) acc = ad::Add(acc, outs[k]);
    result.out = ad::AddRowVector(ad::Scale(acc, 1.0 / static_cast<double>(heads)), b);
  } else {
    result.out = ad::Apply(ad::AddRowVector(ad::ConcatCols(outs), b),
                           ad::Activation::Elu());
  }
  return result;
}

std::vector<std::array<size_t, 2>> GnnModel::ParameterShapes(
    const GnnConfig& config, size_t in_dim, int num_classes) {
  config.Validate();
  if (num_classes < 1) throw InvalidArgument("GnnModel: num_classes must be >= 1");
  std::vector<std::array<size_t, 2>> shapes;
  const size_t hidden = static_cast<size_t>(config.hidden_dim);
  const size_t classes = static_cast<size_t>(num_classes);
  const size_t heads = static_cast<size_t>(config.num_heads);
  for (int l = 0; l < config.depth; ++l) {
    const bool last = l == config.depth - 1;
    const size_t din = l == 0 ? in_dim : hidden;
    const size_t dout = last ? classes : hidden;
    switch (config.arch) {
      case GnnArch::kGcn:
        shapes.push_back({din, dout});
        shapes.push_back({1, dout});
        break;
      case GnnArch::kSage:
        shapes.push_back({din, dout});
        shapes.push_back({din, dout});
        shapes.push_back({1, dout});
        break;
      case GnnArch::kGat: {
        const size_t f = last ? classes : hidden / heads;
        shapes.push_back({din, heads * f});
        shapes.push_back({heads, f});
        shapes.push_back({heads, f});
        shapes.push_back({1, last ? classes : heads * f});
        break;
      }
    }
  }
  return shapes;
}

GnnModel::GnnModel(GnnConfig config, size_t in_dim, int num_classes)
    : config_(config), in_dim_(in_dim), num_classes_(num_classes) {
  SeededRng rng(config_.seed);
  for (const auto& s : ParameterShapes(config_, in_dim, num_classes)) {
    // Row vectors are biases and start at zero; everything else is Glorot.
    if (s[0] == 1) {
      params_.emplace_back(s[0], s[1]);
    } else {
      params_.push_back(Tensor::GlorotUniform(s[0], s[1], rng));
    }
  }
}

GnnModel::GnnModel(GnnConfig config, size_t in_dim, int num_classes,
                   std::vector<Tensor> params)
    : config_(config),
      in_dim_(in_dim),
      num_classes_(num_classes),
      params_(std::move(params)) {
  const auto shapes = ParameterShapes(config_, in_dim, num_classes);
  if (shapes.size() != params_.size()) {
    throw InvalidArgument("GnnModel: expected " + std::to_string(shapes.size()) +
                          " parameter tensors, got " +
                          std::to_string(params_.size()));
  }
  for (size_t i = 0; i < shapes.size(); ++i) {
    if (params_[i].rows() != shapes[i][0] || params_[i].cols() != shapes[i][1]) {
      throw InvalidArgument("GnnModel: parameter " + std::to_string(i) +
                            " has shape " + params_[i].ShapeString());
    }
  }
}

Var GnnModel::Forward(const GraphOperators& ops, const Var& features,
                      ad::Tape* tape, std::vector<Var>* param_vars,
                      SeededRng* dropout_rng) const {
  if (features.cols() != in_dim_) {
    throw InvalidArgument("GnnModel: feature width " +
                          std::to_string(features.cols()) + " != model input " +
                          std::to_string(in_dim_));
  }
  if (features.rows() != ops.gcn.rows()) {
    throw InvalidArgument("GnnModel: feature rows do not match the graph");
  }
  std::vector<Var> p;
  p.reserve(params_.size());
  for (const Tensor& t : params_) {
    p.push_back(tape != nullptr ? tape->Variable(t) : ad::Tape::Constant(t));
  }
  Var h = features;
  size_t idx = 0;
  for (int l = 0; l < config_.depth; ++l) {
    const bool last = l == config_.depth - 1;
    if (l > 0 && dropout_rng != nullptr && config_.dropout > 0.0) {
      h = ad::Dropout(h, config_.dropout, *dropout_rng);
    }
    switch (config_.arch) {
      case GnnArch::kGcn:
        h = GcnLayer(h, ops, p[idx], p[idx + 1], !last);
        idx += 2;
        break;
      case GnnArch::kSage:
        h = SageLayer(h, ops, p[idx], p[idx + 1], p[idx + 2], !last);
        idx += 3;
        break;
      case GnnArch::kGat:
        h = GatLayer(h, ops, p[idx], p[idx + 1], p[idx + 2], p[idx + 3],
                     static_cast<size_t>(config_.num_heads), last)
                .out;
        idx += 4;
        break;
    }
  }
  if (param_vars != nullptr) *param_vars = std::move(p);
  return h;
}

GnnTrainer::GnnTrainer(const GnnConfig& config, size_t in_dim, int num_classes)
    : model_(config, in_dim, num_classes),
      adam_(AdamOptions{.lr = config.lr, .weight_decay = config.weight_decay}),
      dropout_rng_(SeededRng(config.seed).Fork(0xd20)) {}

void GnnTrainer::RunEpochs(const Graph& g, const GraphOperators& ops,
                           const Mask& mask, int epochs) {
  if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; })) {
    throw InvalidArgument("GnnTrainer: empty training mask");
  }
  const Var x = ad::Tape::Constant(g.features());
  std::vector<Tensor*> targets;
  for (Tensor& t : model_.mutable_parameters()) targets.push_back(&t);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    ad::Tape tape;
    std::vector<Var> pv;
    double loss_value = 0.0;
    try {
      Var logits = model_.Forward(ops, x, &tape, &pv, &dropout_rng_);
      Var loss = ad::CrossEntropy(ad::SoftmaxRows(logits), g.labels(), mask);
      loss_value = loss.value().item();
      tape.Backward(loss);
    } catch (const NumericalError& e) {
      throw NumericalError("GNN training diverged at epoch " +
                           std::to_string(losses_.size()) + ": " + e.what());
    }
    std::vector<Tensor> grads;
    grads.reserve(pv.size());
    for (const Var& v : pv) grads.push_back(v.grad());
    AdamStep(targets, grads, adam_);
    losses_.push_back(loss_value);
    for (const Tensor* t : targets) {
      if (!t->AllFinite()) {
        throw NumericalError("GNN training diverged at epoch " +
                             std::to_string(losses_.size() - 1) +
                             ": non-finite parameters");
      }
    }
  }
}

GnnModel TrainGnn(const Graph& g, const GnnConfig& cfg,
                  std::vector<double>* loss_history) {
  cfg.Validate();
  GnnTrainer trainer(cfg, g.num_features(), g.num_classes());
  const GraphOperators ops = GraphOperators::Build(g);
  trainer.RunEpochs(g, ops, g.train_mask(), cfg.epochs);
  if (loss_history != nullptr) {
    loss_history->assign(trainer.loss_history().begin(),
                         trainer.loss_history().end());
  }
  return trainer.model();
}

Posteriors PredictPosteriors(const GnnModel& m, const Graph& g) {
  return PredictPosteriors(m, g, GraphOperators::Build(g));
}

Posteriors PredictPosteriors(const GnnModel& m, const Graph& g,
                             const GraphOperators& ops) {
  Var logits = m.Forward(ops, ad::Tape::Constant(g.features()), nullptr,
                         nullptr, nullptr);
  return Posteriors{SoftmaxRows(logits.value())};
}

Posteriors QueryPosteriors(const Posteriors& all, std::span<const size_t> ids) {
  Tensor out(ids.size(), all.num_classes());
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= all.num_nodes()) {
      throw InvalidArgument("QueryPosteriors: node " + std::to_string(ids[i]) +
                            " out of range");
    }
    std::copy_n(all.Row(ids[i]).data(), all.num_classes(), out.Row(i).data());
  }
  return Posteriors{std::move(out)};
}

double Accuracy(const Posteriors& p, std::span<const int> labels,
                const Mask& mask) {
  if (labels.size() != p.num_nodes() || mask.size() != p.num_nodes()) {
    throw InvalidArgument("Accuracy: length mismatch");
  }
  const std::vector<int> pred = ArgmaxRows(p.probs);
  size_t total = 0, correct = 0;
  for (size_t i = 0; i < pred.size(); ++i) {
    if (!mask[i]) continue;
    ++total;
    correct += pred[i] == labels[i];
  }
  if (total == 0) throw InvalidArgument("Accuracy: empty mask");
  return static_cast<double>(correct) / static_cast<double>(total);
}

double Accuracy(const GnnModel& m, const Graph& g, const Mask& mask) {
  return Accuracy(PredictPosteriors(m, g), g.labels(), mask);
}

}  // namespace graphleak
