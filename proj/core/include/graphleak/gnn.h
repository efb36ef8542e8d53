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

#ifndef GRAPHLEAK_GNN_H_
#define GRAPHLEAK_GNN_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphleak/adam.h"
#include "graphleak/autodiff.h"
#include "graphleak/graph.h"
#include "graphleak/rng.h"
#include "graphleak/sparse.h"
#include "graphleak/tensor.h"

namespace graphleak {

enum class GnnArch { kGcn, kSage, kGat };

std::string_view ArchName(GnnArch arch);
// Accepts "gcn", "sage"/"graphsage", "gat" (case-insensitive).
GnnArch ParseArch(std::string_view name);

struct GnnConfig {
  GnnArch arch = GnnArch::kSage;
  int depth = 2;
  int hidden_dim = 64;
  // GAT heads on every layer; hidden heads are concatenated, output heads
  // averaged.
  int num_heads = 8;
  double dropout = 0.5;
  double lr = 0.01;
  int epochs = 200;
  double weight_decay = 5e-4;
  uint64_t seed = 0;

  void Validate() const;
  friend bool operator==(const GnnConfig&, const GnnConfig&) = default;
};

// Propagation structures for one topology. Rows index destination nodes.
struct GraphOperators {
  // D^-1/2 (A + I) D^-1/2 with degrees counted including the self-loop.
  SparseMatrix gcn;
  // Mean over neighbors; rows of isolated nodes are empty.
  SparseMatrix mean;
  // Pattern of A + I (all values 1); the GAT attention support.
  SparseMatrix attention;
  // Source and destination node of every attention entry, in CSR order.
  std::vector<size_t> attention_src;
  std::vector<size_t> attention_dst;

  static GraphOperators Build(const Graph& g);
};

// One GCN layer: act(P h W + b). Relu when activate is set.
ad::Var GcnLayer(const ad::Var& h, const GraphOperators& ops, const ad::Var& w,
                 const ad::Var& b, bool activate);

// One mean-aggregator GraphSAGE layer over the full neighborhood:
// act(h W_self + mean_{u in N(v)} h_u W_neigh + b). Isolated nodes aggregate
// zero.
ad::Var SageLayer(const ad::Var& h, const GraphOperators& ops,
                  const ad::Var& w_self, const ad::Var& w_neigh,
                  const ad::Var& b, bool activate);

struct GatLayerOutput {
  ad::Var out;
  // Per head, nnz x 1 attention weights aligned with ops.attention.
  std::vector<ad::Var> attention;
};

// Multi-head GAT layer over N(v) plus v. `w` is d_in x (heads * F) and
// a_src/a_dst are heads x F. Hidden layers concatenate heads and apply ELU;
// the final layer averages heads and applies no activation.
GatLayerOutput GatLayer(const ad::Var& h, const GraphOperators& ops,
                        const ad::Var& w, const ad::Var& a_src,
                        const ad::Var& a_dst, const ad::Var& b, size_t heads,
                        bool final_layer);

// Class probabilities, one row per node.
struct Posteriors {
  Tensor probs;

  size_t num_nodes() const { return probs.rows(); }
  size_t num_classes() const { return probs.cols(); }
  std::span<const double> Row(size_t v) const { return probs.Row(v); }
};

class GnnModel {
 public:
  GnnModel() = default;
  // Glorot-uniform weights and zero biases, seeded by config.seed.
  GnnModel(GnnConfig config, size_t in_dim, int num_classes);
  // Restores a model from explicit parameters (see ParameterShapes).
  GnnModel(GnnConfig config, size_t in_dim, int num_classes,
           std::vector<Tensor> params);

  const GnnConfig& config() const { return config_; }
  size_t in_dim() const { return in_dim_; }
  int num_classes() const { return num_classes_; }
  std::span<const Tensor> parameters() const { return params_; }
  std::vector<Tensor>& mutable_parameters() { return params_; }

  // Expected parameter shapes, in storage order, for a configuration.
  static std::vector<std::array<size_t, 2>> ParameterShapes(
      const GnnConfig& config, size_t in_dim, int num_classes);

  // Logits for every node. With a tape the parameters are recorded as
  // variables (their gradients are read back via `param_vars`); dropout is
  // applied only when dropout_rng is non-null.
  ad::Var Forward(const GraphOperators& ops, const ad::Var& features,
                  ad::Tape* tape, std::vector<ad::Var>* param_vars,
                  SeededRng* dropout_rng) const;

  friend bool operator==(const GnnModel&, const GnnModel&) = default;

 private:
  GnnConfig config_;
  size_t in_dim_ = 0;
  int num_classes_ = 0;
  std::vector<Tensor> params_;
};

// Full-batch Adam training with cross-entropy on a node mask. Keeps the
// optimizer state so training can continue across calls (online updates).
class GnnTrainer {
 public:
  GnnTrainer(const GnnConfig& config, size_t in_dim, int num_classes);

  // Trains for `epochs` full passes on the masked nodes of g. Throws
  // NumericalError if the loss diverges.
  void RunEpochs(const Graph& g, const GraphOperators& ops, const Mask& mask,
                 int epochs);

  const GnnModel& model() const { return model_; }
  std::span<const double> loss_history() const { return losses_; }

 private:
  GnnModel model_;
  AdamState adam_;
  SeededRng dropout_rng_;
  std::vector<double> losses_;
};

// Trains cfg.epochs epochs on g.train_mask() from a fresh initialization.
GnnModel TrainGnn(const Graph& g, const GnnConfig& cfg,
                  std::vector<double>* loss_history = nullptr);

// Inference pass with dropout disabled.
Posteriors PredictPosteriors(const GnnModel& m, const Graph& g);
Posteriors PredictPosteriors(const GnnModel& m, const Graph& g,
                             const GraphOperators& ops);

// Rows of `all` for the requested node ids, in request order. This is the
// only view of the model the attacker gets.
Posteriors QueryPosteriors(const Posteriors& all, std::span<const size_t> ids);

// Argmax accuracy over the masked nodes; ties resolve to the lowest class.
double Accuracy(const Posteriors& p, std::span<const int> labels,
                const Mask& mask);
double Accuracy(const GnnModel& m, const Graph& g, const Mask& mask);

// JSON holding the config and flattened parameter arrays.
void SaveGnnModel(const GnnModel& m, const std::filesystem::path& path);
GnnModel LoadGnnModel(const std::filesystem::path& path);
std::string GnnModelToJson(const GnnModel& m);
GnnModel GnnModelFromJson(std::string_view json);

}  // namespace graphleak

#endif  // GRAPHLEAK_GNN_H_
