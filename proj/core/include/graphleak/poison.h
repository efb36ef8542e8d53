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

#ifndef GRAPHLEAK_POISON_H_
#define GRAPHLEAK_POISON_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphleak/autodiff.h"
#include "graphleak/gnn.h"
#include "graphleak/graph.h"

namespace graphleak {

enum class GradientMode { kRaw, kSign };

std::string_view GradientModeName(GradientMode mode);
GradientMode ParseGradientMode(std::string_view name);

struct PoisonConfig {
  int target_class = 1;
  double step_size = 0.01;
  int iterations = 100;
  double alpha = 1.0;
  double beta = 0.01;
  double lambda = 1.0;
  // Unlinked pairs drawn per iteration; unset means one per linked pair.
  std::optional<size_t> unlinked_sample_cap;
  GradientMode gradient_mode = GradientMode::kSign;
  // Optional L-inf projection radius around the clean features. In sign mode
  // the iterate can never leave the iterations * step_size ball anyway.
  std::optional<double> linf_radius;
  // Subtract the cross-entropy term instead of adding it.
  bool ce_descent = false;
  uint64_t seed = 0;

  double distortion_budget() const { return iterations * step_size; }
  void Validate() const;
  friend bool operator==(const PoisonConfig&, const PoisonConfig&) = default;
};

struct LossBreakdown {
  double attraction = 0.0;
  double repulsion = 0.0;
  double ce = 0.0;
  double total = 0.0;
};

// -sum over pairs of |p_u - p_v|^2. Empty pair lists give 0 with a warning.
ad::Var AttractionLoss(const ad::Var& probs, std::span<const Edge> pairs);
// sum over pairs of (1 - cos(p_u, p_v))^2.
ad::Var RepulsionLoss(const ad::Var& probs, std::span<const Edge> pairs);

double AttractionLoss(const Posteriors& p, std::span<const Edge> pairs);
double RepulsionLoss(const Posteriors& p, std::span<const Edge> pairs);

struct LossTerms {
  ad::Var attraction;
  ad::Var repulsion;
  ad::Var ce;
  ad::Var total;

  LossBreakdown Values() const;
};

// Weighted objective on posteriors of the partial graph's nodes. CE runs over
// every node of the partial graph against its true label.
LossTerms BuildTotalLoss(const ad::Var& probs, const Graph& partial,
                         std::span<const Edge> linked,
                         std::span<const Edge> unlinked,
                         const PoisonConfig& cfg);

// Evaluates the objective with the linked pairs of  and one
// unlinked draw seeded by cfg.seed.
LossBreakdown TotalLoss(const Posteriors& p, const PartialGraph& partial,
                        const PoisonConfig& cfg);

// Uniform non-edges of g used by the repulsion term for one iteration.
std::vector<Edge> SampleUnlinked(const Graph& g, size_t count, uint64_t seed);

struct PoisonTraceRow {
  int iteration = 0;
  LossBreakdown loss;
  double distortion = 0.0;
};

struct PoisonResult {
  PartialGraph poisoned;
  GnnModel shadow;
  // Row i holds the objective before update i + 1; the last row is evaluated
  // on the returned features. iterations + 1 rows.
  std::vector<PoisonTraceRow> trace;
};

// Trains a shadow model on the clean partial graph, then runs gradient
// ascent on the objective, updating only nodes labelled cfg.target_class.
PoisonResult PgdPoison(const PartialGraph& partial, const GnnConfig& shadow_cfg,
                       const PoisonConfig& cfg);

// Max absolute feature difference over all entries.
double Distortion(const Tensor& clean, const Tensor& poisoned);
double Distortion(const PartialGraph& clean, const PartialGraph& poisoned);

// iteration,attraction,repulsion,ce,total,distortion
std::string TraceToCsv(std::span<const PoisonTraceRow> trace);

}  // namespace graphleak

#endif  // GRAPHLEAK_POISON_H_
