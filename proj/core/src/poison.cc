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

#include "graphleak/poison.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "graphleak/csv_util.h"
#include "graphleak/error.h"
#include "graphleak/log.h"
#include "graphleak/rng.h"
#include "graphleak/sampling.h"

namespace graphleak {

using ad::Var;

std::string_view GradientModeName(GradientMode mode) {
  return mode == GradientMode::kRaw ? "raw" : "sign";
}

GradientMode ParseGradientMode(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "raw") return GradientMode::kRaw;
  if (s == "sign") return GradientMode::kSign;
  throw InvalidArgument("unknown gradient mode '" + std::string(name) + "'");
}

void PoisonConfig::Validate() const {
  if (target_class < 0) throw InvalidArgument("PoisonConfig: negative target_class");
  if (!(step_size >= 0.0) || !std::isfinite(step_size)) {
    throw InvalidArgument("PoisonConfig: step_size must be finite and >= 0");
  }
  if (iterations < 0) throw InvalidArgument("PoisonConfig: iterations must be >= 0");
  if (!(alpha >= 0.0 && beta >= 0.0 && lambda >= 0.0)) {
    throw InvalidArgument("PoisonConfig: loss weights must be >= 0");
  }
  if (linf_radius && !(*linf_radius > 0.0)) {
    throw InvalidArgument("PoisonConfig: linf_radius must be positive");
  }
}

namespace {

std::vector<size_t> Endpoints(std::span<const Edge> pairs, bool first) {
  std::vector<size_t> out(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) out[i] = first ? pairs[i].u : pairs[i].v;
  return out;
}

Var ZeroScalar() { return ad::Tape::Constant(Tensor::Scalar(0.0)); }

}  // namespace

Var AttractionLoss(const Var& probs, std::span<const Edge> pairs) {
  if (pairs.empty()) {
    LogWarning("AttractionLoss: no linked pairs; term is 0");
    return ZeroScalar();
  }
  Var diff = ad::Sub(ad::GatherRows(probs, Endpoints(pairs, true)),
                     ad::GatherRows(probs, Endpoints(pairs, false)));
  return ad::Scale(ad::Sum(ad::Mul(diff, diff)), -1.0);
}

Var RepulsionLoss(const Var& probs, std::span<const Edge> pairs) {
  if (pairs.empty()) return ZeroScalar();
  Var cos = ad::RowCosine(ad::GatherRows(probs, Endpoints(pairs, true)),
                          ad::GatherRows(probs, Endpoints(pairs, false)));
  Var gap = ad::AddScalar(ad::Scale(cos, -1.0), 1.0);
  return ad::Sum(ad::Mul(gap, gap));
}

double AttractionLoss(const Posteriors& p, std::span<const Edge> pairs) {
  return AttractionLoss(ad::Tape::Constant(p.probs), pairs).value().item();
}

double RepulsionLoss(const Posteriors& p, std::span<const Edge> pairs) {
  return RepulsionLoss(ad::Tape::Constant(p.probs), pairs).value().item();
}

LossBreakdown LossTerms::Values() const {
  return {attraction.value().item(), repulsion.value().item(),
          ce.value().item(), total.value().item()};
}

LossTerms BuildTotalLoss(const Var& probs, const Graph& partial,
                         std::span<const Edge> linked,
                         std::span<const Edge> unlinked,
                         const PoisonConfig& cfg) {
  if (probs.rows() != partial.num_nodes()) {
    throw InvalidArgument("BuildTotalLoss: posterior rows do not match graph");
  }
  LossTerms t;
  t.attraction = AttractionLoss(probs, linked);
  t.repulsion = RepulsionLoss(probs, unlinked);
  const Mask all(partial.num_nodes(), true);
  t.ce = ad::CrossEntropy(probs, partial.labels(), all);
  const double lambda = cfg.ce_descent ? -cfg.lambda : cfg.lambda;
  t.total = ad::Add(ad::Add(ad::Scale(t.attraction, cfg.alpha),
                            ad::Scale(t.repulsion, cfg.beta)),
                    ad::Scale(t.ce, lambda));
  return t;
}

std::vector<Edge> SampleUnlinked(const Graph& g, size_t count, uint64_t seed) {
  std::vector<Edge> out;
  if (count == 0) return out;
  for (const PairSample& s : SamplePairs(g, PairScope::All(), 0, count, seed)) {
    out.push_back({s.u, s.v});
  }
  return out;
}

namespace {

size_t UnlinkedCount(const Graph& g, const PoisonConfig& cfg) {
  return cfg.unlinked_sample_cap.value_or(g.num_edges());
}

uint64_t IterationSeed(const PoisonConfig& cfg, int iteration) {
  return MixSeed(cfg.seed, static_cast<uint64_t>(iteration) + 1);
}

}  // namespace

LossBreakdown TotalLoss(const Posteriors& p, const PartialGraph& partial,
                        const PoisonConfig& cfg) {
  const Graph& g = partial.graph;
  const auto unlinked = SampleUnlinked(g, UnlinkedCount(g, cfg), IterationSeed(cfg, 0));
  return BuildTotalLoss(ad::Tape::Constant(p.probs), g, g.edges(), unlinked, cfg)
      .Values();
}

double Distortion(const Tensor& clean, const Tensor& poisoned) {
  if (!clean.SameShape(poisoned)) {
    throw InvalidArgument("Distortion: shape mismatch " + clean.ShapeString() +
                          " vs " + poisoned.ShapeString());
  }
  return MaxAbsDiff(clean, poisoned);
}

double Distortion(const PartialGraph& clean, const PartialGraph& poisoned) {
  return Distortion(clean.graph.features(), poisoned.graph.features());
}

PoisonResult PgdPoison(const PartialGraph& partial, const GnnConfig& shadow_cfg,
                       const PoisonConfig& cfg) {
  cfg.Validate();
  const Graph& g = partial.graph;
  std::vector<size_t> targets;
  for (size_t v = 0; v < g.num_nodes(); ++v) {
    if (g.label(v) == cfg.target_class) targets.push_back(v);
  }
  if (targets.empty()) {
    throw InsufficientData("PgdPoison: partial graph has no node of class " +
                           std::to_string(cfg.target_class));
  }

  PoisonResult result{partial, TrainGnn(g, shadow_cfg), {}};
  const GraphOperators ops = GraphOperators::Build(g);
  const Tensor& clean = g.features();
  Tensor x = clean;
  const size_t n_unlinked = UnlinkedCount(g, cfg);
  const bool moves = cfg.step_size != 0.0;

  for (int it = 0; it <= cfg.iterations; ++it) {
    const auto unlinked = SampleUnlinked(g, n_unlinked, IterationSeed(cfg, it));
    ad::Tape tape;
    Var xv = tape.Variable(x);
    Var probs = ad::SoftmaxRows(
        result.shadow.Forward(ops, xv, nullptr, nullptr, nullptr));
    LossTerms terms = BuildTotalLoss(probs, g, g.edges(), unlinked, cfg);
    result.trace.push_back({it, terms.Values(), Distortion(clean, x)});
    if (it == cfg.iterations || !moves) continue;

    tape.Backward(terms.total);
    const Tensor& grad = xv.grad();
    for (size_t v : targets) {
      auto row = x.Row(v);
      const auto g_row = grad.Row(v);
      const auto c_row = clean.Row(v);
      for (size_t j = 0; j < row.size(); ++j) {
        double step = g_row[j];
        if (cfg.gradient_mode == GradientMode::kSign) {
          step = step > 0.0 ? 1.0 : (step < 0.0 ? -1.0 : 0.0);
        }
        double value = row[j] + cfg.step_size * step;
        if (cfg.linf_radius) {
          value = std::clamp(value, c_row[j] - *cfg.linf_radius,
                             c_row[j] + *cfg.linf_radius);
        }
        row[j] = value;
      }
    }
    if (!x.AllFinite()) {
      throw NumericalError("PgdPoison: non-finite features at iteration " +
                           std::to_string(it + 1));
    }
  }
  result.poisoned.graph = g.WithFeatures(std::move(x));
  return result;
}

std::string TraceToCsv(std::span<const PoisonTraceRow> trace) {
  std::string out = "iteration,attraction,repulsion,ce,total,distortion\n";
  for (const PoisonTraceRow& r : trace) {
    out += std::to_string(r.iteration) + ',' + FormatDouble(r.loss.attraction) +
           ',' + FormatDouble(r.loss.repulsion) + ',' + FormatDouble(r.loss.ce) +
           ',' + FormatDouble(r.loss.total) + ',' + FormatDouble(r.distortion) +
           '\n';
  }
  return out;
}

}  // namespace graphleak
