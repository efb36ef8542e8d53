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

#include <benchmark/benchmark.h>

#include "graphleak/autodiff.h"
#include "graphleak/detector.h"
#include "graphleak/gnn.h"
#include "graphleak/metrics.h"
#include "graphleak/poison.h"
#include "graphleak/rng.h"
#include "graphleak/sampling.h"
#include "graphleak/synthetic.h"
#include "graphleak/tensor.h"

namespace graphleak {
namespace {

Graph CitationLike(size_t n) {
  SbmOptions o;
  o.num_nodes = n;
  o.num_classes = 7;
  o.num_features = 1433;
  o.p_intra = 3.2 * 7.0 / static_cast<double>(n);
  o.p_inter = 0.8 * 7.0 / (6.0 * static_cast<double>(n));
  o.words_per_node = 18;
  return SplitTrainTest(MakeSbmGraph(o), 0.8, 1);
}

void BM_DenseMatMul(benchmark::State& state) {
  const auto n = static_cast<size_t>(state.range(0));
  SeededRng rng(1);
  const Tensor a = Tensor::Uniform(n, n, -1.0, 1.0, rng);
  const Tensor b = Tensor::Uniform(n, n, -1.0, 1.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(MatMul(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n * n));
}
BENCHMARK(BM_DenseMatMul)->Arg(64)->Arg(256);

void BM_SpMM(benchmark::State& state) {
  const Graph g = CitationLike(static_cast<size_t>(state.range(0)));
  const GraphOperators ops = GraphOperators::Build(g);
  SeededRng rng(2);
  const Tensor h = Tensor::Uniform(g.num_nodes(), 64, -1.0, 1.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(SpMM(ops.gcn, h));
}
BENCHMARK(BM_SpMM)->Arg(1000)->Arg(2708);

void BM_GnnEpoch(benchmark::State& state) {
  const Graph g = CitationLike(2708);
  const GraphOperators ops = GraphOperators::Build(g);
  GnnConfig cfg;
  cfg.arch = static_cast<GnnArch>(state.range(0));
  GnnTrainer trainer(cfg, g.num_features(), g.num_classes());
  for (auto _ : state) trainer.RunEpochs(g, ops, g.train_mask(), 1);
  state.SetLabel(std::string(ArchName(cfg.arch)));
}
BENCHMARK(BM_GnnEpoch)
    ->Arg(static_cast<int>(GnnArch::kGcn))
    ->Arg(static_cast<int>(GnnArch::kSage))
    ->Arg(static_cast<int>(GnnArch::kGat))
    ->Unit(benchmark::kMillisecond);

void BM_PgdPoison(benchmark::State& state) {
  const Graph g = CitationLike(2708);
  const PartialGraph partial = SamplePartial(g, 0.1, 3);
  GnnConfig shadow;
  shadow.epochs = 50;
  PoisonConfig pc;
  pc.iterations = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(PgdPoison(partial, shadow, pc));
}
BENCHMARK(BM_PgdPoison)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SimilarityFeatures(benchmark::State& state) {
  SeededRng rng(4);
  const Tensor p = SoftmaxRows(Tensor::Uniform(2, 7, -2.0, 2.0, rng));
  for (auto _ : state) benchmark::DoNotOptimize(SimilarityFeatures(p.Row(0), p.Row(1)));
}
BENCHMARK(BM_SimilarityFeatures);

void BM_Auc(benchmark::State& state) {
  const auto n = static_cast<size_t>(state.range(0));
  SeededRng rng(5);
  std::vector<double> scores(n);
  std::vector<int> labels(n);
  for (size_t i = 0; i < n; ++i) {
    scores[i] = rng.Uniform();
    labels[i] = i % 2;
  }
  for (auto _ : state) benchmark::DoNotOptimize(Auc(scores, labels));
}
BENCHMARK(BM_Auc)->Arg(2000)->Arg(100000);

}  // namespace
}  // namespace graphleak

BENCHMARK_MAIN();
