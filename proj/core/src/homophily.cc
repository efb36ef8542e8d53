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

#include "graphleak/homophily.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphleak/csv_util.h"
#include "graphleak/error.h"

namespace graphleak {

double NodeHomophily(const Graph& g, size_t v) {
  if (v >= g.num_nodes()) throw InvalidArgument("NodeHomophily: node out of range");
  const auto nb = g.Neighbors(v);
  if (nb.empty()) {
    throw InvalidArgument("NodeHomophily: node " + std::to_string(v) +
                          " is isolated");
  }
  const size_t d = g.num_features();
  std::vector<double> mean(d, 0.0);
  for (size_t u : nb) {
    const auto row = g.features().Row(u);
    for (size_t j = 0; j < d; ++j) mean[j] += row[j];
  }
  const double inv = 1.0 / static_cast<double>(nb.size());
  const auto x = g.features().Row(v);
  double dot = 0.0, nx = 0.0, nm = 0.0;
  for (size_t j = 0; j < d; ++j) {
    const double m = mean[j] * inv;
    dot += x[j] * m;
    nx += x[j] * x[j];
    nm += m * m;
  }
  if (nx == 0.0 || nm == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(nx) * std::sqrt(nm)), -1.0, 1.0);
}

std::vector<size_t> Histogram(std::span<const double> values, size_t bins,
                              double lo, double hi) {
  if (bins == 0 || !(hi > lo)) throw InvalidArgument("Histogram: bad range");
  std::vector<size_t> counts(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double v : values) {
    if (v < lo || v > hi) continue;
    auto b = static_cast<size_t>((v - lo) / width);
    counts[std::min(b, bins - 1)] += 1;
  }
  return counts;
}

HomophilyDist ComputeHomophily(const Graph& g) {
  HomophilyDist dist;
  for (size_t v = 0; v < g.num_nodes(); ++v) {
    if (g.Degree(v) == 0) continue;
    dist.nodes.push_back(v);
    dist.values.push_back(NodeHomophily(g, v));
  }
  dist.histogram = Histogram(dist.values, HomophilyDist::kBins, -1.0, 1.0);
  return dist;
}

double Wasserstein1(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("Wasserstein1: sample sizes differ (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  if (a.empty()) return 0.0;
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double total = 0.0;
  for (size_t i = 0; i < sa.size(); ++i) total += std::abs(sa[i] - sb[i]);
  return total / static_cast<double>(sa.size());
}

double HomophilyShift(const HomophilyDist& before, const HomophilyDist& after) {
  if (before.nodes != after.nodes) {
    throw InvalidArgument("HomophilyShift: node populations differ");
  }
  return Wasserstein1(before.values, after.values);
}

std::string HomophilyHistogramCsv(const HomophilyDist& before,
                                  const HomophilyDist& after) {
  std::string out = "bin_lo,bin_hi,before,after\n";
  const size_t bins = HomophilyDist::kBins;
  for (size_t b = 0; b < bins; ++b) {
    const double lo = -1.0 + 2.0 * static_cast<double>(b) / bins;
    const double hi = -1.0 + 2.0 * static_cast<double>(b + 1) / bins;
    out += FormatDouble(lo) + ',' + FormatDouble(hi) + ',' +
           std::to_string(before.histogram.at(b)) + ',' +
           std::to_string(after.histogram.at(b)) + '\n';
  }
  return out;
}

}  // namespace graphleak
