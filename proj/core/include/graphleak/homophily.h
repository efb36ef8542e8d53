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

#ifndef GRAPHLEAK_HOMOPHILY_H_
#define GRAPHLEAK_HOMOPHILY_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "graphleak/graph.h"

namespace graphleak {

// Cosine between x_v and the mean feature vector of v's neighbors; 0 when
// either vector is zero. Throws InvalidArgument for isolated nodes.
double NodeHomophily(const Graph& g, size_t v);

struct HomophilyDist {
  static constexpr size_t kBins = 50;

  // Nodes with at least one neighbor, ascending, and their homophily values.
  std::vector<size_t> nodes;
  std::vector<double> values;
  // Counts over kBins equal bins of [-1, 1]; the last bin is closed.
  std::vector<size_t> histogram;
};

HomophilyDist ComputeHomophily(const Graph& g);

std::vector<size_t> Histogram(std::span<const double> values, size_t bins,
                              double lo, double hi);

// 1-D Wasserstein-1 distance between equal-size samples: the mean absolute
// difference of the sorted values.
double Wasserstein1(std::span<const double> a, std::span<const double> b);

// W1 between two distributions over the same node population.
double HomophilyShift(const HomophilyDist& before, const HomophilyDist& after);

// bin_lo,bin_hi,before,after
std::string HomophilyHistogramCsv(const HomophilyDist& before,
                                  const HomophilyDist& after);

}  // namespace graphleak

#endif  // GRAPHLEAK_HOMOPHILY_H_
