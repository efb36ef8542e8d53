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

#ifndef GRAPHLEAK_SIMILARITY_H_
#define GRAPHLEAK_SIMILARITY_H_

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

namespace graphleak {

inline constexpr size_t kNumSimilarityFeatures = 12;

// Eight distances between two posterior vectors followed by four
// order-free entropy summaries:
//   cosine, euclidean, sqeuclidean, manhattan, chebyshev, correlation,
//   braycurtis, canberra, min(H), max(H), |H_u - H_v|, mean(H).
using SimilarityFeature = std::array<double, kNumSimilarityFeatures>;

const std::array<std::string_view, kNumSimilarityFeatures>&
SimilarityFeatureNames();

// Shannon entropy in nats; 0 log 0 = 0.
double Entropy(std::span<const double> p);

// Symmetric in its arguments bit-for-bit. Canberra and Bray-Curtis treat
// 0/0 as 0; correlation distance is 1 when either vector is constant.
SimilarityFeature SimilarityFeatures(std::span<const double> p_u,
                                     std::span<const double> p_v);

}  // namespace graphleak

#endif  // GRAPHLEAK_SIMILARITY_H_
