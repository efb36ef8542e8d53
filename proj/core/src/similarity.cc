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

#include "graphleak/similarity.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphleak/error.h"

namespace graphleak {

const std::array<std::string_view, kNumSimilarityFeatures>&
SimilarityFeatureNames() {
  static const std::array<std::string_view, kNumSimilarityFeatures> kNames = {
      "cosine",      "euclidean", "sqeuclidean", "manhattan",
      "chebyshev",   "correlation", "braycurtis", "canberra",
      "entropy_min", "entropy_max", "entropy_absdiff", "entropy_mean"};
  return kNames;
}

double Entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return std::max(h, 0.0);
}

namespace {

double Mean(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x;
  return s / static_cast<double>(a.size());
}

// 1 - <a - shift_a, b - shift_b> / (|a - shift_a| |b - shift_b|).
double OneMinusCosine(std::span<const double> a, std::span<const double> b,
                      double shift_a, double shift_b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double x = a[i] - shift_a, y = b[i] - shift_b;
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  if (na == 0.0 || nb == 0.0) return -1.0;
  return std::max(0.0, 1.0 - dot / (std::sqrt(na) * std::sqrt(nb)));
}

}  // namespace

SimilarityFeature SimilarityFeatures(std::span<const double> p_u,
                                     std::span<const double> p_v) {
  if (p_u.size() != p_v.size() || p_u.empty()) {
    throw InvalidArgument("SimilarityFeatures: length mismatch (" +
                          std::to_string(p_u.size()) + " vs " +
                          std::to_string(p_v.size()) + ")");
  }
  double sq = 0.0, manhattan = 0.0, chebyshev = 0.0, bc_den = 0.0,
         canberra = 0.0;
  for (size_t i = 0; i < p_u.size(); ++i) {
    const double d = std::abs(p_u[i] - p_v[i]);
    sq += d * d;
    manhattan += d;
    chebyshev = std::max(chebyshev, d);
    bc_den += std::abs(p_u[i] + p_v[i]);
    const double c_den = std::abs(p_u[i]) + std::abs(p_v[i]);
    if (c_den > 0.0) canberra += d / c_den;
  }
  double cosine = OneMinusCosine(p_u, p_v, 0.0, 0.0);
  if (cosine < 0.0) {
    // One zero vector: maximally dissimilar unless both are zero.
    cosine = (sq == 0.0) ? 0.0 : 1.0;
  } else if (sq == 0.0) {
    cosine = 0.0;
  }
  double correlation = OneMinusCosine(p_u, p_v, Mean(p_u), Mean(p_v));
  if (correlation < 0.0) {
    correlation = 1.0;
  } else if (sq == 0.0) {
    // Identical vectors; avoid rounding in the normalized dot product.
    cosine = 0.0;
    correlation = 0.0;
  }
  const double braycurtis = bc_den > 0.0 ? manhattan / bc_den : 0.0;

  const double h_u = Entropy(p_u), h_v = Entropy(p_v);
  return {cosine,
          std::sqrt(sq),
          sq,
          manhattan,
          chebyshev,
          correlation,
          braycurtis,
          canberra,
          std::min(h_u, h_v),
          std::max(h_u, h_v),
          std::abs(h_u - h_v),
          0.5 * (h_u + h_v)};
}

}  // namespace graphleak
