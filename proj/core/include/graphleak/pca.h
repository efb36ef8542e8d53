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

#ifndef GRAPHLEAK_PCA_H_
#define GRAPHLEAK_PCA_H_

#include <array>
#include <span>
#include <string>

#include "graphleak/tensor.h"

namespace graphleak {

struct PcaResult {
  Tensor projection;  // m x 2
  Tensor components;  // d x 2, unit columns
  std::array<double, 2> eigenvalues{};  // sample covariance, descending
};

struct PcaOptions {
  double tolerance = 1e-10;
  int max_iterations = 1000;
};

// Top-2 principal components by power iteration with deflation. Each
// component's first nonzero loading is positive. Throws InvalidArgument for
// fewer than two rows and NumericalError when an eigenpair does not converge.
PcaResult Pca2d(const Tensor& rows, const PcaOptions& options = {});

// x,y[,label] per row.
std::string ProjectionCsv(const Tensor& projection,
                          std::span<const int> labels = {});

}  // namespace graphleak

#endif  // GRAPHLEAK_PCA_H_
