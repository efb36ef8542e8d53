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

#ifndef GRAPHLEAK_TESTS_SUPPORT_GRADIENT_CHECK_H_
#define GRAPHLEAK_TESTS_SUPPORT_GRADIENT_CHECK_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "graphleak/autodiff.h"
#include "graphleak/tensor.h"

namespace graphleak::testing {

// Scalar function of the inputs, recorded on `tape`. It must be a pure
// function of the input values (re-seed any randomness inside).
using TapeFunction =
    std::function<ad::Var(ad::Tape& tape, std::span<const ad::Var> inputs)>;

struct GradCheckResult {
  // Worst over inputs of |g_ad - g_fd|_2 / max(|g_ad|_2, |g_fd|_2).
  double max_relative_error = 0.0;
  double max_abs_error = 0.0;
  size_t evaluations = 0;
};

// Compares reverse-mode gradients with central differences of step h.
// Inputs whose gradients both fall below `zero_floor` in norm count as
// exact.
GradCheckResult CheckGradients(const TapeFunction& f,
                               const std::vector<Tensor>& inputs,
                               double h = 1e-6, double zero_floor = 1e-10);

// One randomized instance of a gradient case.
struct GradInstance {
  TapeFunction f;
  std::vector<Tensor> inputs;
};

struct GradCase {
  std::string name;
  // Composed objectives get a looser tolerance than single primitives.
  bool composed = false;
  std::function<GradInstance(uint64_t seed)> make;
};

// Every differentiable primitive plus the composed poisoning objective
// through each GNN architecture.
const std::vector<GradCase>& GradientCases();

inline constexpr double kPrimitiveTolerance = 1e-4;
inline constexpr double kComposedTolerance = 1e-3;

}  // namespace graphleak::testing

#endif  // GRAPHLEAK_TESTS_SUPPORT_GRADIENT_CHECK_H_
