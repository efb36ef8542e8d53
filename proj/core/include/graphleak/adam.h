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

#ifndef GRAPHLEAK_ADAM_H_
#define GRAPHLEAK_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "graphleak/tensor.h"

namespace graphleak {

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  // L2 penalty added to the gradient (coupled weight decay).
  double weight_decay = 0.0;
};

// Moment estimates for one parameter list. Shapes are fixed by the first
// step; later steps must pass parameters of identical shapes.
struct AdamState {
  AdamOptions options;
  int64_t step_count = 0;
  std::vector<Tensor> m;
  std::vector<Tensor> v;

  explicit AdamState(AdamOptions opts = {}) : options(opts) {}
};

// One bias-corrected Adam update of `params` in place.
void AdamStep(std::span<Tensor* const> params, std::span<const Tensor> grads,
              AdamState& state);

}  // namespace graphleak

#endif  // GRAPHLEAK_ADAM_H_
