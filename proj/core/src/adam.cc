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

#include "graphleak/adam.h"

#include <cmath>
#include <string>

#include "graphleak/error.h"

namespace graphleak {

void AdamStep(std::span<Tensor* const> params, std::span<const Tensor> grads,
              AdamState& state) {
  if (params.size() != grads.size()) {
    throw InvalidArgument("AdamStep: " + std::to_string(params.size()) +
                          " params but " + std::to_string(grads.size()) +
                          " gradients");
  }
  if (state.m.empty()) {
    for (const Tensor* p : params) {
      state.m.emplace_back(p->rows(), p->cols());
      state.v.emplace_back(p->rows(), p->cols());
    }
  }
  if (state.m.size() != params.size()) {
    throw InvalidArgument("AdamStep: parameter count changed between steps");
  }
  for (size_t i = 0; i < params.size(); ++i) {
    if (!params[i]->SameShape(grads[i]) || !params[i]->SameShape(state.m[i])) {
      throw InvalidArgument("AdamStep: shape mismatch for parameter " +
                            std::to_string(i));
    }
  }
  const AdamOptions& o = state.options;
  ++state.step_count;
  const double t = static_cast<double>(state.step_count);
  const double c1 = 1.0 - std::pow(o.beta1, t);
  const double c2 = 1.0 - std::pow(o.beta2, t);
  for (size_t i = 0; i < params.size(); ++i) {
    auto p = params[i]->data();
    auto g = grads[i].data();
    auto m = state.m[i].data();
    auto v = state.v[i].data();
    for (size_t j = 0; j < p.size(); ++j) {
      const double gj = g[j] + o.weight_decay * p[j];
      m[j] = o.beta1 * m[j] + (1.0 - o.beta1) * gj;
      v[j] = o.beta2 * v[j] + (1.0 - o.beta2) * gj * gj;
      const double mhat = m[j] / c1;
      const double vhat = v[j] / c2;
      p[j] -= o.lr * mhat / (std::sqrt(vhat) + o.eps);
    }
  }
}

}  // namespace graphleak
