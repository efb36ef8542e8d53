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

#include "graphleak/report.h"

#include <cmath>

#include "graphleak/error.h"

namespace graphleak {

StealthinessReport MakeStealthinessReport(
    double acc_clean, double acc_poisoned, double homophily_shift,
    const StealthinessThresholds& thresholds) {
  auto in_unit = [](double a) { return a >= 0.0 && a <= 1.0; };
  if (!in_unit(acc_clean) || !in_unit(acc_poisoned)) {
    throw InvalidArgument("MakeStealthinessReport: accuracy outside [0, 1]");
  }
  if (!(homophily_shift >= 0.0)) {
    throw InvalidArgument("MakeStealthinessReport: negative homophily shift");
  }
  StealthinessReport r;
  r.acc_clean = acc_clean;
  r.acc_poisoned = acc_poisoned;
  r.acc_delta = acc_poisoned - acc_clean;
  r.homophily_shift = homophily_shift;
  r.thresholds = thresholds;
  r.flagged = std::abs(r.acc_delta) > thresholds.max_acc_delta ||
              homophily_shift > thresholds.max_homophily_shift;
  return r;
}

}  // namespace graphleak
