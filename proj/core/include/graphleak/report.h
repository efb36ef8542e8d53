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

#ifndef GRAPHLEAK_REPORT_H_
#define GRAPHLEAK_REPORT_H_

namespace graphleak {

struct StealthinessThresholds {
  double max_acc_delta = 0.03;
  double max_homophily_shift = 0.05;

  friend bool operator==(const StealthinessThresholds&,
                         const StealthinessThresholds&) = default;
};

struct StealthinessReport {
  double acc_clean = 0.0;
  double acc_poisoned = 0.0;
  // acc_poisoned - acc_clean.
  double acc_delta = 0.0;
  double homophily_shift = 0.0;
  StealthinessThresholds thresholds;
  bool flagged = false;

  friend bool operator==(const StealthinessReport&,
                         const StealthinessReport&) = default;
};

// Throws InvalidArgument for accuracies outside [0, 1] or a negative shift.
StealthinessReport MakeStealthinessReport(
    double acc_clean, double acc_poisoned, double homophily_shift,
    const StealthinessThresholds& thresholds = {});

}  // namespace graphleak

#endif  // GRAPHLEAK_REPORT_H_
