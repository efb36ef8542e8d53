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

#include <gtest/gtest.h>

#include "graphleak/error.h"

namespace graphleak {
namespace {

TEST(StealthinessReportTest, Flags) {
  const StealthinessReport same = MakeStealthinessReport(0.8, 0.8, 0.0);
  EXPECT_EQ(same.acc_delta, 0.0);
  EXPECT_FALSE(same.flagged);
  EXPECT_TRUE(MakeStealthinessReport(0.8, 0.7, 0.0).flagged);
  EXPECT_NEAR(MakeStealthinessReport(0.8, 0.7, 0.0).acc_delta, -0.1, 1e-15);
  EXPECT_TRUE(MakeStealthinessReport(0.8, 0.8, 0.06).flagged);
  EXPECT_FALSE(MakeStealthinessReport(0.8, 0.82, 0.04).flagged);
  EXPECT_FALSE(MakeStealthinessReport(0.8, 0.7, 0.0, {0.2, 0.05}).flagged);
}

TEST(StealthinessReportTest, Validation) {
  EXPECT_THROW(MakeStealthinessReport(1.2, 0.8, 0.0), InvalidArgument);
  EXPECT_THROW(MakeStealthinessReport(0.8, -0.1, 0.0), InvalidArgument);
  EXPECT_THROW(MakeStealthinessReport(0.8, 0.8, -1.0), InvalidArgument);
}

}  // namespace
}  // namespace graphleak
