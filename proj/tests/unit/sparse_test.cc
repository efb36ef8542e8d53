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

#include "graphleak/sparse.h"

#include <gtest/gtest.h>

#include "graphleak/error.h"
#include "graphleak/rng.h"

namespace graphleak {
namespace {

TEST(SparseMatrixTest, FromTripletsSortsColumns) {
  SparseMatrix s = SparseMatrix::FromTriplets(
      2, 3, {{1, 2, 5.0}, {0, 1, 2.0}, {1, 0, 3.0}});
  EXPECT_EQ(s.nnz(), 3u);
  EXPECT_EQ(s.Densify(), Tensor::FromRows({{0, 2, 0}, {3, 0, 5}}));
  ASSERT_EQ(s.col_indices().size(), 3u);
  EXPECT_EQ(s.col_indices()[1], 0u);
  EXPECT_EQ(s.col_indices()[2], 2u);
}

TEST(SparseMatrixTest, RejectsDuplicatesAndOutOfRange) {
  EXPECT_THROW(SparseMatrix::FromTriplets(2, 2, {{0, 0, 1}, {0, 0, 2}}),
               InvalidArgument);
  EXPECT_THROW(SparseMatrix::FromTriplets(2, 2, {{2, 0, 1}}), InvalidArgument);
}

TEST(SparseMatrixTest, SpMMMatchesDense) {
  SeededRng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Triplet> t;
    for (size_t r = 0; r < 5; ++r)
      for (size_t c = 0; c < 4; ++c)
        if (rng.Bernoulli(0.4)) t.push_back({r, c, rng.Uniform(-1, 1)});
    SparseMatrix s = SparseMatrix::FromTriplets(5, 4, t);
    Tensor d = Tensor::Uniform(4, 3, -1, 1, rng);
    EXPECT_LT(MaxAbsDiff(SpMM(s, d), MatMul(s.Densify(), d)), 1e-14);
    Tensor e = Tensor::Uniform(5, 2, -1, 1, rng);
    EXPECT_LT(MaxAbsDiff(SpMMTransposed(s, e),
                         MatMul(Transpose(s.Densify()), e)),
              1e-14);
  }
}

TEST(SparseMatrixTest, WithValuesKeepsPattern) {
  SparseMatrix s = SparseMatrix::FromTriplets(2, 2, {{0, 1, 1}, {1, 0, 1}});
  SparseMatrix w = s.WithValues({4, 7});
  EXPECT_EQ(w.Densify(), Tensor::FromRows({{0, 4}, {7, 0}}));
  EXPECT_THROW(s.WithValues({1}), InvalidArgument);
}

}  // namespace
}  // namespace graphleak
