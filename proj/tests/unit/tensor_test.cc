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

#include "graphleak/tensor.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "graphleak/error.h"
#include "graphleak/rng.h"

namespace graphleak {
namespace {

// Textbook triple loop, used as the oracle for the kernels.
Tensor NaiveMatMul(const Tensor& a, const Tensor& b) {
  Tensor out(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j)
      for (size_t k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
  return out;
}

TEST(TensorTest, FromRowsAndShape) {
  Tensor t = Tensor::FromRows({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(t.rows(), 2u);
  EXPECT_EQ(t.cols(), 3u);
  EXPECT_EQ(t(1, 2), 6.0);
  EXPECT_EQ(t.ShapeString(), "[2x3]");
  EXPECT_THROW(Tensor::FromRows({{1, 2}, {3}}), InvalidArgument);
  EXPECT_THROW(t.item(), InvalidArgument);
  EXPECT_EQ(Tensor::Scalar(2.5).item(), 2.5);
}

TEST(TensorTest, MatMulKnownValues) {
  Tensor a = Tensor::FromRows({{1, 2}, {3, 4}});
  Tensor b = Tensor::FromRows({{5, 6}, {7, 8}});
  EXPECT_EQ(MatMul(a, b), Tensor::FromRows({{19, 22}, {43, 50}}));
  EXPECT_THROW(MatMul(a, Tensor(3, 1)), InvalidArgument);
}

TEST(TensorTest, KernelsMatchNaiveOracle) {
  SeededRng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t m = 1 + rng.UniformIndex(6), k = 1 + rng.UniformIndex(6),
                 n = 1 + rng.UniformIndex(6);
    Tensor a = Tensor::Uniform(m, k, -1, 1, rng);
    // Sparse-ish rows exercise the zero skipping.
    for (double& x : a.data()) if (rng.Bernoulli(0.3)) x = 0.0;
    Tensor b = Tensor::Uniform(k, n, -1, 1, rng);
    const Tensor ref = NaiveMatMul(a, b);
    EXPECT_LT(MaxAbsDiff(MatMul(a, b), ref), 1e-12);
    Tensor at = Transpose(a);
    EXPECT_LT(MaxAbsDiff(MatMulTransposeA(at, b), ref), 1e-12);
    Tensor bt = Transpose(b);
    EXPECT_LT(MaxAbsDiff(MatMulTransposeB(a, bt), ref), 1e-12);
  }
}

TEST(TensorTest, SoftmaxRowsSumToOneAndStable) {
  Tensor logits = Tensor::FromRows({{1000, 1000, 1000}, {0, std::log(2.0), 0}});
  Tensor p = SoftmaxRows(logits);
  for (size_t j = 0; j < 3; ++j) EXPECT_NEAR(p(0, j), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p(1, 1), 0.5, 1e-15);
  EXPECT_NEAR(p(1, 0), 0.25, 1e-15);
}

TEST(TensorTest, ArgmaxTiesGoLow) {
  Tensor x = Tensor::FromRows({{1, 3, 3}, {2, 1, 0}, {5, 5, 5}});
  EXPECT_EQ(ArgmaxRows(x), (std::vector<int>{1, 0, 0}));
}

TEST(TensorTest, GlorotBounds) {
  SeededRng rng(1);
  Tensor w = Tensor::GlorotUniform(10, 20, rng);
  const double a = std::sqrt(6.0 / 30.0);
  for (double x : w.data()) {
    EXPECT_GE(x, -a);
    EXPECT_LE(x, a);
  }
}

TEST(TensorTest, AllFiniteAndAddInPlace) {
  Tensor t(2, 2, 1.0);
  EXPECT_TRUE(t.AllFinite());
  AddInPlace(t, Tensor(2, 2, 2.0), 0.5);
  EXPECT_EQ(t, Tensor(2, 2, 2.0));
  t(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(t.AllFinite());
  EXPECT_EQ(Transpose(Tensor::Identity(3)), Tensor::Identity(3));
}

}  // namespace
}  // namespace graphleak
