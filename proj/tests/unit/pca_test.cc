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

#include "graphleak/pca.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "graphleak/error.h"
#include "graphleak/rng.h"

namespace graphleak {
namespace {

Tensor Covariance(const Tensor& x) {
  const size_t m = x.rows(), d = x.cols();
  std::vector<double> mean(d, 0.0);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < d; ++j) mean[j] += x(i, j) / static_cast<double>(m);
  Tensor c(d, d);
  for (size_t i = 0; i < m; ++i)
    for (size_t a = 0; a < d; ++a)
      for (size_t b = 0; b < d; ++b)
        c(a, b) += (x(i, a) - mean[a]) * (x(i, b) - mean[b]) / static_cast<double>(m - 1);
  return c;
}

// Cyclic Jacobi rotations; eigenvalues descending.
std::vector<double> JacobiEigenvalues(Tensor a) {
  const size_t n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = 0.5 * std::atan2(2 * a(p, q), a(q, q) - a(p, p));
        const double c = std::cos(theta), s = std::sin(theta);
        for (size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

// det(C - lambda I) by Gaussian elimination with partial pivoting.
double CharPoly(Tensor c, double lambda) {
  const size_t n = c.rows();
  for (size_t i = 0; i < n; ++i) c(i, i) -= lambda;
  double det = 1.0;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    for (size_t i = k + 1; i < n; ++i)
      if (std::abs(c(i, k)) > std::abs(c(piv, k))) piv = i;
    if (c(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (size_t j = 0; j < n; ++j) std::swap(c(k, j), c(piv, j));
      det = -det;
    }
    det *= c(k, k);
    for (size_t i = k + 1; i < n; ++i) {
      const double f = c(i, k) / c(k, k);
      for (size_t j = k; j < n; ++j) c(i, j) -= f * c(k, j);
    }
  }
  return det;
}

TEST(PcaTest, PointsOnALine) {
  Tensor x(20, 3);
  for (size_t i = 0; i < 20; ++i) {
    const double t = static_cast<double>(i) - 7.5;
    x(i, 0) = 2 * t;
    x(i, 1) = -t;
    x(i, 2) = 0.5 * t + 1;
  }
  const PcaResult r = Pca2d(x);
  EXPECT_NEAR(r.eigenvalues[1], 0.0, 1e-9 * r.eigenvalues[0]);
  double var2 = 0.0;
  for (size_t i = 0; i < 20; ++i) var2 += r.projection(i, 1) * r.projection(i, 1);
  EXPECT_NEAR(var2, 0.0, 1e-8);
}

TEST(PcaTest, RecoversAxes) {
  SeededRng rng(1);
  Tensor x(200, 2);
  for (size_t i = 0; i < 200; ++i) {
    x(i, 0) = 3.0 * rng.Normal();
    x(i, 1) = 0.5 * rng.Normal();
  }
  const PcaResult r = Pca2d(x);
  EXPECT_NEAR(std::abs(r.components(0, 0)), 1.0, 1e-3);
  EXPECT_NEAR(std::abs(r.components(1, 1)), 1.0, 1e-3);
  // Sign convention: first nonzero loading positive.
  for (size_t c = 0; c < 2; ++c) {
    size_t j = 0;
    while (j < 2 && r.components(j, c) == 0.0) ++j;
    ASSERT_LT(j, 2u);
    EXPECT_GT(r.components(j, c), 0.0);
  }
}

TEST(PcaTest, MatchesDenseEigenOracle) {
  SeededRng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    Tensor x(50, 5);
    for (size_t i = 0; i < 50; ++i)
      for (size_t j = 0; j < 5; ++j) x(i, j) = rng.Normal() * static_cast<double>(j + 1);
    const PcaResult r = Pca2d(x);
    const Tensor cov = Covariance(x);
    const auto ev = JacobiEigenvalues(cov);
    EXPECT_NEAR(r.eigenvalues[0], ev[0], 1e-8 * ev[0]);
    EXPECT_NEAR(r.eigenvalues[1], ev[1], 1e-8 * ev[0]);
    // Both are roots of the characteristic polynomial.
    const double scale = std::pow(ev[0], 5);
    EXPECT_LT(std::abs(CharPoly(cov, r.eigenvalues[0])), 1e-7 * scale);
    EXPECT_LT(std::abs(CharPoly(cov, r.eigenvalues[1])), 1e-7 * scale);
    // Projection covariance is diag(eigenvalues).
    const Tensor pc = Covariance(r.projection);
    EXPECT_NEAR(pc(0, 0), ev[0], 1e-8 * ev[0]);
    EXPECT_NEAR(pc(1, 1), ev[1], 1e-8 * ev[0]);
    EXPECT_NEAR(pc(0, 1), 0.0, 1e-8 * ev[0]);
  }
}

TEST(PcaTest, RotationInvariantEigenvalues) {
  SeededRng rng(3);
  Tensor x(80, 2);
  for (size_t i = 0; i < 80; ++i) {
    x(i, 0) = 2 * rng.Normal();
    x(i, 1) = rng.Normal();
  }
  const double a = std::numbers::pi / 5;
  Tensor rot = Tensor::FromRows({{std::cos(a), -std::sin(a)}, {std::sin(a), std::cos(a)}});
  const PcaResult r1 = Pca2d(x), r2 = Pca2d(MatMul(x, rot));
  EXPECT_NEAR(r1.eigenvalues[0], r2.eigenvalues[0], 1e-9);
  EXPECT_NEAR(r1.eigenvalues[1], r2.eigenvalues[1], 1e-9);
}

TEST(PcaTest, ErrorsAndCsv) {
  EXPECT_THROW(Pca2d(Tensor(1, 3)), InvalidArgument);
  const Tensor p = Tensor::FromRows({{1, 2}, {3, 4}});
  EXPECT_EQ(ProjectionCsv(p), "x,y\n1,2\n3,4\n");
  EXPECT_EQ(ProjectionCsv(p, std::vector<int>{1, 0}), "x,y,label\n1,2,1\n3,4,0\n");
}

}  // namespace
}  // namespace graphleak
