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
#include <string>
#include <utility>
#include <vector>

#include "graphleak/csv_util.h"
#include "graphleak/error.h"

namespace graphleak {

namespace {

double Norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> Apply(const Tensor& c, const std::vector<double>& v) {
  std::vector<double> out(v.size(), 0.0);
  for (size_t i = 0; i < c.rows(); ++i) {
    double s = 0.0;
    for (size_t j = 0; j < c.cols(); ++j) s += c(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

// Dominant eigenpair of a symmetric PSD matrix.
std::pair<double, std::vector<double>> PowerIterate(const Tensor& c,
                                                    const PcaOptions& opt,
                                                    int component) {
  const size_t d = c.rows();
  // Deterministic start that is unlikely to be orthogonal to anything.
  std::vector<double> v(d);
  for (size_t i = 0; i < d; ++i) v[i] = 1.0 + 0.37 * std::sin(1.0 + 2.0 * i);
  double scale = 0.0;
  for (size_t i = 0; i < d; ++i) scale = std::max(scale, std::abs(c(i, i)));
  const double nv = Norm(v);
  for (double& x : v) x /= nv;
  for (int it = 0; it < opt.max_iterations; ++it) {
    std::vector<double> w = Apply(c, v);
    const double nw = Norm(w);
    if (nw <= opt.tolerance * std::max(scale, 1e-300)) {
      // Null direction: the remaining spectrum is zero.
      return {0.0, v};
    }
    for (double& x : w) x /= nw;
    const std::vector<double> cw = Apply(c, w);
    double lambda = 0.0;
    for (size_t i = 0; i < d; ++i) lambda += w[i] * cw[i];
    double residual = 0.0;
    for (size_t i = 0; i < d; ++i) {
      residual = std::max(residual, std::abs(cw[i] - lambda * w[i]));
    }
    v = std::move(w);
    if (residual <= opt.tolerance * std::max(1.0, std::abs(lambda))) {
      return {lambda, v};
    }
  }
  throw NumericalError("Pca2d: component " + std::to_string(component) +
                       " did not converge in " +
                       std::to_string(opt.max_iterations) + " iterations");
}

}  // namespace

PcaResult Pca2d(const Tensor& rows, const PcaOptions& options) {
  const size_t m = rows.rows(), d = rows.cols();
  if (m < 2) throw InvalidArgument("Pca2d: need at least two rows");
  if (d == 0) throw InvalidArgument("Pca2d: rows have no columns");
  Tensor centered = rows;
  for (size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (size_t i = 0; i < m; ++i) mean += rows(i, j);
    mean /= static_cast<double>(m);
    for (size_t i = 0; i < m; ++i) centered(i, j) -= mean;
  }
  Tensor cov = MatMulTransposeA(centered, centered);
  for (double& x : cov.data()) x /= static_cast<double>(m - 1);

  PcaResult result;
  result.components = Tensor(d, 2);
  for (int k = 0; k < 2; ++k) {
    if (static_cast<size_t>(k) >= d) break;
    auto [lambda, v] = PowerIterate(cov, options, k);
    // Keep components orthonormal; a null direction from PowerIterate is
    // otherwise just the start vector.
    for (int prev = 0; prev < k; ++prev) {
      double dot = 0.0;
      for (size_t i = 0; i < d; ++i) dot += v[i] * result.components(i, static_cast<size_t>(prev));
      for (size_t i = 0; i < d; ++i) v[i] -= dot * result.components(i, static_cast<size_t>(prev));
    }
    const double nv = Norm(v);
    if (nv < 1e-12) {
      throw NumericalError("Pca2d: component " + std::to_string(k) + " collapsed");
    }
    for (double& x : v) x /= nv;
    for (double x : v) {
      if (std::abs(x) > 1e-12) {
        if (x < 0.0) {
          for (double& y : v) y = -y;
        }
        break;
      }
    }
    result.eigenvalues[static_cast<size_t>(k)] = std::max(lambda, 0.0);
    for (size_t i = 0; i < d; ++i) {
      result.components(i, static_cast<size_t>(k)) = v[i];
      for (size_t j = 0; j < d; ++j) cov(i, j) -= lambda * v[i] * v[j];
    }
  }
  result.projection = MatMul(centered, result.components);
  return result;
}

std::string ProjectionCsv(const Tensor& projection, std::span<const int> labels) {
  const bool with_labels = !labels.empty();
  if (with_labels && labels.size() != projection.rows()) {
    throw InvalidArgument("ProjectionCsv: label count mismatch");
  }
  std::string out = with_labels ? "x,y,label\n" : "x,y\n";
  for (size_t i = 0; i < projection.rows(); ++i) {
    out += FormatDouble(projection(i, 0)) + ',' + FormatDouble(projection(i, 1));
    if (with_labels) out += ',' + std::to_string(labels[i]);
    out += '\n';
  }
  return out;
}

}  // namespace graphleak
