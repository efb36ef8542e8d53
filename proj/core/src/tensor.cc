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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "graphleak/error.h"
#include "graphleak/rng.h"

namespace graphleak {

Tensor::Tensor(size_t rows, size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Tensor::Tensor(size_t rows, size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw InvalidArgument("Tensor: data length " +
                          std::to_string(data_.size()) + " does not match " +
                          std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Tensor Tensor::FromRows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const size_t r = rows.size();
  const size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw InvalidArgument("Tensor::FromRows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Tensor(r, c, std::move(data));
}

Tensor Tensor::Identity(size_t n) {
  Tensor t(n, n);
  for (size_t i = 0; i < n; ++i) t(i, i) = 1.0;
  return t;
}

Tensor Tensor::Uniform(size_t rows, size_t cols, double lo, double hi,
                       SeededRng& rng) {
  Tensor t(rows, cols);
  for (double& v : t.data_) v = rng.Uniform(lo, hi);
  return t;
}

Tensor Tensor::GlorotUniform(size_t rows, size_t cols, SeededRng& rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(rows + cols));
  return Uniform(rows, cols, -a, a, rng);
}

double Tensor::item() const {
  if (data_.size() != 1) {
    throw InvalidArgument("Tensor::item on non-scalar " + ShapeString());
  }
  return data_[0];
}

bool Tensor::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

void Tensor::Fill(double value) { std::fill(data_.begin(), data_.end(), value); }

std::string Tensor::ShapeString() const {
  std::ostringstream os;
  os << "[" << rows_ << "x" << cols_ << "]";
  return os.str();
}

Tensor MatMul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) {
    throw InvalidArgument("MatMul: " + a.ShapeString() + " x " +
                          b.ShapeString());
  }
  const size_t m = a.rows(), k = a.cols(), n = b.cols();
  Tensor out(m, n);
  for (size_t i = 0; i < m; ++i) {
    double* orow = out.Row(i).data();
    const double* arow = a.Row(i).data();
    for (size_t p = 0; p < k; ++p) {
      const double av = arow[p];
      if (av == 0.0) continue;
      const double* brow = b.Row(p).data();
      for (size_t j = 0; j < n; ++j) orow[j] += av * brow[j];
    }
  }
  return out;
}

Tensor MatMulTransposeA(const Tensor& a, const Tensor& b) {
  if (a.rows() != b.rows()) {
    throw InvalidArgument("MatMulTransposeA: " + a.ShapeString() + "^T x " +
                          b.ShapeString());
  }
  const size_t m = a.rows(), k = a.cols(), n = b.cols();
  Tensor out(k, n);
  for (size_t i = 0; i < m; ++i) {
    const double* arow = a.Row(i).data();
    const double* brow = b.Row(i).data();
    for (size_t p = 0; p < k; ++p) {
      const double av = arow[p];
      if (av == 0.0) continue;
      double* orow = out.Row(p).data();
      for (size_t j = 0; j < n; ++j) orow[j] += av * brow[j];
    }
  }
  return out;
}

Tensor MatMulTransposeB(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.cols()) {
    throw InvalidArgument("MatMulTransposeB: " + a.ShapeString() + " x " +
                          b.ShapeString() + "^T");
  }
  const size_t m = a.rows(), k = a.cols(), n = b.rows();
  Tensor out(m, n);
  for (size_t i = 0; i < m; ++i) {
    const double* arow = a.Row(i).data();
    double* orow = out.Row(i).data();
    for (size_t j = 0; j < n; ++j) {
      const double* brow = b.Row(j).data();
      double acc = 0.0;
      for (size_t p = 0; p < k; ++p) acc += arow[p] * brow[p];
      orow[j] = acc;
    }
  }
  return out;
}

Tensor Transpose(const Tensor& a) {
  Tensor out(a.cols(), a.rows());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

Tensor SoftmaxRows(const Tensor& logits) {
  if (logits.cols() == 0) throw InvalidArgument("SoftmaxRows: zero columns");
  Tensor out(logits.rows(), logits.cols());
  for (size_t i = 0; i < logits.rows(); ++i) {
    auto in = logits.Row(i);
    auto o = out.Row(i);
    const double mx = *std::max_element(in.begin(), in.end());
    double total = 0.0;
    for (size_t j = 0; j < in.size(); ++j) {
      o[j] = std::exp(in[j] - mx);
      total += o[j];
    }
    for (double& v : o) v /= total;
  }
  return out;
}

std::vector<int> ArgmaxRows(const Tensor& x) {
  std::vector<int> out(x.rows(), 0);
  for (size_t i = 0; i < x.rows(); ++i) {
    auto row = x.Row(i);
    size_t best = 0;
    for (size_t j = 1; j < row.size(); ++j) {
      if (row[j] > row[best]) best = j;
    }
    out[i] = static_cast<int>(best);
  }
  return out;
}

void AddInPlace(Tensor& dst, const Tensor& src, double scale) {
  if (!dst.SameShape(src)) {
    throw InvalidArgument("AddInPlace: " + dst.ShapeString() + " vs " +
                          src.ShapeString());
  }
  auto d = dst.data();
  auto s = src.data();
  for (size_t i = 0; i < d.size(); ++i) d[i] += scale * s[i];
}

double MaxAbsDiff(const Tensor& a, const Tensor& b) {
  if (!a.SameShape(b)) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace graphleak
