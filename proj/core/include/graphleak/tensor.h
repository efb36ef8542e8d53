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

#ifndef GRAPHLEAK_TENSOR_H_
#define GRAPHLEAK_TENSOR_H_

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace graphleak {

class SeededRng;

// Dense row-major matrix of doubles. Every tensor in the library is rank 2;
// vectors are n x 1 or 1 x n and scalars are 1 x 1.
class Tensor {
 public:
  Tensor() = default;
  Tensor(size_t rows, size_t cols, double fill = 0.0);
  Tensor(size_t rows, size_t cols, std::vector<double> data);

  // Tensor::FromRows({{1, 2}, {3, 4}}). All rows must have the same length.
  static Tensor FromRows(
      std::initializer_list<std::initializer_list<double>> rows);
  static Tensor Scalar(double value) { return Tensor(1, 1, value); }
  static Tensor Identity(size_t n);
  static Tensor Uniform(size_t rows, size_t cols, double lo, double hi,
                        SeededRng& rng);
  // Glorot/Xavier uniform: U(-a, a) with a = sqrt(6 / (fan_in + fan_out)).
  static Tensor GlorotUniform(size_t rows, size_t cols, SeededRng& rng);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  std::array<size_t, 2> shape() const { return {rows_, cols_}; }
  bool SameShape(const Tensor& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  double& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }
  double& operator[](size_t i) { return data_[i]; }
  double operator[](size_t i) const { return data_[i]; }

  std::span<double> Row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> Row(size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  const std::vector<double>& values() const { return data_; }

  // Value of a 1 x 1 tensor.
  double item() const;
  bool AllFinite() const;
  void Fill(double value);

  std::string ShapeString() const;

  friend bool operator==(const Tensor& a, const Tensor& b) = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

// Plain (non-recording) kernels. The autodiff layer builds on these.

// a * b, skipping zero entries of a so sparse feature matrices are cheap.
Tensor MatMul(const Tensor& a, const Tensor& b);
// a^T * b without materializing the transpose; also skips zeros of a.
Tensor MatMulTransposeA(const Tensor& a, const Tensor& b);
// a * b^T.
Tensor MatMulTransposeB(const Tensor& a, const Tensor& b);
Tensor Transpose(const Tensor& a);
Tensor SoftmaxRows(const Tensor& logits);
// Index of the largest entry of each row; ties go to the lowest index.
std::vector<int> ArgmaxRows(const Tensor& x);

// Elementwise helpers.
void AddInPlace(Tensor& dst, const Tensor& src, double scale = 1.0);
double MaxAbsDiff(const Tensor& a, const Tensor& b);

}  // namespace graphleak

#endif  // GRAPHLEAK_TENSOR_H_
