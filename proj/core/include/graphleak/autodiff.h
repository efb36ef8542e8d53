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

#ifndef GRAPHLEAK_AUTODIFF_H_
#define GRAPHLEAK_AUTODIFF_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "graphleak/sparse.h"
#include "graphleak/tensor.h"

namespace graphleak {

class SeededRng;

namespace ad {

class Tape;

namespace internal {

struct Node {
  Tensor value;
  Tensor grad;
  bool requires_grad = false;
  // Adds this node's contribution to its parents' gradients, given the
  // gradient accumulated in `grad`.
  std::function<void(const Tensor& grad_out)> backward;
};

}  // namespace internal

class Var;

// Implementation hooks shared by the primitives in autodiff.cc.
Var MakeResult(Tensor value, std::initializer_list<const Var*> inputs,
               std::function<void(const Tensor&)> backward);
std::shared_ptr<internal::Node> NodeOf(const Var& v);

// Handle to a value in a computation. Variables created by a Tape (or derived
// from one) record their producing operation so Tape::Backward can
// propagate gradients; constants record nothing.
class Var {
 public:
  Var() = default;

  const Tensor& value() const { return node_->value; }
  // Gradient of the last Backward call. Zero-filled for variables that did not
  // contribute to the loss.
  const Tensor& grad() const { return node_->grad; }
  bool requires_grad() const { return node_ && node_->requires_grad; }
  Tape* tape() const { return tape_; }
  size_t rows() const { return node_->value.rows(); }
  size_t cols() const { return node_->value.cols(); }
  bool valid() const { return node_ != nullptr; }

 private:
  friend class Tape;
  friend Var MakeResult(Tensor value, std::initializer_list<const Var*> inputs,
                        std::function<void(const Tensor&)> backward);
  friend std::shared_ptr<internal::Node> NodeOf(const Var& v);

  std::shared_ptr<internal::Node> node_;
  Tape* tape_ = nullptr;
};

// Ordered record of operations for reverse-mode differentiation. One tape
// per forward/backward pass; it is not thread-safe. Recorded operations keep
// references to any SparseMatrix operands, which must outlive Backward.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Leaf that receives a gradient.
  Var Variable(Tensor value);
  // Leaf that never receives a gradient. Usable with any tape.
  static Var Constant(Tensor value);

  // Propagates d(loss)/d(x) to every recorded variable. The loss must be a
  // 1x1 value recorded on this tape. Calling Backward again without
  // recording new operations is an error.
  void Backward(const Var& loss);

  size_t size() const { return nodes_.size(); }

 private:
  friend Var MakeResult(Tensor value, std::initializer_list<const Var*> inputs,
                        std::function<void(const Tensor&)> backward);

  std::vector<std::shared_ptr<internal::Node>> nodes_;
  bool consumed_ = false;
};

enum class ActivationKind { kRelu, kElu, kLeakyRelu, kExp, kLog, kTanh };

struct Activation {
  ActivationKind kind = ActivationKind::kRelu;
  // Negative-side slope for kLeakyRelu.
  double slope = 0.2;

  static Activation Relu() { return {ActivationKind::kRelu, 0.0}; }
  static Activation Elu() { return {ActivationKind::kElu, 0.0}; }
  static Activation LeakyRelu(double slope = 0.2) {
    return {ActivationKind::kLeakyRelu, slope};
  }
  static Activation Exp() { return {ActivationKind::kExp, 0.0}; }
  static Activation Log() { return {ActivationKind::kLog, 0.0}; }
  static Activation Tanh() { return {ActivationKind::kTanh, 0.0}; }
};

// Lower bound applied to probabilities before taking a logarithm.
inline constexpr double kProbabilityFloor = 1e-12;

// --- dense algebra ---
Var MatMul(const Var& a, const Var& b);
Var Add(const Var& a, const Var& b);
Var Sub(const Var& a, const Var& b);
Var Mul(const Var& a, const Var& b);
// x (m x n) plus a 1 x n row vector broadcast over rows.
Var AddRowVector(const Var& x, const Var& row);
Var Scale(const Var& x, double factor);
Var AddScalar(const Var& x, double c);
Var Sum(const Var& x);
Var RowSum(const Var& x);
// Averages consecutive blocks of `group` rows: (B*group) x n -> B x n.
Var MeanRowGroups(const Var& x, size_t group);
Var GatherRows(const Var& x, std::span<const size_t> index);
Var SliceCols(const Var& x, size_t begin, size_t end);
Var ConcatCols(std::span<const Var> parts);

// --- nonlinearities and losses ---
Var Apply(const Var& x, Activation activation);
Var SoftmaxRows(const Var& logits);
// Mean over masked rows of -log(max(probs[i, labels[i]], kProbabilityFloor)).
Var CrossEntropy(const Var& probs, std::span<const int> labels,
                 const std::vector<bool>& mask);
// Cosine similarity of matching rows: m x n, m x n -> m x 1.
Var RowCosine(const Var& a, const Var& b);
// Inverted dropout with keep probability 1 - p.
Var Dropout(const Var& x, double p, SeededRng& rng);

// --- sparse and graph attention ---
// s * d with fixed matrix values.
Var SpMM(const SparseMatrix& s, const Var& d);
// pattern(values) * d where `values` (nnz x 1) is differentiable.
Var SpMM(const SparseMatrix& pattern, const Var& values, const Var& d);
// Softmax of `scores` (nnz x 1) within each CSR row of `pattern`.
Var SegmentSoftmax(const Var& scores, const SparseMatrix& pattern);
// z is n x (H*F), a is H x F; returns n x H with out[i,h] = <z[i,hF:(h+1)F], a[h]>.
Var HeadScores(const Var& z, const Var& a);

// --- self-attention building blocks ---
// x is B x F, emb and bias are F x D; returns (B*F) x D with
// row b*F+i equal to x[b,i] * emb[i] + bias[i].
Var FeatureTokens(const Var& x, const Var& emb, const Var& bias);
// Scaled dot-product attention over groups of `group` consecutive rows, with
// `heads` heads splitting the columns. q, k, v are (B*group) x D.
Var MultiHeadSelfAttention(const Var& q, const Var& k, const Var& v,
                           size_t group, size_t heads);

}  // namespace ad
}  // namespace graphleak

#endif  // GRAPHLEAK_AUTODIFF_H_
