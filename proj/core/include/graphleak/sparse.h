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

#ifndef GRAPHLEAK_SPARSE_H_
#define GRAPHLEAK_SPARSE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "graphleak/tensor.h"

namespace graphleak {

struct Triplet {
  size_t row;
  size_t col;
  double value;
};

// Compressed sparse row matrix. Column indices within a row are sorted and
// unique. Used for adjacency and propagation operators.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(size_t rows, size_t cols, std::vector<size_t> row_offsets,
               std::vector<size_t> col_indices, std::vector<double> values);

  // Builds from unordered triplets. Duplicate (row, col) pairs are rejected.
  static SparseMatrix FromTriplets(size_t rows, size_t cols,
                                   std::vector<Triplet> triplets);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t nnz() const { return col_indices_.size(); }

  std::span<const size_t> row_offsets() const { return row_offsets_; }
  std::span<const size_t> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }

  // Same sparsity pattern with new values (length nnz).
  SparseMatrix WithValues(std::vector<double> values) const;

  Tensor Densify() const;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<size_t> row_offsets_{0};
  std::vector<size_t> col_indices_;
  std::vector<double> values_;
};

// s * d.
Tensor SpMM(const SparseMatrix& s, const Tensor& d);
// s^T * d, computed by scattering rows of d.
Tensor SpMMTransposed(const SparseMatrix& s, const Tensor& d);

}  // namespace graphleak

#endif  // GRAPHLEAK_SPARSE_H_
