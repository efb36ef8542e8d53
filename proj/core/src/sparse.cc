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

#include <algorithm>
#include <string>

#include "graphleak/error.h"

namespace graphleak {

SparseMatrix::SparseMatrix(size_t rows, size_t cols,
                           std::vector<size_t> row_offsets,
                           std::vector<size_t> col_indices,
                           std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (row_offsets_.size() != rows_ + 1 || row_offsets_.front() != 0 ||
      row_offsets_.back() != col_indices_.size() ||
      values_.size() != col_indices_.size()) {
    throw InvalidArgument("SparseMatrix: inconsistent CSR arrays");
  }
  for (size_t r = 0; r < rows_; ++r) {
    if (row_offsets_[r] > row_offsets_[r + 1]) {
      throw InvalidArgument("SparseMatrix: row_offsets not nondecreasing");
    }
    for (size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      if (col_indices_[k] >= cols_) {
        throw InvalidArgument("SparseMatrix: column index out of range");
      }
      if (k > row_offsets_[r] && col_indices_[k] <= col_indices_[k - 1]) {
        throw InvalidArgument(
            "SparseMatrix: columns must be sorted and unique within a row");
      }
    }
  }
}

SparseMatrix SparseMatrix::FromTriplets(size_t rows, size_t cols,
                                        std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  std::vector<size_t> offsets(rows + 1, 0);
  std::vector<size_t> cols_idx;
  std::vector<double> vals;
  cols_idx.reserve(triplets.size());
  vals.reserve(triplets.size());
  for (size_t i = 0; i < triplets.size(); ++i) {
    const Triplet& t = triplets[i];
    if (t.row >= rows || t.col >= cols) {
      throw InvalidArgument("SparseMatrix::FromTriplets: (" +
                            std::to_string(t.row) + "," +
                            std::to_string(t.col) + ") out of range");
    }
    if (i > 0 && triplets[i - 1].row == t.row && triplets[i - 1].col == t.col) {
      throw InvalidArgument("SparseMatrix::FromTriplets: duplicate entry (" +
                            std::to_string(t.row) + "," +
                            std::to_string(t.col) + ")");
    }
    ++offsets[t.row + 1];
    cols_idx.push_back(t.col);
    vals.push_back(t.value);
  }
  for (size_t r = 0; r < rows; ++r) offsets[r + 1] += offsets[r];
  return SparseMatrix(rows, cols, std::move(offsets), std::move(cols_idx),
                      std::move(vals));
}

SparseMatrix SparseMatrix::WithValues(std::vector<double> values) const {
  if (values.size() != nnz()) {
    throw InvalidArgument("SparseMatrix::WithValues: length mismatch");
  }
  SparseMatrix out = *this;
  out.values_ = std::move(values);
  return out;
}

Tensor SparseMatrix::Densify() const {
  Tensor out(rows_, cols_);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      out(r, col_indices_[k]) = values_[k];
    }
  }
  return out;
}

Tensor SpMM(const SparseMatrix& s, const Tensor& d) {
  if (s.cols() != d.rows()) {
    throw InvalidArgument("SpMM: sparse [" + std::to_string(s.rows()) + "x" +
                          std::to_string(s.cols()) + "] x " + d.ShapeString());
  }
  const size_t n = d.cols();
  Tensor out(s.rows(), n);
  const auto offsets = s.row_offsets();
  const auto cols = s.col_indices();
  const auto vals = s.values();
  for (size_t r = 0; r < s.rows(); ++r) {
    double* orow = out.Row(r).data();
    for (size_t k = offsets[r]; k < offsets[r + 1]; ++k) {
      const double v = vals[k];
      const double* drow = d.Row(cols[k]).data();
      for (size_t j = 0; j < n; ++j) orow[j] += v * drow[j];
    }
  }
  return out;
}

Tensor SpMMTransposed(const SparseMatrix& s, const Tensor& d) {
  if (s.rows() != d.rows()) {
    throw InvalidArgument("SpMMTransposed: dimension mismatch");
  }
  const size_t n = d.cols();
  Tensor out(s.cols(), n);
  const auto offsets = s.row_offsets();
  const auto cols = s.col_indices();
  const auto vals = s.values();
  for (size_t r = 0; r < s.rows(); ++r) {
    const double* drow = d.Row(r).data();
    for (size_t k = offsets[r]; k < offsets[r + 1]; ++k) {
      const double v = vals[k];
      double* orow = out.Row(cols[k]).data();
      for (size_t j = 0; j < n; ++j) orow[j] += v * drow[j];
    }
  }
  return out;
}

}  // namespace graphleak
