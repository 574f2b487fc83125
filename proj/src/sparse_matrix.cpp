// Copyright 2026 The sbpwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sbpwave/sparse_matrix.hpp"

#include "sbpwave/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sbpwave {

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m(rows, cols);
  std::size_t k = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    while (k < triplets.size() && triplets[k].row == r) {
      const std::size_t c = triplets[k].col;
      if (c >= cols) throw ShapeError("sparse triplet column out of range");
      double v = 0.0;
      while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) v += triplets[k++].value;
      if (v != 0.0) {
        m.col_idx_.push_back(c);
        m.values_.push_back(v);
      }
    }
    m.row_ptr_[r + 1] = m.values_.size();
  }
  if (k != triplets.size()) throw ShapeError("sparse triplet row out of range");
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<double> ones(n, 1.0);
  return diagonal(ones);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> d) {
  std::vector<Triplet> t;
  t.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
  return from_triplets(d.size(), d.size(), std::move(t));
}

SparseMatrix SparseMatrix::from_dense(std::size_t rows, std::size_t cols,
                                      std::span<const double> row_major) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (row_major[i * cols + j] != 0.0) t.push_back({i, j, row_major[i * cols + j]});
  return from_triplets(rows, cols, std::move(t));
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols_ || y.size() != rows_) throw ShapeError("sparse multiply: shape mismatch");
  for (std::size_t r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += values_[k] * x[col_idx_[k]];
    y[r] = s;
  }
}

std::vector<double> SparseMatrix::operator*(std::span<const double> x) const {
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) t.push_back({r, col_idx_[k], values_[k]});
  return t;
}

SparseMatrix SparseMatrix::transpose() const {
  auto t = triplets();
  for (auto& e : t) std::swap(e.row, e.col);
  return from_triplets(cols_, rows_, std::move(t));
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> d(rows_ * cols_, 0.0);
  for (const auto& e : triplets()) d[e.row * cols_ + e.col] = e.value;
  return d;
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
    if (col_idx_[k] == j) return values_[k];
  return 0.0;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SparseMatrix SparseMatrix::scaled(double s) const {
  SparseMatrix m = *this;
  for (double& v : m.values_) v *= s;
  return m;
}

SparseMatrix SparseMatrix::row_scaled(std::span<const double> d) const {
  if (d.size() != rows_) throw ShapeError("row_scaled: shape mismatch");
  SparseMatrix m = *this;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) m.values_[k] *= d[r];
  return m;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("sparse add: shape mismatch");
  auto t = a.triplets();
  auto tb = b.triplets();
  t.insert(t.end(), tb.begin(), tb.end());
  return SparseMatrix::from_triplets(a.rows_, a.cols_, std::move(t));
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + b.scaled(-1.0); }

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) throw ShapeError("sparse product: shape mismatch");
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = a.row_ptr_[r]; k < a.row_ptr_[r + 1]; ++k) {
      const std::size_t m = a.col_idx_[k];
      for (std::size_t l = b.row_ptr_[m]; l < b.row_ptr_[m + 1]; ++l)
        t.push_back({r, b.col_idx_[l], a.values_[k] * b.values_[l]});
    }
  return SparseMatrix::from_triplets(a.rows_, b.cols_, std::move(t));
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Triplet> t;
  const auto ta = a.triplets();
  const auto tb = b.triplets();
  t.reserve(ta.size() * tb.size());
  for (const auto& ea : ta)
    for (const auto& eb : tb)
      t.push_back({ea.row * b.rows() + eb.row, ea.col * b.cols() + eb.col, ea.value * eb.value});
  return SparseMatrix::from_triplets(a.rows() * b.rows(), a.cols() * b.cols(), std::move(t));
}

SparseMatrix block_matrix(const std::vector<std::vector<SparseMatrix>>& blocks,
                          const std::vector<std::size_t>& row_sizes,
                          const std::vector<std::size_t>& col_sizes) {
  std::size_t n_rows = 0, n_cols = 0;
  for (auto s : row_sizes) n_rows += s;
  for (auto s : col_sizes) n_cols += s;
  std::vector<Triplet> t;
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    std::size_t c0 = 0;
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      const SparseMatrix& b = blocks[i][j];
      if (b.rows() != 0 || b.cols() != 0) {
        if (b.rows() != row_sizes[i] || b.cols() != col_sizes[j])
          throw ShapeError("block_matrix: block shape mismatch");
        for (const auto& e : b.triplets()) t.push_back({r0 + e.row, c0 + e.col, e.value});
      }
      c0 += col_sizes[j];
    }
    r0 += row_sizes[i];
  }
  return SparseMatrix::from_triplets(n_rows, n_cols, std::move(t));
}

}  // namespace sbpwave
