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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sbpwave {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed-row sparse matrix. This is the explicit ("materialized") form of
/// the operators; the time stepper never touches it.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

  /// Duplicate entries are summed; exact zeros are dropped.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::vector<Triplet> triplets);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix diagonal(std::span<const double> d);
  static SparseMatrix from_dense(std::size_t rows, std::size_t cols, std::span<const double> row_major);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return values_.size(); }

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(std::span<const double> x) const;

  SparseMatrix transpose() const;
  std::vector<Triplet> triplets() const;
  std::vector<double> to_dense() const;
  double at(std::size_t i, std::size_t j) const;
  double max_abs() const;

  SparseMatrix scaled(double s) const;
  /// diag(d) * this
  SparseMatrix row_scaled(std::span<const double> d) const;

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// Kronecker product a ⊗ b.
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

/// Assembles a block matrix; blocks[i][j] may be empty (0x0) for zero blocks.
SparseMatrix block_matrix(const std::vector<std::vector<SparseMatrix>>& blocks,
                          const std::vector<std::size_t>& row_sizes,
                          const std::vector<std::size_t>& col_sizes);

}  // namespace sbpwave
