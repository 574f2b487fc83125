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

#include "sbpwave/rational.hpp"

#include <cmath>
#include <utility>

namespace sbpwave {

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

namespace {

// Row-reduces the augmented matrix in place; returns the pivot count.
std::size_t row_reduce(RationalMatrix& m, std::size_t n_coef_cols) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n_coef_cols && rank < m.rows; ++col) {
    std::size_t piv = rank;
    while (piv < m.rows && m(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(rank, j));
    const Rational inv = 1 / m(rank, col);
    for (std::size_t j = 0; j < m.cols; ++j) m(rank, j) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == rank || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols; ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool solve_min_norm(const RationalMatrix& a, const std::vector<Rational>& b,
                    std::vector<Rational>& x) {
  RationalMatrix aug(a.rows, a.cols + 1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
    aug(i, a.cols) = b[i];
  }
  const std::size_t rank = row_reduce(aug, a.cols);
  for (std::size_t i = rank; i < aug.rows; ++i)
    if (aug(i, a.cols) != 0) return false;

  // The reduced rows span the row space of A, so x = R^T (R R^T)^{-1} c is the
  // least-norm solution.
  RationalMatrix r(rank, a.cols);
  std::vector<Rational> c(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) r(i, j) = aug(i, j);
    c[i] = aug(i, a.cols);
  }
  const RationalMatrix gram = r * r.transpose();
  RationalMatrix g(rank, rank + 1);
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < rank; ++j) g(i, j) = gram(i, j);
    g(i, rank) = c[i];
  }
  row_reduce(g, rank);
  x.assign(a.cols, Rational(0));
  for (std::size_t i = 0; i < rank; ++i) {
    const Rational& yi = g(i, rank);
    if (yi == 0) continue;
    for (std::size_t j = 0; j < a.cols; ++j) x[j] += r(i, j) * yi;
  }
  return true;
}

bool recover_ratio(double value, std::int64_t max_den, double rel_tol, std::int64_t& num,
                   std::int64_t& den) {
  if (!(value > 0) || !std::isfinite(value)) return false;
  for (std::int64_t q = 1; q <= max_den; ++q) {
    const double p = std::round(value * static_cast<double>(q));
    if (p < 1) continue;
    if (std::abs(p / static_cast<double>(q) - value) <= rel_tol * value) {
      num = static_cast<std::int64_t>(p);
      den = q;
      return true;
    }
  }
  return false;
}

}  // namespace sbpwave
