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

#include "sbpwave/rational.hpp"
#include "sbpwave/sparse_matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace sbpwave {

/// One row of a banded operator: output = sum_k coeffs[k] * input[cols[k]].
struct StencilRow {
  std::vector<std::size_t> cols;
  std::vector<double> coeffs;
};

/// Interior fourth-order staggered stencil at unit spacing.
inline constexpr double kStencil[4] = {1.0 / 24.0, -9.0 / 8.0, 9.0 / 8.0, -1.0 / 24.0};

/// A staggered difference pair on one axis: d_p maps primary samples to the
/// dual subgrid, d_v maps dual samples back to the primary subgrid. Norms are
/// the diagonal quadrature weights of each subgrid. Projections are empty on
/// periodic axes.
class StaggeredPair1D {
 public:
  std::size_t n_p() const { return norm_p_.size(); }
  std::size_t n_v() const { return norm_v_.size(); }
  double dx() const { return dx_; }
  bool periodic() const { return proj_left_.empty(); }

  void apply_dp(std::span<const double> p, std::span<double> out) const;
  void apply_dv(std::span<const double> v, std::span<double> out) const;

  const std::vector<StencilRow>& dp_rows() const { return dp_rows_; }
  const std::vector<StencilRow>& dv_rows() const { return dv_rows_; }
  const std::vector<double>& norm_p() const { return norm_p_; }
  const std::vector<double>& norm_v() const { return norm_v_; }
  const std::vector<double>& proj_left() const { return proj_left_; }
  const std::vector<double>& proj_right() const { return proj_right_; }

  SparseMatrix dp_matrix() const;
  SparseMatrix dv_matrix() const;
  /// Q = A_p D_v + (A_v D_p)^T.
  SparseMatrix q_matrix() const;

  /// Adds delta to entry (row, col) of d_p. Negative-control hook for tests.
  void perturb_dp(std::size_t row, std::size_t col, double delta);

 protected:
  double dx_ = 1.0;
  std::vector<StencilRow> dp_rows_;
  std::vector<StencilRow> dv_rows_;
  std::vector<double> norm_p_;
  std::vector<double> norm_v_;
  std::vector<double> proj_left_;
  std::vector<double> proj_right_;
};

/// SBP pair for a bounded axis with p points on both ends. Closures span four
/// primary and three dual points per side.
class SbpOperators1D : public StaggeredPair1D {
 public:
  SbpOperators1D(std::size_t n_p, double dx);
};

/// Circulant pair for a periodic axis; both norms are dx * I.
class PeriodicOperators1D : public StaggeredPair1D {
 public:
  PeriodicOperators1D(std::size_t n, double dx);
};

SbpOperators1D build_sbp_1d(std::size_t n_p, double dx);
PeriodicOperators1D build_periodic_1d(std::size_t n, double dx);

/// Unit-spacing operators in exact arithmetic, dense.
struct ExactSbpOperators1D {
  RationalMatrix d_p;  // n_v x n_p
  RationalMatrix d_v;  // n_p x n_v
  std::vector<Rational> a_p;
  std::vector<Rational> a_v;
  std::vector<Rational> proj_left;
  std::vector<Rational> proj_right;

  RationalMatrix q() const;
};

ExactSbpOperators1D build_sbp_1d_exact(std::size_t n_p);

/// Closure coefficients at unit spacing, left boundary. The right boundary is
/// the antisymmetric mirror image.
namespace closure {
/// d_p rows 0..2 over primary columns 0..4.
Rational dp(std::size_t row, std::size_t col);
/// d_v rows 0..3 over dual columns 0..4.
Rational dv(std::size_t row, std::size_t col);
Rational norm_p(std::size_t i);  // i < 4
Rational norm_v(std::size_t i);  // i < 3
Rational proj(std::size_t i);    // i < 3
inline constexpr std::size_t kPrimaryRows = 4;
inline constexpr std::size_t kDualRows = 3;
inline constexpr std::size_t kWidth = 5;
}  // namespace closure

struct SbpStructureReport {
  /// max |Q - (-e_L p_L^T + e_R p_R^T)| / max |Q|
  double structure_residual = 0.0;
  /// Highest monomial degree each row differentiates exactly.
  std::vector<int> dp_row_degree;
  std::vector<int> dv_row_degree;
  int proj_left_degree = -1;
  int proj_right_degree = -1;
  /// sum(norm_p) and sum(norm_v) against the axis length.
  double quadrature_error = 0.0;

  bool structure_ok(double tol = 1e-14) const { return structure_residual <= tol; }
};

/// Structure and accuracy certificate. Degrees are probed up to 6.
SbpStructureReport verify_sbp_structure(const StaggeredPair1D& ops);

/// Exact residual of the SBP structure for the unit-spacing operators.
Rational exact_structure_residual(const ExactSbpOperators1D& ops);

/// Highest degree k such that the exact operators differentiate every monomial
/// of degree <= k exactly on the given row (dp: dual row, dv: primary row).
int exact_dp_row_degree(const ExactSbpOperators1D& ops, std::size_t row, int max_degree = 6);
int exact_dv_row_degree(const ExactSbpOperators1D& ops, std::size_t row, int max_degree = 6);
int exact_projection_degree(const ExactSbpOperators1D& ops, bool left, int max_degree = 6);

}  // namespace sbpwave
