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

#include "sbpwave/sbp_operators_1d.hpp"

#include "sbpwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sbpwave {

namespace closure {

namespace {

// Left closure of the staggered SBP pair at unit spacing. Right closures are
// obtained by the antisymmetric mirror D[n-1-r][m-1-c] = -D[r][c].
const std::int64_t kDp[3][5][2] = {
    {{-79, 78}, {27, 26}, {-1, 26}, {1, 78}, {0, 1}},
    {{2, 21}, {-9, 7}, {9, 7}, {-2, 21}, {0, 1}},
    {{1, 75}, {0, 1}, {-27, 25}, {83, 75}, {-1, 25}},
};
const std::int64_t kDv[4][5][2] = {
    {{-2, 1}, {3, 1}, {-1, 1}, {0, 1}, {0, 1}},
    {{-1, 1}, {1, 1}, {0, 1}, {0, 1}, {0, 1}},
    {{1, 24}, {-9, 8}, {9, 8}, {-1, 24}, {0, 1}},
    {{-1, 71}, {6, 71}, {-83, 71}, {81, 71}, {-3, 71}},
};
const std::int64_t kNormP[4][2] = {{7, 18}, {9, 8}, {1, 1}, {71, 72}};
const std::int64_t kNormV[3][2] = {{13, 12}, {7, 8}, {25, 24}};
const std::int64_t kProj[3][2] = {{15, 8}, {-5, 4}, {3, 8}};

}  // namespace

Rational dp(std::size_t row, std::size_t col) { return rat(kDp[row][col][0], kDp[row][col][1]); }
Rational dv(std::size_t row, std::size_t col) { return rat(kDv[row][col][0], kDv[row][col][1]); }
Rational norm_p(std::size_t i) { return rat(kNormP[i][0], kNormP[i][1]); }
Rational norm_v(std::size_t i) { return rat(kNormV[i][0], kNormV[i][1]); }
Rational proj(std::size_t i) { return rat(kProj[i][0], kProj[i][1]); }

}  // namespace closure

namespace {

void apply_rows(const std::vector<StencilRow>& rows, std::span<const double> in, std::span<double> out) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    double s = 0.0;
    for (std::size_t k = 0; k < row.cols.size(); ++k) s += row.coeffs[k] * in[row.cols[k]];
    out[r] = s;
  }
}

SparseMatrix rows_to_matrix(const std::vector<StencilRow>& rows, std::size_t n_cols) {
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t k = 0; k < rows[r].cols.size(); ++k) t.push_back({r, rows[r].cols[k], rows[r].coeffs[k]});
  return SparseMatrix::from_triplets(rows.size(), n_cols, std::move(t));
}

StencilRow interior_row(std::size_t first, double inv_dx) {
  StencilRow row;
  for (std::size_t k = 0; k < 4; ++k) {
    row.cols.push_back(first + k);
    row.coeffs.push_back(kStencil[k] * inv_dx);
  }
  return row;
}

}  // namespace

void StaggeredPair1D::apply_dp(std::span<const double> p, std::span<double> out) const {
  if (p.size() != n_p() || out.size() != n_v()) throw ShapeError("apply_dp: shape mismatch");
  apply_rows(dp_rows_, p, out);
}

void StaggeredPair1D::apply_dv(std::span<const double> v, std::span<double> out) const {
  if (v.size() != n_v() || out.size() != n_p()) throw ShapeError("apply_dv: shape mismatch");
  apply_rows(dv_rows_, v, out);
}

SparseMatrix StaggeredPair1D::dp_matrix() const { return rows_to_matrix(dp_rows_, n_p()); }
SparseMatrix StaggeredPair1D::dv_matrix() const { return rows_to_matrix(dv_rows_, n_v()); }

SparseMatrix StaggeredPair1D::q_matrix() const {
  const auto ap = SparseMatrix::diagonal(norm_p_);
  const auto av = SparseMatrix::diagonal(norm_v_);
  return ap * dv_matrix() + (av * dp_matrix()).transpose();
}

void StaggeredPair1D::perturb_dp(std::size_t row, std::size_t col, double delta) {
  auto& r = dp_rows_.at(row);
  for (std::size_t k = 0; k < r.cols.size(); ++k)
    if (r.cols[k] == col) {
      r.coeffs[k] += delta;
      return;
    }
  r.cols.push_back(col);
  r.coeffs.push_back(delta);
}

SbpOperators1D::SbpOperators1D(std::size_t n_p, double dx) {
  if (n_p < 9) throw DomainError("build_sbp_1d: n_p must be at least 9, got " + std::to_string(n_p));
  if (!(dx > 0) || !std::isfinite(dx)) throw DomainError("build_sbp_1d: spacing must be positive");
  const std::size_t n_v = n_p - 1;
  const double inv_dx = 1.0 / dx;
  dx_ = dx;

  dp_rows_.resize(n_v);
  for (std::size_t r = 0; r < n_v; ++r) {
    if (r < closure::kDualRows || r >= n_v - closure::kDualRows) continue;
    dp_rows_[r] = interior_row(r - 1, inv_dx);
  }
  dv_rows_.resize(n_p);
  for (std::size_t i = 0; i < n_p; ++i) {
    if (i < closure::kPrimaryRows || i >= n_p - closure::kPrimaryRows) continue;
    dv_rows_[i] = interior_row(i - 2, inv_dx);
  }
  for (std::size_t r = 0; r < closure::kDualRows; ++r) {
    StencilRow left, right;
    for (std::size_t c = closure::kWidth; c-- > 0;) {
      const double v = to_double(closure::dp(r, c)) * inv_dx;
      if (v == 0.0) continue;
      right.cols.push_back(n_p - 1 - c);
      right.coeffs.push_back(-v);
    }
    for (std::size_t c = 0; c < closure::kWidth; ++c) {
      const double v = to_double(closure::dp(r, c)) * inv_dx;
      if (v == 0.0) continue;
      left.cols.push_back(c);
      left.coeffs.push_back(v);
    }
    dp_rows_[r] = std::move(left);
    dp_rows_[n_v - 1 - r] = std::move(right);
  }
  for (std::size_t i = 0; i < closure::kPrimaryRows; ++i) {
    StencilRow left, right;
    for (std::size_t c = closure::kWidth; c-- > 0;) {
      const double v = to_double(closure::dv(i, c)) * inv_dx;
      if (v == 0.0) continue;
      right.cols.push_back(n_v - 1 - c);
      right.coeffs.push_back(-v);
    }
    for (std::size_t c = 0; c < closure::kWidth; ++c) {
      const double v = to_double(closure::dv(i, c)) * inv_dx;
      if (v == 0.0) continue;
      left.cols.push_back(c);
      left.coeffs.push_back(v);
    }
    dv_rows_[i] = std::move(left);
    dv_rows_[n_p - 1 - i] = std::move(right);
  }

  norm_p_.assign(n_p, dx);
  norm_v_.assign(n_v, dx);
  for (std::size_t i = 0; i < closure::kPrimaryRows; ++i) {
    norm_p_[i] = norm_p_[n_p - 1 - i] = to_double(closure::norm_p(i)) * dx;
  }
  for (std::size_t i = 0; i < closure::kDualRows; ++i) {
    norm_v_[i] = norm_v_[n_v - 1 - i] = to_double(closure::norm_v(i)) * dx;
  }
  proj_left_.assign(n_v, 0.0);
  proj_right_.assign(n_v, 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    proj_left_[i] = proj_right_[n_v - 1 - i] = to_double(closure::proj(i));
  }
}

PeriodicOperators1D::PeriodicOperators1D(std::size_t n, double dx) {
  if (n < 4) throw DomainError("build_periodic_1d: need at least 4 points, got " + std::to_string(n));
  if (!(dx > 0) || !std::isfinite(dx)) throw DomainError("build_periodic_1d: spacing must be positive");
  dx_ = dx;
  const double inv_dx = 1.0 / dx;
  dp_rows_.resize(n);
  dv_rows_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Dual point i sits at x_i + dx/2: uses p_{i-1..i+2}.
    // Primary point i uses dual points i-2..i+1.
    for (std::size_t k = 0; k < 4; ++k) {
      dp_rows_[i].cols.push_back((i + n - 1 + k) % n);
      dp_rows_[i].coeffs.push_back(kStencil[k] * inv_dx);
      dv_rows_[i].cols.push_back((i + n - 2 + k) % n);
      dv_rows_[i].coeffs.push_back(kStencil[k] * inv_dx);
    }
  }
  norm_p_.assign(n, dx);
  norm_v_.assign(n, dx);
}

SbpOperators1D build_sbp_1d(std::size_t n_p, double dx) { return SbpOperators1D(n_p, dx); }
PeriodicOperators1D build_periodic_1d(std::size_t n, double dx) { return PeriodicOperators1D(n, dx); }

RationalMatrix ExactSbpOperators1D::q() const {
  const std::size_t n_p = a_p.size(), n_v = a_v.size();
  RationalMatrix q(n_p, n_v);
  for (std::size_t i = 0; i < n_p; ++i)
    for (std::size_t j = 0; j < n_v; ++j) q(i, j) = a_p[i] * d_v(i, j) + a_v[j] * d_p(j, i);
  return q;
}

ExactSbpOperators1D build_sbp_1d_exact(std::size_t n_p) {
  if (n_p < 9) throw DomainError("build_sbp_1d_exact: n_p must be at least 9");
  const std::size_t n_v = n_p - 1;
  ExactSbpOperators1D ops{RationalMatrix(n_v, n_p), RationalMatrix(n_p, n_v), {}, {}, {}, {}};
  const Rational st[4] = {rat(1, 24), rat(-9, 8), rat(9, 8), rat(-1, 24)};
  for (std::size_t r = closure::kDualRows; r < n_v - closure::kDualRows; ++r)
    for (std::size_t k = 0; k < 4; ++k) ops.d_p(r, r - 1 + k) = st[k];
  for (std::size_t i = closure::kPrimaryRows; i < n_p - closure::kPrimaryRows; ++i)
    for (std::size_t k = 0; k < 4; ++k) ops.d_v(i, i - 2 + k) = st[k];
  for (std::size_t r = 0; r < closure::kDualRows; ++r)
    for (std::size_t c = 0; c < closure::kWidth; ++c) {
      ops.d_p(r, c) = closure::dp(r, c);
      ops.d_p(n_v - 1 - r, n_p - 1 - c) = -closure::dp(r, c);
    }
  for (std::size_t i = 0; i < closure::kPrimaryRows; ++i)
    for (std::size_t c = 0; c < closure::kWidth; ++c) {
      ops.d_v(i, c) = closure::dv(i, c);
      ops.d_v(n_p - 1 - i, n_v - 1 - c) = -closure::dv(i, c);
    }
  ops.a_p.assign(n_p, Rational(1));
  ops.a_v.assign(n_v, Rational(1));
  for (std::size_t i = 0; i < closure::kPrimaryRows; ++i) ops.a_p[i] = ops.a_p[n_p - 1 - i] = closure::norm_p(i);
  for (std::size_t i = 0; i < closure::kDualRows; ++i) ops.a_v[i] = ops.a_v[n_v - 1 - i] = closure::norm_v(i);
  ops.proj_left.assign(n_v, Rational(0));
  ops.proj_right.assign(n_v, Rational(0));
  for (std::size_t i = 0; i < 3; ++i) ops.proj_left[i] = ops.proj_right[n_v - 1 - i] = closure::proj(i);
  return ops;
}

Rational exact_structure_residual(const ExactSbpOperators1D& ops) {
  const auto q = ops.q();
  Rational worst = 0;
  for (std::size_t i = 0; i < q.rows; ++i)
    for (std::size_t j = 0; j < q.cols; ++j) {
      Rational target = 0;
      if (i == 0) target -= ops.proj_left[j];
      if (i == q.rows - 1) target += ops.proj_right[j];
      const Rational d = abs(q(i, j) - target);
      if (d > worst) worst = d;
    }
  return worst;
}

namespace {

Rational rpow(const Rational& x, int d) {
  Rational r = 1;
  for (int k = 0; k < d; ++k) r *= x;
  return r;
}

// Row of an exact matrix applied to monomials of local coordinate s (unit
// spacing), compared with the derivative at s = 0.
int exact_row_degree(const RationalMatrix& m, std::size_t row, const Rational& row_pos,
                     const std::vector<Rational>& col_pos, int max_degree) {
  for (int d = 0; d <= max_degree; ++d) {
    Rational s = 0;
    for (std::size_t c = 0; c < m.cols; ++c)
      if (m(row, c) != 0) s += m(row, c) * rpow(col_pos[c] - row_pos, d);
    const Rational target = d == 1 ? Rational(1) : Rational(0);
    if (s != target) return d - 1;
  }
  return max_degree;
}

}  // namespace

int exact_dp_row_degree(const ExactSbpOperators1D& ops, std::size_t row, int max_degree) {
  std::vector<Rational> xp(ops.a_p.size());
  for (std::size_t i = 0; i < xp.size(); ++i) xp[i] = Rational(static_cast<long long>(i));
  return exact_row_degree(ops.d_p, row, Rational(static_cast<long long>(2 * row + 1), 2), xp, max_degree);
}

int exact_dv_row_degree(const ExactSbpOperators1D& ops, std::size_t row, int max_degree) {
  std::vector<Rational> xv(ops.a_v.size());
  for (std::size_t i = 0; i < xv.size(); ++i) xv[i] = Rational(static_cast<long long>(2 * i + 1), 2);
  return exact_row_degree(ops.d_v, row, Rational(static_cast<long long>(row)), xv, max_degree);
}

int exact_projection_degree(const ExactSbpOperators1D& ops, bool left, int max_degree) {
  const auto& pr = left ? ops.proj_left : ops.proj_right;
  const Rational end = left ? Rational(0) : Rational(static_cast<long long>(ops.a_p.size() - 1));
  for (int d = 0; d <= max_degree; ++d) {
    Rational s = 0;
    for (std::size_t i = 0; i < pr.size(); ++i)
      if (pr[i] != 0) s += pr[i] * rpow(Rational(static_cast<long long>(2 * i + 1), 2) - end, d);
    if (s != (d == 0 ? Rational(1) : Rational(0))) return d - 1;
  }
  return max_degree;
}

namespace {

// Signed offset (in cells) from x0 to x, unwrapped on periodic axes.
double offset(double x, double x0, double period) {
  double s = x - x0;
  if (period > 0) {
    while (s >= 0.5 * period) s -= period;
    while (s < -0.5 * period) s += period;
  }
  return s;
}

int row_degree(const StencilRow& row, double row_pos, const std::vector<double>& col_pos, double period,
               double dx, int max_degree) {
  for (int d = 0; d <= max_degree; ++d) {
    double s = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < row.cols.size(); ++k) {
      const double t = std::pow(offset(col_pos[row.cols[k]], row_pos, period), d);
      s += row.coeffs[k] * dx * t;
      scale += std::abs(row.coeffs[k] * dx * t);
    }
    const double target = d == 1 ? 1.0 : 0.0;
    if (std::abs(s - target) > 1e-11 * std::max(1.0, scale)) return d - 1;
  }
  return max_degree;
}

}  // namespace

SbpStructureReport verify_sbp_structure(const StaggeredPair1D& ops) {
  SbpStructureReport rep;
  const std::size_t n_p = ops.n_p(), n_v = ops.n_v();
  const bool periodic = ops.periodic();
  const auto q = ops.q_matrix().to_dense();
  double qmax = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < n_p; ++i)
    for (std::size_t j = 0; j < n_v; ++j) {
      double target = 0.0;
      if (!periodic) {
        if (i == 0) target -= ops.proj_left()[j];
        if (i == n_p - 1) target += ops.proj_right()[j];
      }
      qmax = std::max(qmax, std::abs(q[i * n_v + j]));
      worst = std::max(worst, std::abs(q[i * n_v + j] - target));
    }
  rep.structure_residual = qmax > 0 ? worst / qmax : worst;

  // Unit-cell coordinates: primary i at i, dual j at j + 1/2.
  std::vector<double> xp(n_p), xv(n_v);
  for (std::size_t i = 0; i < n_p; ++i) xp[i] = static_cast<double>(i);
  for (std::size_t j = 0; j < n_v; ++j) xv[j] = static_cast<double>(j) + 0.5;
  const double period = periodic ? static_cast<double>(n_p) : 0.0;
  const double dx = ops.dx();
  // Rows act on unit coordinates; rescale so derivative targets are 1/dx-free.
  for (std::size_t r = 0; r < n_v; ++r)
    rep.dp_row_degree.push_back(row_degree(ops.dp_rows()[r], xv[r], xp, period, dx, 6));
  for (std::size_t i = 0; i < n_p; ++i)
    rep.dv_row_degree.push_back(row_degree(ops.dv_rows()[i], xp[i], xv, period, dx, 6));

  if (!periodic) {
    auto proj_degree = [&](const std::vector<double>& pr, double end) {
      for (int d = 0; d <= 6; ++d) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_v; ++j) s += pr[j] * std::pow(xv[j] - end, d);
        if (std::abs(s - (d == 0 ? 1.0 : 0.0)) > 1e-11 * std::pow(4.0, d)) return d - 1;
      }
      return 6;
    };
    rep.proj_left_degree = proj_degree(ops.proj_left(), 0.0);
    rep.proj_right_degree = proj_degree(ops.proj_right(), static_cast<double>(n_p - 1));
  }

  double sp = 0.0, sv = 0.0;
  for (double a : ops.norm_p()) sp += a;
  for (double a : ops.norm_v()) sv += a;
  const double length = dx * static_cast<double>(periodic ? n_p : n_p - 1);
  rep.quadrature_error = std::max(std::abs(sp - length), std::abs(sv - length)) / length;
  return rep;
}

}  // namespace sbpwave
