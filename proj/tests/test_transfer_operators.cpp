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

#include <doctest.h>

#include "sbpwave/errors.hpp"
#include "sbpwave/transfer_operators.hpp"

#include <cmath>

using namespace sbpwave;

namespace {

Rational coef(const std::vector<StencilEntry>& row, std::int64_t index) {
  for (const auto& e : row)
    if (e.index == index) return e.value;
  return 0;
}

// Local polynomial test in floating point: every row of `op` (rows at
// r*row_step, columns at c*col_step, period L) maps x^d to its value at the
// row point for d <= 2.
double local_quadratic_defect(const SparseMatrix& op, double row_step, double col_step, double period) {
  double worst = 0;
  for (const auto& t : std::vector<int>{0, 1, 2}) {
    std::vector<double> acc(op.rows(), 0.0), scale(op.rows(), 0.0);
    for (const auto& e : op.triplets()) {
      double o = std::fmod(e.col * col_step - e.row * row_step, period);
      if (o < -period / 2) o += period;
      if (o >= period / 2) o -= period;
      acc[e.row] += e.value * std::pow(o, t);
      scale[e.row] += std::abs(e.value * std::pow(o, t));
    }
    for (std::size_t r = 0; r < op.rows(); ++r)
      worst = std::max(worst, std::abs(acc[r] - (t == 0 ? 1.0 : 0.0)) / std::max(1.0, scale[r]));
  }
  return worst;
}

}  // namespace

TEST_CASE("2:1 tabulated formulas") {
  const auto p = tabulated_pair({2, 1});
  REQUIRE(p.coarse_to_fine.size() == 2);
  CHECK(p.coarse_to_fine[0].size() == 1);
  CHECK(coef(p.coarse_to_fine[0], 0) == 1);
  CHECK(coef(p.coarse_to_fine[1], -1) == rat(-1, 16));
  CHECK(coef(p.coarse_to_fine[1], 0) == rat(9, 16));
  CHECK(coef(p.coarse_to_fine[1], 1) == rat(9, 16));
  CHECK(coef(p.coarse_to_fine[1], 2) == rat(-1, 16));

  const Rational expected[9] = {rat(-1, 32), 0, rat(9, 32), rat(1, 2), rat(9, 32), 0, rat(-1, 32), 0, 0};
  for (int f = -3; f <= 5; ++f) CHECK(coef(p.fine_to_coarse[0], f) == expected[f + 3]);
  CHECK(certify(p).min_degree >= 3);
}

TEST_CASE("3:2 tabulated formulas") {
  const auto p = tabulated_pair({3, 2});
  const Rational row0[7] = {rat(-1, 96), rat(1, 24), rat(15, 16), rat(1, 24), rat(-1, 96), 0, 0};
  Rational sum = 0;
  for (int k = -2; k <= 4; ++k) {
    CHECK(coef(p.coarse_to_fine[0], k) == row0[k + 2]);
    sum += coef(p.coarse_to_fine[0], k);
  }
  CHECK(sum == 1);
  CHECK(coef(p.coarse_to_fine[1], 1) == rat(217, 288));
  CHECK(coef(p.coarse_to_fine[2], 3) == rat(-13, 288));
  const auto c = certify(p);
  CHECK(c.row_sum_error == 0);
  CHECK(c.min_degree >= 2);
  CHECK(c.constraint_residual == 0);
}

TEST_CASE("unlisted ratios are not tabulated") {
  CHECK_THROWS_AS(tabulated_pair({4, 3}), UnsupportedRatio);
  CHECK_THROWS_AS(tabulated_pair({3, 1}), UnsupportedRatio);
}

TEST_CASE("derived 2:1 pair equals the tabulated one") {
  const auto d = derive_elemental_pair({2, 1}, 4);
  const auto p = tabulated_pair({2, 1});
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(d.coarse_to_fine[j].size() == p.coarse_to_fine[j].size());
    for (const auto& e : p.coarse_to_fine[j]) CHECK(coef(d.coarse_to_fine[j], e.index) == e.value);
  }
}

TEST_CASE("1:1 is the identity") {
  const auto t = tile_periodic(shipped_pair({1, 1}), 10, 10);
  const auto id = SparseMatrix::identity(10).to_dense();
  CHECK(t.coarse_to_fine.to_dense() == id);
  CHECK(t.fine_to_coarse.to_dense() == id);
  CHECK(derive_elemental_pair({1, 1}).coarse_to_fine[0].size() == 1);
}

TEST_CASE("derived pairs for other ratios") {
  for (SpacingRatio r : {SpacingRatio{3, 1}, SpacingRatio{4, 3}, SpacingRatio{5, 4}, SpacingRatio{6, 5},
                         SpacingRatio{7, 6}}) {
    CAPTURE(r.coarse);
    CAPTURE(r.fine);
    const auto p = derive_elemental_pair(r);
    const auto c = certify(p);
    CHECK(c.row_sum_error == 0);
    CHECK(c.min_degree >= 2);
    CHECK(c.constraint_residual == 0);
  }
  CHECK_THROWS_AS(derive_elemental_pair({2, 1}, 1), InfeasibleError);
  CHECK_THROWS_AS(derive_elemental_pair({4, 2}, 4), DomainError);
  CHECK_THROWS_AS(derive_elemental_pair({2, 3}, 4), DomainError);
}

TEST_CASE("tiling") {
  SUBCASE("2:1 over 60/120") {
    const auto t = tile_periodic(shipped_pair({2, 1}), 60, 120);
    CHECK(t.coarse_to_fine.rows() == 120);
    CHECK(t.coarse_to_fine.cols() == 60);
    CHECK(t.fine_to_coarse.rows() == 60);
    // dx_f * T_cf^T - dx_c * T_fc with dx_f = 0.008, dx_c = 0.016
    const auto diff = t.coarse_to_fine.transpose().scaled(0.008) - t.fine_to_coarse.scaled(0.016);
    CHECK(diff.max_abs() == 0.0);
    CHECK(certify(t).constraint_residual == 0);
    CHECK(local_quadratic_defect(t.coarse_to_fine, 1.0, 2.0, 120.0) < 1e-14);
    CHECK(local_quadratic_defect(t.fine_to_coarse, 2.0, 1.0, 120.0) < 1e-14);
  }
  SUBCASE("3:2 over 100/150") {
    const auto t = tile_periodic(shipped_pair({3, 2}), 100, 150);
    CHECK(local_quadratic_defect(t.coarse_to_fine, 2.0, 3.0, 300.0) < 1e-14);
    CHECK(local_quadratic_defect(t.fine_to_coarse, 3.0, 2.0, 300.0) < 1e-14);
    const auto c = certify(t);
    CHECK(c.min_degree >= 2);
    CHECK(c.row_sum_error == 0);
  }
  SUBCASE("6:5 over 100/120") {
    const auto t = tile_periodic(shipped_pair({6, 5}), 100, 120);
    CHECK(local_quadratic_defect(t.coarse_to_fine, 5.0, 6.0, 600.0) < 1e-13);
    CHECK(local_quadratic_defect(t.fine_to_coarse, 6.0, 5.0, 600.0) < 1e-13);
  }
  SUBCASE("divisibility") {
    CHECK_THROWS_AS(tile_periodic(shipped_pair({3, 2}), 99, 150), DomainError);
    CHECK_THROWS_AS(tile_periodic(shipped_pair({2, 1}), 60, 100), DomainError);
  }
}
