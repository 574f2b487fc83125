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
#include "sbpwave/sbp_operators_1d.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace sbpwave;

namespace {

std::vector<double> sample(std::size_t n, double x0, double dx, auto f) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(x0 + static_cast<double>(i) * dx);
  return v;
}

}  // namespace

TEST_CASE("exact structure and first row of Q") {
  for (std::size_t n : {9u, 10u, 16u}) {
    const auto ops = build_sbp_1d_exact(n);
    CHECK(exact_structure_residual(ops) == 0);
    const auto q = ops.q();
    CHECK(q(0, 0) == rat(-15, 8));
    CHECK(q(0, 1) == rat(5, 4));
    CHECK(q(0, 2) == rat(-3, 8));
    for (std::size_t j = 3; j < n - 1; ++j) CHECK(q(0, j) == 0);
    CHECK(ops.proj_left[0] == rat(15, 8));
    CHECK(ops.proj_left[1] == rat(-5, 4));
    CHECK(ops.proj_left[2] == rat(3, 8));
  }
}

TEST_CASE("floating-point structure certificate") {
  for (double dx : {1.0, 0.1, 0.008}) {
    const auto ops = build_sbp_1d(17, dx);
    const auto rep = verify_sbp_structure(ops);
    CHECK(rep.structure_ok());
    CHECK(rep.quadrature_error < 1e-14);
  }
}

TEST_CASE("negative control: perturbed boundary entry") {
  auto ops = build_sbp_1d(12, 1.0);
  ops.perturb_dp(1, 2, 1e-3);
  CHECK(verify_sbp_structure(ops).structure_residual > 1e-5);
}

TEST_CASE("projection exactness") {
  const auto ops = build_sbp_1d(9, 1.0);
  const auto& pl = ops.proj_left();
  const auto& pr = ops.proj_right();
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  const auto one = sample(8, 0.5, 1.0, [](double) { return 1.0; });
  CHECK(dot(pl, one) == doctest::Approx(1.0).epsilon(1e-15));
  // 15/8 * 0.25 - 5/4 * 2.25 + 3/8 * 6.25
  const auto sq = sample(8, 0.5, 1.0, [](double x) { return x * x; });
  CHECK(std::abs(dot(pl, sq)) < 1e-14);
  CHECK(dot(pr, sq) == doctest::Approx(64.0).epsilon(1e-14));
  const auto lin = sample(8, 0.5, 1.0, [](double x) { return 3 * x - 1; });
  CHECK(dot(pr, lin) == doctest::Approx(23.0).epsilon(1e-14));

  const auto ex = build_sbp_1d_exact(9);
  CHECK(exact_projection_degree(ex, true) == 2);
  CHECK(exact_projection_degree(ex, false) == 2);
}

TEST_CASE("monomial exactness by direct application") {
  const std::size_t n = 21;
  const double dx = 0.25, x0 = -1.0;
  const auto ops = build_sbp_1d(n, dx);
  for (int k = 0; k <= 4; ++k) {
    const auto p = sample(n, x0, dx, [k](double x) { return std::pow(x, k); });
    const auto v = sample(n - 1, x0 + 0.5 * dx, dx, [k](double x) { return std::pow(x, k); });
    auto deriv = [k](double x) { return k == 0 ? 0.0 : k * std::pow(x, k - 1); };
    std::vector<double> dp(n - 1), dv(n);
    ops.apply_dp(p, dp);
    ops.apply_dv(v, dv);
    for (std::size_t r = 0; r < n - 1; ++r) {
      const bool closure = r < 3 || r >= n - 1 - 3;
      if (k <= 2 || !closure) CHECK(dp[r] == doctest::Approx(deriv(x0 + (r + 0.5) * dx)).epsilon(1e-11).scale(10));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const bool closure = i < 4 || i >= n - 4;
      if (k <= 2 || !closure) CHECK(dv[i] == doctest::Approx(deriv(x0 + i * dx)).epsilon(1e-11).scale(10));
    }
  }
  // Closure rows are not exact for cubics.
  const auto cub = sample(n, x0, dx, [](double x) { return x * x * x; });
  std::vector<double> dp(n - 1);
  ops.apply_dp(cub, dp);
  CHECK(std::abs(dp[0] - 3 * std::pow(x0 + 0.5 * dx, 2)) > 1e-6);
}

TEST_CASE("reported degrees") {
  const auto ops = build_sbp_1d(16, 0.3);
  const auto rep = verify_sbp_structure(ops);
  for (std::size_t r = 0; r < rep.dp_row_degree.size(); ++r) {
    const bool closure = r < 3 || r + 3 >= rep.dp_row_degree.size();
    CHECK(rep.dp_row_degree[r] >= (closure ? 2 : 4));
  }
  for (std::size_t i = 0; i < rep.dv_row_degree.size(); ++i) {
    const bool closure = i < 4 || i + 4 >= rep.dv_row_degree.size();
    CHECK(rep.dv_row_degree[i] >= (closure ? 2 : 4));
  }
  CHECK(rep.proj_left_degree == 2);
  CHECK(rep.proj_right_degree == 2);

  const auto ex = build_sbp_1d_exact(16);
  for (std::size_t r = 0; r < 3; ++r) CHECK(exact_dp_row_degree(ex, r) == 2);
  CHECK(exact_dp_row_degree(ex, 7) == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(exact_dv_row_degree(ex, i) >= 2);
  CHECK(exact_dv_row_degree(ex, 8) == 4);
}

TEST_CASE("interior stencil and scaling") {
  const auto a = build_sbp_1d(13, 1.0);
  const auto b = build_sbp_1d(13, 0.2);
  const auto& row = a.dp_rows()[5];
  REQUIRE(row.cols.size() == 4);
  CHECK(row.cols[0] == 4);
  CHECK(row.coeffs[0] == 1.0 / 24);
  CHECK(row.coeffs[1] == -9.0 / 8);
  const auto da = a.dp_matrix().to_dense(), db = b.dp_matrix().to_dense();
  for (std::size_t k = 0; k < da.size(); ++k) CHECK(db[k] == doctest::Approx(da[k] / 0.2));
  for (std::size_t k = 0; k < 13; ++k) CHECK(b.norm_p()[k] == doctest::Approx(a.norm_p()[k] * 0.2));
  for (double w : a.norm_p()) CHECK(w > 0);
  for (double w : a.norm_v()) CHECK(w > 0);
}

TEST_CASE("sizes") {
  CHECK_THROWS_AS(build_sbp_1d(8, 1.0), DomainError);
  CHECK_THROWS_AS(build_sbp_1d(12, 0.0), DomainError);
  CHECK_THROWS_AS(build_periodic_1d(3, 1.0), DomainError);
}

TEST_CASE("periodic operators") {
  const auto ops = build_periodic_1d(8, 1.0);
  std::vector<double> c(8, 2.5), out(8);
  ops.apply_dp(c, out);
  for (double v : out) CHECK(std::abs(v) < 1e-14);
  CHECK(ops.q_matrix().max_abs() == 0.0);
  CHECK(verify_sbp_structure(ops).structure_residual == 0.0);

  const double L = 3.0;
  auto err = [&](std::size_t n) {
    const double dx = L / n;
    const auto o = build_periodic_1d(n, dx);
    const double w = 2 * std::numbers::pi / L;
    const auto p = sample(n, 0.0, dx, [&](double x) { return std::sin(w * x); });
    std::vector<double> d(n);
    o.apply_dp(p, d);
    double e = 0;
    for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(d[i] - w * std::cos(w * (i + 0.5) * dx)) / w);
    return e;
  };
  const double e64 = err(64);
  CHECK(e64 <= std::pow(2 * std::numbers::pi / 64, 4));
  CHECK(err(32) / e64 == doctest::Approx(16.0).epsilon(0.02));
}

TEST_CASE("random energy identity P^T A_p D_v V + V^T A_v D_p P = boundary terms") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  const auto ops = build_sbp_1d(14, 0.37);
  std::vector<double> p(14), v(13), dv(14), dp(13);
  for (auto& x : p) x = nd(rng);
  for (auto& x : v) x = nd(rng);
  ops.apply_dv(v, dv);
  ops.apply_dp(p, dp);
  double lhs = 0, pl = 0, pr = 0;
  for (std::size_t i = 0; i < 14; ++i) lhs += p[i] * ops.norm_p()[i] * dv[i];
  for (std::size_t j = 0; j < 13; ++j) {
    lhs += v[j] * ops.norm_v()[j] * dp[j];
    pl += ops.proj_left()[j] * v[j];
    pr += ops.proj_right()[j] * v[j];
  }
  CHECK(lhs == doctest::Approx(-p[0] * pl + p[13] * pr).epsilon(1e-13));
}
