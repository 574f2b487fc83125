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
#include "sbpwave/sat_assembly.hpp"
#include "sbpwave/verification.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

using namespace sbpwave;

namespace {

constexpr double kTol = 1e-12;
constexpr double kControl = 1e-3;

System1D free_surface_1d(const SatCoefficients& c = {}) {
  return assemble_1d_boundary_system(build_sbp_1d(16, 1.0 / 15), c);
}

System1D interface_1d(const SatCoefficients& c = {}) {
  return assemble_1d_interface_system(build_sbp_1d(16, 1.0 / 15), build_sbp_1d(21, 1.0 / 40), c);
}

SemiDiscreteSystem single_block(const SatCoefficients& c = {}) {
  const auto blk = make_block(0, 1, 16, 0, 1, 17);
  return assemble_free_surface_system(blk, unit_coefficients(blk), c);
}

}  // namespace

TEST_CASE("default penalties satisfy the conservation conditions") {
  const SatCoefficients c;
  CHECK(c.boundary_defect() == 0.0);
  CHECK(c.interface_1d_defect() == 0.0);
  CHECK(c.interface_2d_defect() == 0.0);
  SatCoefficients bad;
  bad.sigma_p_plus = -0.25;
  CHECK(bad.interface_2d_defect() > 0.1);
}

TEST_CASE("1D free surface conserves energy") {
  CHECK(energy_rate_oracle(free_surface_1d()) <= kTol);
  SatCoefficients flipped;
  flipped.sigma_right = -1.0;
  CHECK(energy_rate_oracle(free_surface_1d(flipped)) >= kControl);
}

TEST_CASE("1D interface conserves energy") {
  CHECK(energy_rate_oracle(interface_1d()) <= kTol);
  SatCoefficients flipped;
  flipped.sigma_minus = 0.5;
  CHECK(energy_rate_oracle(interface_1d(flipped)) >= kControl);
}

TEST_CASE("2D single block conserves energy") {
  CHECK(energy_rate_oracle(single_block()) <= kTol);
  const auto blk = make_block(0, 1, 16, 0, 1, 17);
  const auto het = assemble_free_surface_system(blk, random_coefficients(assemble_2d_block(blk), 3));
  CHECK(energy_rate_oracle(het) <= kTol);
  SatCoefficients flipped;
  flipped.sigma_top = -1.0;
  CHECK(energy_rate_oracle(single_block(flipped)) >= kControl);
}

TEST_CASE("two blocks conserve energy for every shipped ratio") {
  for (auto r : shipped_ratios()) {
    CAPTURE(r.coarse);
    CAPTURE(r.fine);
    CHECK(energy_rate_oracle(ratio_test_system(r)) <= kTol);
    CHECK(energy_rate_oracle(ratio_test_system(r, 11)) <= kTol);
    CHECK(energy_rate_oracle(ratio_test_system(r, std::nullopt, {}, broken_constraint_pair(r))) >= kControl);
  }
  SatCoefficients flipped;
  flipped.sigma_v_plus = 0.5;
  CHECK(energy_rate_oracle(ratio_test_system({2, 1}, std::nullopt, flipped)) >= kControl);
}

TEST_CASE("D_y^V differentiates y^2 exactly") {
  const auto blk = make_block(0, 1, 8, 0, 1, 17);
  const auto ops = assemble_2d_block(blk);
  std::vector<double> v(ops.v_shape().size()), out(ops.p_shape().size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto [i, j] = ops.v_shape().unindex(k);
    const double y = blk.v_point(i, j).y;
    v[k] = y * y;
  }
  ops.apply_dy_v(v, out);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto [i, j] = ops.p_shape().unindex(k);
    CHECK(out[k] == doctest::Approx(2 * blk.p_point(i, j).y).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("norm weights integrate constants to the block area") {
  const auto blk = make_block(0, 0.96, 60, 0, 0.48, 31);
  const auto ops = assemble_2d_block(blk);
  for (const auto* w : {&ops.a_p(), &ops.a_u(), &ops.a_v()})
    CHECK(std::accumulate(w->begin(), w->end(), 0.0) == doctest::Approx(0.96 * 0.48).epsilon(1e-13));
}

TEST_CASE("periodic x derivative is fourth order") {
  auto err = [](std::size_t n) {
    const auto blk = make_block(0, 1, n, 0, 1, 9);
    const auto ops = assemble_2d_block(blk);
    std::vector<double> p(ops.p_shape().size()), u(ops.u_shape().size());
    for (std::size_t k = 0; k < p.size(); ++k) {
      const auto [i, j] = ops.p_shape().unindex(k);
      p[k] = std::sin(2 * std::numbers::pi * blk.p_point(i, j).x);
    }
    ops.apply_dx_p(p, u);
    double e = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      const auto [i, j] = ops.u_shape().unindex(k);
      e = std::max(e, std::abs(u[k] - 2 * std::numbers::pi * std::cos(2 * std::numbers::pi * blk.u_point(i, j).x)));
    }
    return e;
  };
  CHECK(err(32) / err(64) == doctest::Approx(16.0).epsilon(0.02));
}

TEST_CASE("constant medium scales the unit right-hand side") {
  const auto blk = make_block(0, 1, 12, 0, 1, 13);
  const auto unit = assemble_free_surface_system(blk, unit_coefficients(blk));
  const auto scaled = assemble_free_surface_system(blk, sample_coefficients(MediumSpec::constant({2.0, 3.0}), blk));
  std::vector<double> p(unit.pressure_size()), vel(unit.velocity_size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::sin(0.3 * k);
  for (std::size_t k = 0; k < vel.size(); ++k) vel[k] = std::cos(0.7 * k);
  std::vector<double> a(vel.size()), b(vel.size()), c(p.size()), d(p.size());
  unit.velocity_rhs(p, a);
  scaled.velocity_rhs(p, b);
  unit.pressure_rhs(vel, c);
  scaled.pressure_rhs(vel, d);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(b[k] == doctest::Approx(a[k] / 2.0).epsilon(1e-14));
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(d[k] == doctest::Approx(c[k] * 18.0).epsilon(1e-14));
}

TEST_CASE("interface assembly rejects mismatched transfer operators") {
  const auto bottom = make_block(0, 1, 16, 0, 0.5, 9);
  const auto top = make_block(0, 1, 32, 0.5, 1.0, 17);
  const auto layout = build_layout(top, bottom, 0.5);
  const auto wrong = tile_periodic(shipped_pair({2, 1}), 8, 16);
  CHECK_THROWS_AS(assemble_interface_system(layout, wrong, unit_coefficients(bottom), unit_coefficients(top)),
                  ShapeError);
}
