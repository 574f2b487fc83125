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
#include "sbpwave/verification.hpp"

#include <cmath>

using namespace sbpwave;

namespace {

// max |matrix-free - explicit| / max |explicit| over both halves.
double explicit_mismatch(const SemiDiscreteSystem& sys) {
  const auto a = assemble_explicit(sys);
  std::vector<double> p(sys.pressure_size()), vel(sys.velocity_size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::sin(0.37 * k + 1);
  for (std::size_t k = 0; k < vel.size(); ++k) vel[k] = std::cos(0.21 * k);
  std::vector<double> dv(vel.size()), dp(p.size());
  sys.velocity_rhs(p, dv);
  sys.pressure_rhs(vel, dp);
  const auto dv2 = a.velocity * p;
  const auto dp2 = a.pressure * vel;
  double diff = 0, scale = 0;
  for (std::size_t k = 0; k < dv.size(); ++k) {
    diff = std::max(diff, std::abs(dv[k] - dv2[k]));
    scale = std::max(scale, std::abs(dv2[k]));
  }
  for (std::size_t k = 0; k < dp.size(); ++k) {
    diff = std::max(diff, std::abs(dp[k] - dp2[k]));
    scale = std::max(scale, std::abs(dp2[k]));
  }
  return diff / scale;
}

}  // namespace

TEST_CASE("matrix-free rhs equals the explicit Kronecker assembly") {
  const auto blk = make_block(0, 1, 16, 0, 1, 17);
  CHECK(explicit_mismatch(assemble_free_surface_system(blk, unit_coefficients(blk))) <= 1e-14);
  CHECK(explicit_mismatch(assemble_free_surface_system(blk, random_coefficients(assemble_2d_block(blk), 5))) <=
        1e-14);
  for (auto r : shipped_ratios()) {
    CAPTURE(r.coarse);
    CHECK(explicit_mismatch(ratio_test_system(r)) <= 1e-14);
    CHECK(explicit_mismatch(ratio_test_system(r, 9)) <= 1e-14);
  }
}

TEST_CASE("explicit assembly refuses large blocks") {
  const auto blk = make_block(0, 1, 65, 0, 1, 65);
  CHECK_THROWS_AS(assemble_explicit(assemble_free_surface_system(blk, unit_coefficients(blk))), SizeError);
}

TEST_CASE("manufactured solution satisfies the boundary condition") {
  for (double x : {0.1, 0.33, 0.9}) {
    CHECK(std::abs(ManufacturedSolution::p(x, 0.0, 0.3)) < 1e-15);
    CHECK(std::abs(ManufacturedSolution::p(x, 1.0, 0.3)) < 1e-14);
  }
  CHECK(ManufacturedSolution::u(0.0, 0.125, 0.0) == 0.0);
}

TEST_CASE("short convergence ladder") {
  const auto u = convergence_study(ConvergenceScenario::Uniform, {16, 32}, 1e-4, 0.05);
  const auto t = convergence_study(ConvergenceScenario::TwoBlock, {16, 32}, 1e-4, 0.05);
  REQUIRE(u.rates.size() == 1);
  CHECK(u.rates[0] >= 3.0);
  CHECK(u.rates[0] <= 4.0);
  CHECK(std::abs(u.rates[0] - t.rates[0]) <= 0.1);
  CHECK_THROWS_AS(manufactured_spec(ConvergenceScenario::TwoBlock, 15), DomainError);
}

TEST_CASE("scenario geometry") {
  const auto m = build_model(scenario_two_layer().spec);
  REQUIRE(m.layout);
  CHECK(m.layout->ratio == SpacingRatio{2, 1});
  CHECK(build_model(scenario_linear_gradient().spec).layout->ratio == SpacingRatio{6, 5});
  CHECK(build_model(scenario_linear_coarse().spec).layout->ratio == SpacingRatio{2, 1});
  const auto s = scenario_linear_gradient();
  CHECK_NOTHROW(locate_p(m, s.source));
  CHECK_NOTHROW(locate_p(m, s.receiver));
}

TEST_CASE("stability verdict") {
  SeismicScenario sc;
  sc.dt = 0.01;
  TraceRun flat;
  flat.trace.assign(1000, 0.0);
  flat.trace[100] = 1.0;
  flat.energy.assign(999, 2.0);
  CHECK(assess_stability(sc, flat).stable);

  TraceRun drifting = flat;
  for (std::size_t k = 0; k < drifting.energy.size(); ++k) drifting.energy[k] = 2.0 + 1e-3 * k;
  const auto r = assess_stability(sc, drifting);
  CHECK_FALSE(r.stable);
  CHECK(r.energy_slope > 0);

  TraceRun growing = flat;
  for (std::size_t k = 0; k < growing.trace.size(); ++k) growing.trace[k] = std::exp(0.01 * k);
  CHECK(assess_stability(sc, growing).max_abs_tail == assess_stability(sc, growing).max_abs_all);
}

TEST_CASE("relative misfit") {
  CHECK(relative_misfit({1, 2}, {1, 2}) == 0.0);
  CHECK(relative_misfit({0, 0}, {3, 4}) == 1.0);
  CHECK_THROWS_AS(relative_misfit({1}, {1, 2}), ShapeError);
}

TEST_CASE("1:1 split approaches the single grid under refinement") {
  // The interface closures differ from the interior stencil, so the split is
  // not identical to the single grid; the difference shrinks with h.
  const double coarse = conforming_split_misfit(20, 11, 11, 80);
  const double fine = conforming_split_misfit(40, 21, 21, 160);
  CHECK(coarse > 1e-8);
  CHECK(std::log2(coarse / fine) >= 2.0);
}
