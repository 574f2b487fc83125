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
#include "sbpwave/leapfrog_solver.hpp"
#include "sbpwave/verification.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace sbpwave;

namespace {

SemiDiscreteSystem small_block() {
  const auto blk = make_block(0, 1, 20, 0, 1, 21);
  return assemble_free_surface_system(blk, unit_coefficients(blk));
}

double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0, den = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += (a[k] - b[k]) * (a[k] - b[k]);
    den += b[k] * b[k];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("ricker wavelet") {
  CHECK(ricker(0.25, 5.0, 0.25) == 1.0);
  const double zero = 0.25 + 1.0 / (std::numbers::pi * 5.0 * std::numbers::sqrt2);
  CHECK(std::abs(ricker(zero, 5.0, 0.25)) < 1e-15);
  CHECK(ricker(0.2, 5.0, 0.25) == doctest::Approx(ricker(0.3, 5.0, 0.25)));
  CHECK(std::abs(ricker(0.0, 5.0, 0.25)) < 1e-5);
}

TEST_CASE("zero amplitude gives zero traces") {
  const auto sys = small_block();
  const auto res = run(sys, {0.01, 100}, {{100, 5.0, 0.25, 0.0}}, {{130}}, zero_state(sys));
  for (double v : res.seismograms[0]) CHECK(v == 0.0);
  for (double e : res.energy) CHECK(e == 0.0);
}

TEST_CASE("doubling the amplitude doubles the trace") {
  const auto sys = small_block();
  const auto a = run(sys, {0.01, 150}, {{100, 5.0, 0.25, 1.0}}, {{130}}, zero_state(sys));
  const auto b = run(sys, {0.01, 150}, {{100, 5.0, 0.25, 2.0}}, {{130}}, zero_state(sys));
  bool any = false;
  for (std::size_t n = 0; n < a.seismograms[0].size(); ++n) {
    CHECK(b.seismograms[0][n] == doctest::Approx(2 * a.seismograms[0][n]).epsilon(1e-14));
    any = any || a.seismograms[0][n] != 0.0;
  }
  CHECK(any);
}

TEST_CASE("source-free leapfrog is time reversible") {
  const auto sys = small_block();
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  SimState s = zero_state(sys);
  for (double& v : s.p) v = nd(rng);
  for (double& v : s.vel) v = nd(rng);
  const SimState s0 = s;
  const LeapfrogSolver solver(sys, 0.01);
  for (int n = 0; n < 500; ++n) solver.step(s);
  for (int n = 0; n < 500; ++n) solver.step_backward(s);
  CHECK(s.step == 0);
  CHECK(rel_diff(s.p, s0.p) <= 1e-10);
  CHECK(rel_diff(s.vel, s0.vel) <= 1e-10);
  CHECK_THROWS_AS(solver.step_backward(s), DomainError);
}

TEST_CASE("averaged energy stays bounded without a source") {
  const auto sys = small_block();
  SimState s = zero_state(sys);
  for (std::size_t k = 0; k < s.p.size(); ++k) s.p[k] = std::exp(-0.01 * ((k % 21) - 10.0) * ((k % 21) - 10.0));
  const auto res = run(sys, {0.02, 2000}, {}, {}, s);
  const double e0 = res.energy.front();
  for (double e : res.energy) CHECK(std::abs(e - e0) / e0 < 1e-2);
}

TEST_CASE("run validates its inputs") {
  const auto sys = small_block();
  CHECK_THROWS_AS(run(sys, {0.01, 1}, {{100000}}, {}, zero_state(sys)), DomainError);
  CHECK_THROWS_AS(run(sys, {0.01, 1}, {}, {{100000}}, zero_state(sys)), DomainError);
  SimState bad = zero_state(sys);
  bad.p.pop_back();
  CHECK_THROWS_AS(run(sys, {0.01, 1}, {}, {}, bad), ShapeError);
  CHECK_THROWS_AS(LeapfrogSolver(sys, -1.0), DomainError);
}

TEST_CASE("periodic 1D time-step limit") {
  const std::size_t n = 32;
  const System1D sys({build_periodic_1d(n, 1.0 / n)}, {});
  const auto r = find_cfl(sys, 1.0 / n);
  CHECK(r.dt_unstable - r.dt_stable <= 1e-3);
  CHECK(r.ratio() == doctest::Approx(6.0 / 7.0).epsilon(0.005 / (6.0 / 7.0)));
}
