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

#include "sbpwave/verify_suites.hpp"

#include "sbpwave/sbp_operators_1d.hpp"
#include "sbpwave/transfer_operators.hpp"
#include "sbpwave/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sbpwave {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string ratio_label(SpacingRatio r) { return std::to_string(r.coarse) + ":" + std::to_string(r.fine); }

}  // namespace

Check make_check(std::string label, double value, double lo, double hi, std::string note) {
  const bool ok = std::isfinite(value) && value >= lo && value <= hi;
  return {std::move(label), value, lo, hi, ok, std::move(note)};
}

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string SuiteReport::text() const {
  std::ostringstream os;
  os << "[" << suite << "]\n";
  for (const auto& c : checks) {
    os << "  " << (c.pass ? "ok   " : "FAIL ") << c.label << " = " << fmt(c.value) << "  (accept [" << fmt(c.lo)
       << ", " << fmt(c.hi) << "])";
    if (!c.note.empty()) os << "  " << c.note;
    os << "\n";
  }
  for (const auto& l : info) os << "  " << l << "\n";
  os << "  verdict: " << (pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string SuiteReport::csv() const {
  std::ostringstream os;
  os << "label,value,lo,hi,pass\n";
  for (const auto& c : checks) os << c.label << "," << fmt(c.value) << "," << fmt(c.lo) << "," << fmt(c.hi) << "," << c.pass << "\n";
  return os.str();
}

SuiteReport verify_structure() {
  SuiteReport r{"structure", {}, {}};
  for (std::size_t n : {9u, 16u, 33u}) {
    const auto ex = build_sbp_1d_exact(n);
    const std::string tag = "n_p=" + std::to_string(n);
    r.checks.push_back(make_check("exact Q residual " + tag, to_double(exact_structure_residual(ex)), 0, 0));
    const auto rep = verify_sbp_structure(build_sbp_1d(n, 1.0 / static_cast<double>(n - 1)));
    r.checks.push_back(make_check("float Q relative residual " + tag, rep.structure_residual, 0, 1e-14));
    const auto q = ex.q();
    const Rational want[] = {rat(-15, 8), rat(5, 4), rat(-3, 8)};
    Rational dev = 0;
    for (std::size_t c = 0; c < q.cols; ++c) {
      const Rational w = c < 3 ? want[c] : Rational(0);
      dev = std::max(dev, Rational(abs(q(0, c) - w)));
    }
    r.checks.push_back(make_check("Q row 0 vs [-15/8, 5/4, -3/8, 0, ...] " + tag, to_double(dev), 0, 0));
  }
  const auto q = build_sbp_1d_exact(9).q();
  std::string row = "Q row 0 (n_p=9):";
  for (std::size_t c = 0; c < q.cols; ++c) row += " " + to_string(q(0, c));
  r.info.push_back(row);
  return r;
}

SuiteReport verify_exactness() {
  SuiteReport r{"exactness", {}, {}};
  const std::size_t n = 33;
  const auto ex = build_sbp_1d_exact(n);
  const std::size_t nv = n - 1;
  int dp_closure = 6, dp_interior = 6, dv_closure = 6, dv_interior = 6;
  for (std::size_t i = 0; i < nv; ++i) {
    const int d = exact_dp_row_degree(ex, i);
    const bool closure = i < closure::kDualRows || i + closure::kDualRows >= nv;
    (closure ? dp_closure : dp_interior) = std::min(closure ? dp_closure : dp_interior, d);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int d = exact_dv_row_degree(ex, i);
    const bool closure = i < closure::kPrimaryRows || i + closure::kPrimaryRows >= n;
    (closure ? dv_closure : dv_interior) = std::min(closure ? dv_closure : dv_interior, d);
  }
  r.checks.push_back(make_check("d_p closure rows min degree", dp_closure, 2, 6));
  r.checks.push_back(make_check("d_p interior rows min degree", dp_interior, 4, 6));
  r.checks.push_back(make_check("d_v closure rows min degree", dv_closure, 2, 6));
  r.checks.push_back(make_check("d_v interior rows min degree", dv_interior, 4, 6));
  r.checks.push_back(make_check("proj_left degree", exact_projection_degree(ex, true), 2, 6));
  r.checks.push_back(make_check("proj_right degree", exact_projection_degree(ex, false), 2, 6));
  for (auto ratio : shipped_ratios()) {
    const auto pair = shipped_pair(ratio);
    const auto cert = certify(pair);
    const auto tag = ratio_label(ratio);
    r.checks.push_back(make_check("transfer " + tag + " row-sum error", to_double(cert.row_sum_error), 0, 0));
    r.checks.push_back(make_check("transfer " + tag + " min row degree", cert.min_degree, 2, 6));
    r.checks.push_back(
        make_check("transfer " + tag + " constraint residual", to_double(cert.constraint_residual), 0, 0,
                   pair.support ? "derived, support " + std::to_string(pair.support) : "tabulated"));
  }
  return r;
}

SuiteReport verify_energy(std::size_t n_states) {
  SuiteReport r{"energy", {}, {}};
  const double tol = 1e-12, ctl = 1e-3, big = std::numeric_limits<double>::infinity();
  const SatCoefficients base;
  auto fs1 = [](const SatCoefficients& c) { return assemble_1d_boundary_system(build_sbp_1d(16, 1.0 / 15), c); };
  auto if1 = [](const SatCoefficients& c) {
    return assemble_1d_interface_system(build_sbp_1d(16, 1.0 / 15), build_sbp_1d(21, 1.0 / 40), c);
  };
  const auto blk = make_block(0, 1, 16, 0, 1, 17);
  auto fs2 = [&](const SatCoefficients& c) { return assemble_free_surface_system(blk, unit_coefficients(blk), c); };

  r.checks.push_back(make_check("(a) 1D free surface", energy_rate_oracle(fs1(base), n_states), 0, tol));
  r.checks.push_back(make_check("(b) 1D interface", energy_rate_oracle(if1(base), n_states), 0, tol));
  r.checks.push_back(make_check("(c) 2D single block", energy_rate_oracle(fs2(base), n_states), 0, tol));
  for (auto ratio : shipped_ratios())
    r.checks.push_back(make_check("(d) two blocks " + ratio_label(ratio),
                                  energy_rate_oracle(ratio_test_system(ratio), n_states), 0, tol));
  for (auto ratio : shipped_ratios())
    r.checks.push_back(make_check("(e) heterogeneous two blocks " + ratio_label(ratio),
                                  energy_rate_oracle(ratio_test_system(ratio, 17), n_states), 0, tol));

  SatCoefficients c = base;
  c.sigma_right = -1.0;
  r.checks.push_back(make_check("control: 1D sigma_R flipped", energy_rate_oracle(fs1(c), n_states), ctl, big));
  c = base;
  c.sigma_minus = 0.5;
  r.checks.push_back(make_check("control: 1D sigma^- flipped", energy_rate_oracle(if1(c), n_states), ctl, big));
  c = base;
  c.sigma_top = -1.0;
  r.checks.push_back(make_check("control: 2D sigma_T flipped", energy_rate_oracle(fs2(c), n_states), ctl, big));
  c = base;
  c.sigma_v_plus = 0.5;
  r.checks.push_back(make_check("control: 2:1 sigma_V^+ flipped",
                                energy_rate_oracle(ratio_test_system({2, 1}, std::nullopt, c), n_states), ctl, big));
  for (auto ratio : shipped_ratios())
    r.checks.push_back(make_check(
        "control: " + ratio_label(ratio) + " constraint broken",
        energy_rate_oracle(ratio_test_system(ratio, std::nullopt, base, broken_constraint_pair(ratio)), n_states), ctl,
        big, "one fine-to-coarse coefficient shifted by 1"));
  r.info.push_back("relative measure: |dE/dt| / (|state|_W |rate|_W), " + std::to_string(n_states) + " states each");
  return r;
}

SuiteReport verify_convergence(const ConvergenceOptions& o) {
  SuiteReport r{"convergence", {}, {}};
  const auto u = convergence_study(ConvergenceScenario::Uniform, o.ladder, o.dt, o.t_final);
  const auto t = convergence_study(ConvergenceScenario::TwoBlock, o.ladder, o.dt, o.t_final);
  for (std::size_t k = 0; k < o.ladder.size(); ++k) {
    const auto n = std::to_string(o.ladder[k]);
    r.info.push_back("n=" + n + "  uniform error " + fmt(u.errors[k]) + "  two-block error " + fmt(t.errors[k]));
  }
  for (std::size_t k = 0; k < u.rates.size(); ++k) {
    const auto step = std::to_string(o.ladder[k]) + "->" + std::to_string(o.ladder[k + 1]);
    r.checks.push_back(make_check("uniform rate " + step, u.rates[k], 3.0, 4.0));
    r.checks.push_back(make_check("two-block rate " + step, t.rates[k], 3.0, 4.0));
    r.checks.push_back(make_check("rate difference " + step, std::abs(u.rates[k] - t.rates[k]), 0, 0.1));
  }
  return r;
}

SuiteReport verify_cfl() {
  SuiteReport r{"cfl", {}, {}};
  auto add = [&](const std::string& label, const CflResult& c, double target, double tol) {
    r.checks.push_back(make_check(label, c.ratio(), target - tol, target + tol,
                                  "bracket [" + fmt(c.dt_stable) + ", " + fmt(c.dt_unstable) + "]"));
  };
  const std::size_t n = 64;
  const double dx = 1.0 / n;
  add("1D periodic", find_cfl(System1D({build_periodic_1d(n, dx)}, {}), dx), 6.0 / 7.0, 0.005);
  add("1D SBP-SAT", find_cfl(assemble_1d_boundary_system(build_sbp_1d(n + 1, dx), {}), dx), 0.635, 0.01);
  const std::size_t m = 40;
  add("2D periodic", find_cfl(assemble_periodic_2d_system(m, m, 1.0 / m), 1.0 / m), 0.6061, 0.01);
  const auto blk = make_block(0, 1, m, 0, 1, m + 1);
  add("2D SBP-SAT", find_cfl(assemble_free_surface_system(blk, unit_coefficients(blk)), 1.0 / m), 0.5105, 0.01);
  return r;
}

SuiteReport verify_stability(const StabilityOptions& o) {
  SuiteReport r{"stability", {}, {}};
  auto one = [&](const std::string& name, const SeismicScenario& sc, const std::optional<ElementalStencilPair>& elem,
                 bool counted) {
    const auto rep = assess_stability(sc, run_scenario(sc, o.n_steps, true, elem));
    const std::string head = name + " (" + std::to_string(o.n_steps) + " steps)";
    if (counted) {
      r.checks.push_back(make_check(head + " tail/overall max|p|", rep.max_abs_tail / rep.max_abs_all, 0, 1));
      r.checks.push_back(make_check(head + " post-source energy drift", rep.energy_drift, 0, 1e-3));
      r.checks.push_back(make_check(head + " verdict stable", rep.stable ? 1 : 0, 1, 1));
    }
    r.info.push_back(head + ": max|p| " + fmt(rep.max_abs_all) + ", tail " + fmt(rep.max_abs_tail) + ", drift " +
                     fmt(rep.energy_drift) + ", relative slope " + fmt(rep.energy_slope) + "/s, verdict " +
                     (rep.stable ? "stable" : "unstable"));
  };
  one("two-layer 2:1", scenario_two_layer(), std::nullopt, true);
  one("linear 6:5", scenario_linear_gradient(), std::nullopt, true);
  if (o.broken_control)
    one("control: linear 6:5, constraint broken", scenario_linear_gradient(), broken_constraint_pair({6, 5}), false);
  return r;
}

SuiteReport verify_agreement(std::size_t n_steps) {
  SuiteReport r{"agreement", {}, {}};
  const auto ref = run_scenario(scenario_linear_uniform(), n_steps, false).trace;
  const double fine = relative_misfit(run_scenario(scenario_linear_gradient(), n_steps, false).trace, ref);
  const double coarse = relative_misfit(run_scenario(scenario_linear_coarse(), n_steps, false).trace, ref);
  const double split = relative_misfit(run_scenario(scenario_linear_conforming(), n_steps, false).trace, ref);
  r.checks.push_back(make_check("6:5 vs uniform misfit", fine, 0, 0.05));
  r.checks.push_back(make_check("2:1 coarse vs uniform misfit", coarse, 0, 0.1));
  r.checks.push_back(make_check("2:1 misfit / 6:5 misfit", coarse / fine, 1, std::numeric_limits<double>::infinity()));
  r.checks.push_back(make_check("1:1 split vs single grid misfit", split, 0, 1e-8));
  return r;
}

}  // namespace sbpwave
