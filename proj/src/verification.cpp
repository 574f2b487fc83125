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

#include "sbpwave/verification.hpp"

#include "sbpwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace sbpwave {

namespace {

constexpr double kPi = std::numbers::pi;
const double kOmega = 4.0 * kPi * std::numbers::sqrt2;

}  // namespace

double ManufacturedSolution::p(double x, double y, double t) {
  return std::sin(4 * kPi * x) * std::sin(4 * kPi * y) * std::cos(kOmega * t);
}

double ManufacturedSolution::u(double x, double y, double t) {
  return -0.5 * std::numbers::sqrt2 * std::cos(4 * kPi * x) * std::sin(4 * kPi * y) * std::sin(kOmega * t);
}

double ManufacturedSolution::v(double x, double y, double t) {
  return -0.5 * std::numbers::sqrt2 * std::sin(4 * kPi * x) * std::cos(4 * kPi * y) * std::sin(kOmega * t);
}

double weighted_l2_error(std::span<const double> p, std::span<const double> vel, std::span<const double> p_exact,
                         std::span<const double> vel_exact, std::span<const double> w_p, std::span<const double> w_v) {
  if (p.size() != p_exact.size() || p.size() != w_p.size() || vel.size() != vel_exact.size() ||
      vel.size() != w_v.size())
    throw ShapeError("weighted_l2_error: shape mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) s += w_p[k] * (p[k] - p_exact[k]) * (p[k] - p_exact[k]);
  for (std::size_t k = 0; k < vel.size(); ++k) s += w_v[k] * (vel[k] - vel_exact[k]) * (vel[k] - vel_exact[k]);
  return std::sqrt(s);
}

ModelSpec manufactured_spec(ConvergenceScenario scenario, std::size_t cells) {
  ModelSpec spec;
  spec.width = 1.0;
  spec.medium = MediumSpec::constant({1.0, 1.0});
  if (scenario == ConvergenceScenario::Uniform) {
    spec.blocks = {{cells, cells + 1, 0.0, 1.0}};
  } else {
    if (cells % 2 != 0) throw DomainError("two-block study needs an even cell count");
    spec.blocks = {{cells, cells / 2 + 1, 0.0, 0.5}, {2 * cells, cells + 1, 0.5, 1.0}};
  }
  return spec;
}

double manufactured_error(ConvergenceScenario scenario, std::size_t cells, double dt, double t_final) {
  const Model model = build_model(manufactured_spec(scenario, cells));
  const auto n_steps = static_cast<std::size_t>(std::llround(t_final / dt));
  using M = ManufacturedSolution;
  SimState s = zero_state(model.system);
  const double tv0 = -0.5 * dt;
  sample_fields(
      model, [](double x, double y) { return M::p(x, y, 0.0); }, [&](double x, double y) { return M::u(x, y, tv0); },
      [&](double x, double y) { return M::v(x, y, tv0); }, s.p, s.vel);
  RunOptions opt;
  opt.record_energy = false;
  const auto res = run(model.system, {dt, n_steps}, {}, {}, std::move(s), opt);
  const double tp = static_cast<double>(n_steps) * dt, tv = tp - 0.5 * dt;
  std::vector<double> pe, ve;
  sample_fields(
      model, [&](double x, double y) { return M::p(x, y, tp); }, [&](double x, double y) { return M::u(x, y, tv); },
      [&](double x, double y) { return M::v(x, y, tv); }, pe, ve);
  // Unit coefficients: the energy weights are the norms.
  return weighted_l2_error(res.final_state.p, res.final_state.vel, pe, ve, model.system.pressure_weights(),
                           model.system.velocity_weights());
}

ConvergenceReport convergence_study(ConvergenceScenario scenario, const std::vector<std::size_t>& cells, double dt,
                                    double t_final) {
  ConvergenceReport r{scenario, cells, {}, {}};
  for (auto n : cells) r.errors.push_back(manufactured_error(scenario, n, dt, t_final));
  for (std::size_t k = 0; k + 1 < r.errors.size(); ++k) r.rates.push_back(std::log2(r.errors[k] / r.errors[k + 1]));
  return r;
}

// ---------------------------------------------------------------------------
// Explicit assembly

namespace {

SparseMatrix column(const std::vector<double>& v) { return SparseMatrix::from_dense(v.size(), 1, v); }

SparseMatrix unit_row(std::size_t n, std::size_t k) {
  return SparseMatrix::from_triplets(1, n, {{0, k, 1.0}});
}

std::vector<double> divided(const std::vector<double>& a, const std::vector<double>& w) {
  std::vector<double> r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] / w[k];
  return r;
}

std::vector<double> inverse(const std::vector<double>& a) {
  std::vector<double> r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = 1.0 / a[k];
  return r;
}

}  // namespace

AssembledSystem assemble_explicit(const SemiDiscreteSystem& system) {
  const auto& sc = system.coefficients();
  const std::size_t nb = system.block_count();
  for (std::size_t b = 0; b < nb; ++b)
    if (system.block(b).ops.p_shape().size() > kDenseCap)
      throw SizeError("assemble_explicit: block exceeds the 64 x 64 point cap");

  std::vector<std::size_t> p_sizes, vel_sizes;
  for (std::size_t b = 0; b < nb; ++b) {
    const auto& ops = system.block(b).ops;
    p_sizes.push_back(ops.p_shape().size());
    vel_sizes.push_back(ops.u_shape().size());
    vel_sizes.push_back(ops.v_shape().size());
  }
  // velocity: rows (U_b, V_b), cols P_b. pressure: rows P_b, cols (U_b, V_b).
  std::vector<std::vector<SparseMatrix>> vel(2 * nb, std::vector<SparseMatrix>(nb));
  std::vector<std::vector<SparseMatrix>> pre(nb, std::vector<SparseMatrix>(2 * nb));

  for (std::size_t b = 0; b < nb; ++b) {
    const auto& blk = system.block(b);
    const auto& x = blk.ops.x();
    const auto& y = blk.ops.y();
    const auto ix = SparseMatrix::identity(x.n_p());
    const auto iy = SparseMatrix::identity(y.n_p());

    SparseMatrix du = blk.ops.dx_p_matrix().scaled(-1.0);
    if (!x.periodic()) {
      du = du + kron(column(divided(x.proj_left(), x.norm_v())) * unit_row(x.n_p(), 0), iy).scaled(sc.sigma_left);
      du = du + kron(column(divided(x.proj_right(), x.norm_v())) * unit_row(x.n_p(), x.n_p() - 1), iy)
                    .scaled(sc.sigma_right);
    }
    SparseMatrix dv = blk.ops.dy_p_matrix().scaled(-1.0);
    if (!y.periodic()) {
      if (blk.bottom == EdgeKind::FreeSurface)
        dv = dv + kron(ix, column(divided(y.proj_left(), y.norm_v())) * unit_row(y.n_p(), 0)).scaled(sc.sigma_bottom);
      if (blk.top == EdgeKind::FreeSurface)
        dv = dv + kron(ix, column(divided(y.proj_right(), y.norm_v())) * unit_row(y.n_p(), y.n_p() - 1))
                      .scaled(sc.sigma_top);
    }
    vel[2 * b][b] = du;
    vel[2 * b + 1][b] = dv;
    pre[b][2 * b] = blk.ops.dx_u_matrix().scaled(-1.0);
    pre[b][2 * b + 1] = blk.ops.dy_v_matrix().scaled(-1.0);
  }

  if (system.interface()) {
    const auto& t = *system.interface();
    const auto& bo = system.block(0).ops;
    const auto& to = system.block(1).ops;
    const auto ixb = SparseMatrix::identity(bo.x().n_p());
    const auto ixt = SparseMatrix::identity(to.x().n_p());
    const std::size_t nyb = bo.y().n_p(), nyt = to.y().n_p();
    const auto pick_b = kron(ixb, unit_row(nyb, nyb - 1));  // p trace, bottom block
    const auto pick_t = kron(ixt, unit_row(nyt, 0));
    const auto proj_b = kron(ixb, column(bo.y().proj_right()).transpose());  // v trace
    const auto proj_t = kron(ixt, column(to.y().proj_left()).transpose());
    const auto spread_vb = kron(ixb, column(divided(bo.y().proj_right(), bo.y().norm_v())));
    const auto spread_vt = kron(ixt, column(divided(to.y().proj_left(), to.y().norm_v())));
    const auto spread_pb = pick_b.transpose().scaled(1.0 / bo.y().norm_p().back());
    const auto spread_pt = pick_t.transpose().scaled(1.0 / to.y().norm_p().front());

    vel[1][1] = (spread_vb * t.top_to_bottom * pick_t).scaled(sc.sigma_v_minus);
    vel[1][0] = vel[1][0] - (spread_vb * pick_b).scaled(sc.sigma_v_minus);
    vel[3][1] = vel[3][1] + (spread_vt * pick_t).scaled(sc.sigma_v_plus);
    vel[3][0] = (spread_vt * t.bottom_to_top * pick_b).scaled(-sc.sigma_v_plus);

    pre[0][3] = (spread_pb * t.top_to_bottom * proj_t).scaled(sc.sigma_p_minus);
    pre[0][1] = pre[0][1] - (spread_pb * proj_b).scaled(sc.sigma_p_minus);
    pre[1][3] = pre[1][3] + (spread_pt * proj_t).scaled(sc.sigma_p_plus);
    pre[1][1] = (spread_pt * t.bottom_to_top * proj_b).scaled(-sc.sigma_p_plus);
  }

  std::vector<double> inv_vel, inv_p;
  for (std::size_t b = 0; b < nb; ++b) {
    const auto& c = system.block(b).coef;
    auto iu = inverse(c.c_u), iv = inverse(c.c_v), ip = inverse(c.c_p);
    inv_vel.insert(inv_vel.end(), iu.begin(), iu.end());
    inv_vel.insert(inv_vel.end(), iv.begin(), iv.end());
    inv_p.insert(inv_p.end(), ip.begin(), ip.end());
  }
  return {block_matrix(vel, vel_sizes, p_sizes).row_scaled(inv_vel),
          block_matrix(pre, p_sizes, vel_sizes).row_scaled(inv_p)};
}

double energy_rate_oracle(const WaveOperator& system, std::size_t n_states, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> p(system.pressure_size()), vel(system.velocity_size());
  std::vector<double> dp(p.size()), dvel(vel.size());
  const auto& wp = system.pressure_weights();
  const auto& wv = system.velocity_weights();
  double worst = 0.0;
  for (std::size_t s = 0; s < n_states; ++s) {
    for (double& x : p) x = nd(rng);
    for (double& x : vel) x = nd(rng);
    system.velocity_rhs(p, dvel);
    system.pressure_rhs(vel, dp);
    double rate = 0.0, ns = 0.0, nr = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      rate += wp[k] * p[k] * dp[k];
      ns += wp[k] * p[k] * p[k];
      nr += wp[k] * dp[k] * dp[k];
    }
    for (std::size_t k = 0; k < vel.size(); ++k) {
      rate += wv[k] * vel[k] * dvel[k];
      ns += wv[k] * vel[k] * vel[k];
      nr += wv[k] * dvel[k] * dvel[k];
    }
    worst = std::max(worst, std::abs(rate) / std::sqrt(ns * nr));
  }
  return worst;
}

CoefficientDiagonals random_coefficients(const Block2DOperators& ops, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  CoefficientDiagonals c;
  c.c_p.resize(ops.p_shape().size());
  c.c_u.resize(ops.u_shape().size());
  c.c_v.resize(ops.v_shape().size());
  for (auto* d : {&c.c_p, &c.c_u, &c.c_v})
    for (double& x : *d) x = u(rng);
  return c;
}

SemiDiscreteSystem ratio_test_system(SpacingRatio ratio, std::optional<std::uint64_t> hetero_seed,
                                     const SatCoefficients& coeffs, const std::optional<ElementalStencilPair>& elemental) {
  const auto m = static_cast<std::size_t>(ratio.coarse), n = static_cast<std::size_t>(ratio.fine);
  const std::size_t nx_c = n * ((16 + n - 1) / n), nx_f = nx_c / n * m;
  const double dx_c = 1.0 / static_cast<double>(nx_c), dx_f = 1.0 / static_cast<double>(nx_f);
  const double y_if = 8 * dx_c;
  const auto bottom = make_block(0.0, 1.0, nx_c, 0.0, y_if, 9);
  const auto top = make_block(0.0, 1.0, nx_f, y_if, y_if + 16 * dx_f, 17);
  const auto layout = build_layout(top, bottom, y_if);
  const auto transfer = tile_periodic(elemental ? *elemental : shipped_pair(ratio), nx_c, nx_f);
  auto cb = unit_coefficients(bottom), ct = unit_coefficients(top);
  if (hetero_seed) {
    cb = random_coefficients(assemble_2d_block(bottom), *hetero_seed);
    ct = random_coefficients(assemble_2d_block(top), *hetero_seed + 1);
  }
  return assemble_interface_system(layout, transfer, cb, ct, coeffs);
}

ElementalStencilPair broken_constraint_pair(SpacingRatio ratio, double delta) {
  auto pair = shipped_pair(ratio);
  auto& e = pair.fine_to_coarse.at(0).at(0);
  e.value += Rational(static_cast<std::int64_t>(std::llround(delta * 1024)), 1024);
  return pair;
}

// ---------------------------------------------------------------------------
// Seismic scenarios

namespace {

constexpr double kWidth = 0.96;
constexpr double kTop = 0.96;

SeismicScenario base_scenario() {
  SeismicScenario s;
  s.spec.width = kWidth;
  s.source = {0.04, kTop - 0.04};
  s.receiver = {kWidth - 0.04, kTop - 0.04};
  return s;
}

MediumSpec linear_medium() { return MediumSpec::vertical_linear({0.5, 1.0}, kTop, {1.0, 2.0}, 0.0); }

}  // namespace

SeismicScenario scenario_two_layer() {
  auto s = base_scenario();
  s.spec.blocks = {{60, 31, 0.0, 0.48}, {120, 61, 0.48, kTop}};
  s.spec.medium = MediumSpec::two_layer({0.5, 1.0}, {1.0, 2.0}, 0.48);
  return s;
}

SeismicScenario scenario_linear_gradient() {
  auto s = base_scenario();
  s.spec.blocks = {{100, 81, 0.0, 0.768}, {120, 25, 0.768, kTop}};
  s.spec.medium = linear_medium();
  return s;
}

SeismicScenario scenario_linear_uniform() {
  auto s = base_scenario();
  s.spec.blocks = {{120, 121, 0.0, kTop}};
  s.spec.medium = linear_medium();
  return s;
}

SeismicScenario scenario_linear_coarse() {
  auto s = base_scenario();
  s.spec.blocks = {{60, 49, 0.0, 0.768}, {120, 25, 0.768, kTop}};
  s.spec.medium = linear_medium();
  return s;
}

SeismicScenario scenario_linear_conforming() {
  auto s = base_scenario();
  s.spec.blocks = {{120, 97, 0.0, 0.768}, {120, 25, 0.768, kTop}};
  s.spec.medium = linear_medium();
  return s;
}

SeismicScenario stability_scenario(StabilityScenario s) {
  return s == StabilityScenario::TwoLayer ? scenario_two_layer() : scenario_linear_gradient();
}

TraceRun run_scenario(const SeismicScenario& scenario, std::size_t n_steps, bool record_energy,
                      const std::optional<ElementalStencilPair>& elemental) {
  const Model model = build_model(scenario.spec, elemental);
  const PointSource src{locate_p(model, scenario.source), scenario.f0, scenario.t0, 1.0};
  const Receiver rec{locate_p(model, scenario.receiver)};
  RunOptions opt;
  opt.record_energy = record_energy;
  auto res = run(model.system, {scenario.dt, n_steps}, {src}, {rec}, zero_state(model.system), opt);
  return {std::move(res.seismograms[0]), std::move(res.energy)};
}

StabilityReport assess_stability(const SeismicScenario& scenario, TraceRun run) {
  StabilityReport r;
  const auto& tr = run.trace;
  const std::size_t n = tr.size();
  const std::size_t tail = std::max<std::size_t>(1, n / 10);
  for (std::size_t k = 0; k < n; ++k) {
    r.max_abs_all = std::max(r.max_abs_all, std::abs(tr[k]));
    if (k + tail >= n) r.max_abs_tail = std::max(r.max_abs_tail, std::abs(tr[k]));
  }
  const auto& e = run.energy;
  const auto s0 = static_cast<std::size_t>(std::ceil((scenario.t0 + 2.0 / scenario.f0) / scenario.dt));
  bool energy_ok = false;
  if (s0 + 2 <= e.size()) {
    const std::size_t len = e.size() - s0;
    const std::size_t w = std::max<std::size_t>(1, len / 10);
    double ref = 0.0, end = 0.0;
    for (std::size_t k = 0; k < w; ++k) {
      ref += e[s0 + k];
      end += e[e.size() - w + k];
    }
    ref /= static_cast<double>(w);
    end /= static_cast<double>(w);
    r.energy_drift = std::abs(end - ref) / ref;
    // Least-squares slope of E(t) after the source.
    double st = 0, se = 0, stt = 0, ste = 0;
    for (std::size_t k = s0; k < e.size(); ++k) {
      const double t = (static_cast<double>(k) + 0.5) * scenario.dt;
      st += t;
      se += e[k];
      stt += t * t;
      ste += t * e[k];
    }
    const double m = static_cast<double>(len);
    r.energy_slope = (m * ste - st * se) / (m * stt - st * st) / (se / m);
    energy_ok = r.energy_drift <= 1e-3 && std::isfinite(r.energy_drift);
  }
  r.stable = std::isfinite(r.max_abs_all) && r.max_abs_tail <= r.max_abs_all && energy_ok;
  r.run = std::move(run);
  return r;
}

StabilityReport long_time_stability_run(StabilityScenario s, std::size_t n_steps,
                                        const std::optional<ElementalStencilPair>& elemental) {
  const auto sc = stability_scenario(s);
  return assess_stability(sc, run_scenario(sc, n_steps, true, elemental));
}

double relative_misfit(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ShapeError("relative_misfit: length mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += (a[k] - b[k]) * (a[k] - b[k]);
    den += b[k] * b[k];
  }
  return std::sqrt(num / den);
}

double two_grid_agreement(const SeismicScenario& a, const SeismicScenario& b, std::size_t n_steps) {
  return relative_misfit(run_scenario(a, n_steps, false).trace, run_scenario(b, n_steps, false).trace);
}

double conforming_split_misfit(std::size_t nx, std::size_t ny_bottom, std::size_t ny_top, std::size_t n_steps) {
  const double dx = 1.0 / static_cast<double>(nx);
  const double y_if = static_cast<double>(ny_bottom - 1) * dx;
  const double y_top = y_if + static_cast<double>(ny_top - 1) * dx;
  ModelSpec split;
  split.width = 1.0;
  split.medium = MediumSpec::constant({1.0, 1.0});
  split.blocks = {{nx, ny_bottom, 0.0, y_if}, {nx, ny_top, y_if, y_top}};
  ModelSpec single = split;
  single.blocks = {{nx, ny_bottom + ny_top - 1, 0.0, y_top}};
  const Model ms = build_model(split);
  const Model m1 = build_model(single);

  const double xc = 0.5, yc = y_if, w = 0.1;
  auto pulse = [&](double x, double y) { return std::exp(-((x - xc) * (x - xc) + (y - yc) * (y - yc)) / (w * w)); };
  auto zero = [](double, double) { return 0.0; };
  SimState ss = zero_state(ms.system), s1 = zero_state(m1.system);
  sample_fields(ms, pulse, zero, zero, ss.p, ss.vel);
  sample_fields(m1, pulse, zero, zero, s1.p, s1.vel);
  RunOptions opt;
  opt.record_energy = false;
  const double dt = 0.25 * dx;
  const auto rs = run(ms.system, {dt, n_steps}, {}, {}, std::move(ss), opt);
  const auto r1 = run(m1.system, {dt, n_steps}, {}, {}, std::move(s1), opt);

  // Compare pressure on the single grid; interface row taken from the top block.
  std::vector<double> a, b;
  const auto& g1 = m1.geometry[0];
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < g1.p_shape().ny; ++j) {
      b.push_back(r1.final_state.p[g1.p_shape().index(i, j)]);
      a.push_back(rs.final_state.p[locate_p(ms, g1.p_point(i, j))]);
    }
  return relative_misfit(a, b);
}

}  // namespace sbpwave
