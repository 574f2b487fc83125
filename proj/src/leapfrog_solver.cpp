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

#include "sbpwave/leapfrog_solver.hpp"

#include "sbpwave/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace sbpwave {

double ricker(double t, double f0, double t0) {
  const double a = std::numbers::pi * f0 * (t - t0);
  const double a2 = a * a;
  return (1.0 - 2.0 * a2) * std::exp(-a2);
}

SimState zero_state(const WaveOperator& system) {
  return {std::vector<double>(system.pressure_size(), 0.0), std::vector<double>(system.velocity_size(), 0.0), 0};
}

LeapfrogSolver::LeapfrogSolver(const WaveOperator& system, double dt)
    : system_(system), dt_(dt), work_p_(system.pressure_size()), work_v_(system.velocity_size()) {
  if (!(dt > 0) || !std::isfinite(dt)) throw DomainError("LeapfrogSolver: dt must be positive");
}

void LeapfrogSolver::step(SimState& s, const std::vector<PointSource>& sources) const {
  system_.velocity_rhs(s.p, work_v_);
  for (std::size_t k = 0; k < s.vel.size(); ++k) s.vel[k] += dt_ * work_v_[k];
  system_.pressure_rhs(s.vel, work_p_);
  for (std::size_t k = 0; k < s.p.size(); ++k) s.p[k] += dt_ * work_p_[k];
  const double t_half = (static_cast<double>(s.step) + 0.5) * dt_;
  for (const auto& src : sources) s.p[src.p_index] += dt_ * src.amplitude * ricker(t_half, src.f0, src.t0);
  ++s.step;
}

void LeapfrogSolver::step_backward(SimState& s) const {
  if (s.step == 0) throw DomainError("step_backward: already at step 0");
  system_.pressure_rhs(s.vel, work_p_);
  for (std::size_t k = 0; k < s.p.size(); ++k) s.p[k] -= dt_ * work_p_[k];
  system_.velocity_rhs(s.p, work_v_);
  for (std::size_t k = 0; k < s.vel.size(); ++k) s.vel[k] -= dt_ * work_v_[k];
  --s.step;
}

RunResult run(const WaveOperator& system, const TimeGrid& time, const std::vector<PointSource>& sources,
              const std::vector<Receiver>& receivers, SimState initial, const RunOptions& options) {
  if (initial.p.size() != system.pressure_size() || initial.vel.size() != system.velocity_size())
    throw ShapeError("run: initial state does not match the system");
  for (const auto& s : sources)
    if (s.p_index >= system.pressure_size()) throw DomainError("run: source index out of range");
  for (const auto& r : receivers)
    if (r.p_index >= system.pressure_size()) throw DomainError("run: receiver index out of range");

  const LeapfrogSolver solver(system, time.dt);
  RunResult res;
  res.seismograms.assign(receivers.size(), std::vector<double>(time.n_steps + 1));
  if (options.record_energy) res.energy.reserve(time.n_steps);
  SimState s = std::move(initial);
  auto record = [&](std::size_t n) {
    for (std::size_t r = 0; r < receivers.size(); ++r) res.seismograms[r][n] = s.p[receivers[r].p_index];
  };
  record(0);
  std::vector<double> p_old, p_avg(system.pressure_size());
  for (std::size_t n = 0; n < time.n_steps; ++n) {
    if (options.record_energy) p_old = s.p;
    solver.step(s, sources);
    record(n + 1);
    if (options.record_energy) {
      for (std::size_t k = 0; k < p_avg.size(); ++k) p_avg[k] = 0.5 * (p_old[k] + s.p[k]);
      res.energy.push_back(system.energy(p_avg, s.vel));
    }
    if (options.on_step) options.on_step(s);
  }
  res.final_state = std::move(s);
  return res;
}

namespace {

double norm(const SimState& s) {
  double n = 0.0;
  for (double v : s.p) n += v * v;
  for (double v : s.vel) n += v * v;
  return std::sqrt(n);
}

}  // namespace

bool is_stable(const WaveOperator& system, double dt, const CflProtocol& protocol) {
  std::mt19937_64 rng(protocol.seed);
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  SimState s = zero_state(system);
  for (double& v : s.p) v = u(rng);
  for (double& v : s.vel) v = u(rng);
  const double n0 = norm(s);
  const LeapfrogSolver solver(system, dt);
  const double limit = protocol.growth_factor * n0;
  for (std::size_t n = 0; n < protocol.steps; ++n) {
    solver.step(s);
    if ((n & 63) == 63 || n + 1 == protocol.steps) {
      const double nn = norm(s);
      if (!(nn <= limit)) return false;
    }
  }
  return true;
}

CflResult find_cfl(const WaveOperator& system, double dx, const CflProtocol& protocol) {
  const double unit = dx / protocol.c_max;
  double lo = 0.0, hi = 1.0 * unit;
  while (is_stable(system, hi, protocol)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64 * unit) throw DomainError("find_cfl: no unstable time step found");
  }
  while (hi - lo > protocol.tolerance * unit) {
    const double mid = 0.5 * (lo + hi);
    (is_stable(system, mid, protocol) ? lo : hi) = mid;
  }
  return {lo / dx, hi / dx};
}

}  // namespace sbpwave
