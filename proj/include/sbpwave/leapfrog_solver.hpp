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

#include "sbpwave/sat_assembly.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace sbpwave {

/// (1 - 2 pi^2 f0^2 tau^2) exp(-pi^2 f0^2 tau^2), tau = t - t0.
double ricker(double t, double f0, double t0);

struct TimeGrid {
  double dt = 0.0;
  std::size_t n_steps = 0;
};

/// Point source on a pressure entry of the flat state.
struct PointSource {
  std::size_t p_index = 0;
  double f0 = 5.0;
  double t0 = 0.25;
  double amplitude = 1.0;
};

struct Receiver {
  std::size_t p_index = 0;
};

/// Pressure at integer step `step`, velocities half a step earlier.
struct SimState {
  std::vector<double> p;
  std::vector<double> vel;
  std::size_t step = 0;
};

SimState zero_state(const WaveOperator& system);

/// Staggered leapfrog: velocities first from P^n, then pressure, then the
/// source sampled at t_{n+1/2}.
class LeapfrogSolver {
 public:
  LeapfrogSolver(const WaveOperator& system, double dt);

  void step(SimState& state, const std::vector<PointSource>& sources = {}) const;
  /// Exact algebraic inverse of a source-free step.
  void step_backward(SimState& state) const;

  double dt() const { return dt_; }
  const WaveOperator& system() const { return system_; }

 private:
  const WaveOperator& system_;
  double dt_;
  mutable std::vector<double> work_p_, work_v_;
};

struct RunResult {
  /// One row per integer step 0..n_steps: seismograms[r][n].
  std::vector<std::vector<double>> seismograms;
  /// Energy with pressure averaged over each step, at t_{n+1/2}.
  std::vector<double> energy;
  SimState final_state;
};

struct RunOptions {
  bool record_energy = true;
  /// Called after every step with the new state (optional).
  std::function<void(const SimState&)> on_step;
};

RunResult run(const WaveOperator& system, const TimeGrid& time, const std::vector<PointSource>& sources,
              const std::vector<Receiver>& receivers, SimState initial, const RunOptions& options = {});

struct CflProtocol {
  std::size_t steps = 2000;
  double growth_factor = 10.0;
  /// Bracket width relative to dx / c.
  double tolerance = 1e-3;
  std::uint64_t seed = 12345;
  double c_max = 1.0;
};

struct CflResult {
  double dt_stable = 0.0;    // largest dt found stable
  double dt_unstable = 0.0;  // smallest dt found unstable
  double ratio() const { return 0.5 * (dt_stable + dt_unstable); }
};

/// True when `steps` leapfrog steps from random data stay within the growth
/// factor (Euclidean norm of the full state).
bool is_stable(const WaveOperator& system, double dt, const CflProtocol& protocol);

/// Bisection on dt. The returned values are divided by dx, so they read as
/// Courant numbers when c = 1.
CflResult find_cfl(const WaveOperator& system, double dx, const CflProtocol& protocol = {});

}  // namespace sbpwave
