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

#include "sbpwave/leapfrog_solver.hpp"
#include "sbpwave/model.hpp"
#include "sbpwave/sat_assembly.hpp"
#include "sbpwave/sparse_matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sbpwave {

/// Standing mode on the unit square, periodic in x, p = 0 at y = 0 and y = 1.
struct ManufacturedSolution {
  static double p(double x, double y, double t);
  static double u(double x, double y, double t);
  static double v(double x, double y, double t);
};

/// sqrt(sum over fields of e^T W e).
double weighted_l2_error(std::span<const double> p, std::span<const double> vel, std::span<const double> p_exact,
                         std::span<const double> vel_exact, std::span<const double> w_p, std::span<const double> w_v);

enum class ConvergenceScenario { Uniform, TwoBlock };

struct ConvergenceReport {
  ConvergenceScenario scenario;
  std::vector<std::size_t> cells;  // cells per direction of the (bottom) grid
  std::vector<double> errors;
  std::vector<double> rates;       // log2(e_k / e_{k+1})
};

/// Unit square. Uniform: n x n cells. TwoBlock: bottom n x n/2 cells below
/// y = 1/2, top 2n x n cells above. P starts at t = 0, velocities at -dt/2.
ConvergenceReport convergence_study(ConvergenceScenario scenario, const std::vector<std::size_t>& cells, double dt,
                                    double t_final);

/// Error of one manufactured run (used by the study).
double manufactured_error(ConvergenceScenario scenario, std::size_t cells, double dt, double t_final);

ModelSpec manufactured_spec(ConvergenceScenario scenario, std::size_t cells);

/// Largest p grid per block accepted by the explicit assembly.
inline constexpr std::size_t kDenseCap = 64 * 64;

/// Explicit matrices of the two halves of the rhs, built from Kronecker
/// products of the 1D operators: dVel/dt = velocity * P, dP/dt = pressure * Vel.
struct AssembledSystem {
  SparseMatrix velocity;
  SparseMatrix pressure;
};

/// Throws SizeError above kDenseCap p points per block.
AssembledSystem assemble_explicit(const SemiDiscreteSystem& system);

/// max |dE/dt| / (|state|_W |rate|_W) over random states.
double energy_rate_oracle(const WaveOperator& system, std::size_t n_states = 100, std::uint64_t seed = 1);

/// Random positive coefficient diagonals in [lo, hi].
CoefficientDiagonals random_coefficients(const Block2DOperators& ops, std::uint64_t seed, double lo = 0.5,
                                         double hi = 2.0);

/// Small two-block system for ratio m:n: the bottom block has n*ceil(16/n)
/// columns and 8 cells in y, the top block the matching fine columns and 16
/// cells. With a seed the coefficients are random in [0.5, 2].
SemiDiscreteSystem ratio_test_system(SpacingRatio ratio, std::optional<std::uint64_t> hetero_seed = std::nullopt,
                                     const SatCoefficients& coeffs = {},
                                     const std::optional<ElementalStencilPair>& elemental = std::nullopt);

/// Shipped pair with one fine-to-coarse coefficient shifted by `delta`, so the
/// transpose relation between the two operators no longer holds.
ElementalStencilPair broken_constraint_pair(SpacingRatio ratio, double delta = 1.0);

// Scenarios ----------------------------------------------------------------

enum class StabilityScenario { TwoLayer, LinearGradient };

struct SeismicScenario {
  ModelSpec spec;
  Point2D source;
  Point2D receiver;
  double f0 = 5.0;
  double t0 = 0.25;
  double dt = 0.0012;
};

/// Two layers with a 2:1 interface (120x61 over 60x31 p points).
SeismicScenario scenario_two_layer();
/// Vertically linear medium with a 6:5 interface (120x25 over 100x81).
SeismicScenario scenario_linear_gradient();
/// Same medium on one uniform 120x121 grid.
SeismicScenario scenario_linear_uniform();
/// Same medium with a 2:1 interface (120x25 over 60x49).
SeismicScenario scenario_linear_coarse();
/// The uniform grid cut at y = 0.768 into two blocks with a 1:1 interface.
SeismicScenario scenario_linear_conforming();

SeismicScenario stability_scenario(StabilityScenario s);

struct TraceRun {
  std::vector<double> trace;   // n_steps + 1 samples
  std::vector<double> energy;  // n_steps samples at half steps
};

TraceRun run_scenario(const SeismicScenario& scenario, std::size_t n_steps, bool record_energy = true,
                      const std::optional<ElementalStencilPair>& elemental = std::nullopt);

struct StabilityReport {
  TraceRun run;
  double max_abs_all = 0.0;
  double max_abs_tail = 0.0;  // last 10% of steps
  /// |mean E (last 10%) - mean E (first 10% after the source)| / the latter.
  double energy_drift = 0.0;
  /// Least-squares slope of post-source energy, relative per unit time.
  double energy_slope = 0.0;
  bool stable = false;
};

/// Verdict: tail amplitude not above the overall maximum and post-source
/// energy drift at most 1e-3.
StabilityReport assess_stability(const SeismicScenario& scenario, TraceRun run);

StabilityReport long_time_stability_run(StabilityScenario s, std::size_t n_steps,
                                        const std::optional<ElementalStencilPair>& elemental = std::nullopt);

/// ||a - b|| / ||b||
double relative_misfit(const std::vector<double>& a, const std::vector<double>& b);

/// Misfit of scenario `a` against reference `b` over n_steps.
double two_grid_agreement(const SeismicScenario& a, const SeismicScenario& b, std::size_t n_steps);

/// Two blocks with a 1:1 interface against the single block over the union.
/// Smooth initial pulse, no source; misfit of the final pressure field at
/// shared points plus a receiver trace.
double conforming_split_misfit(std::size_t nx, std::size_t ny_bottom, std::size_t ny_top, std::size_t n_steps);

}  // namespace sbpwave
