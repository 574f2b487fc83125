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

#include "sbpwave/media_model.hpp"
#include "sbpwave/sbp_operators_1d.hpp"
#include "sbpwave/sparse_matrix.hpp"
#include "sbpwave/staggered_grid.hpp"
#include "sbpwave/transfer_operators.hpp"

#include <optional>
#include <span>
#include <vector>

namespace sbpwave {

/// Penalty strengths. Defaults are the energy-conserving choices.
struct SatCoefficients {
  // Free surface, left/right (x or 1D) and bottom/top (y).
  double sigma_left = -1.0;
  double sigma_right = 1.0;
  double sigma_bottom = -1.0;
  double sigma_top = 1.0;
  // 1D interface.
  double tau_minus = -0.5;
  double tau_plus = -0.5;
  double sigma_minus = -0.5;
  double sigma_plus = -0.5;
  // 2D interface; "minus" is the bottom block, "plus" the top block.
  double sigma_p_minus = -0.5;
  double sigma_v_minus = -0.5;
  double sigma_p_plus = -0.5;
  double sigma_v_plus = -0.5;

  /// Residuals of the conservation conditions; zero means conserving.
  double boundary_defect() const;
  double interface_1d_defect() const;
  double interface_2d_defect() const;
};

/// Semi-discrete acoustic system in split form: the velocity rate depends on
/// pressure only and the pressure rate on velocity only. Velocities of all
/// blocks are stored in one flat vector, pressures in another.
class WaveOperator {
 public:
  virtual ~WaveOperator() = default;

  virtual std::size_t pressure_size() const = 0;
  virtual std::size_t velocity_size() const = 0;
  virtual void velocity_rhs(std::span<const double> p, std::span<double> dvel) const = 0;
  virtual void pressure_rhs(std::span<const double> vel, std::span<double> dp) const = 0;
  /// Diagonal weights of the energy: norm times coefficient.
  virtual const std::vector<double>& pressure_weights() const = 0;
  virtual const std::vector<double>& velocity_weights() const = 0;

  /// 1/2 (P^T W_p P + Vel^T W_v Vel)
  double energy(std::span<const double> p, std::span<const double> vel) const;
  /// P^T W_p dP/dt + Vel^T W_v dVel/dt.
  double energy_rate(std::span<const double> p, std::span<const double> vel) const;
};

/// Sparse nonzeros of a projection vector.
using SparseVector = std::vector<std::pair<std::size_t, double>>;
SparseVector sparse_of(const std::vector<double>& v);

/// 1D system of one or two segments. Outer ends get free-surface penalties
/// unless the single segment is periodic; two segments share an interface
/// point (duplicated).
class System1D : public WaveOperator {
 public:
  System1D(std::vector<StaggeredPair1D> segments, SatCoefficients coeffs);

  std::size_t pressure_size() const override { return n_p_; }
  std::size_t velocity_size() const override { return n_v_; }
  void velocity_rhs(std::span<const double> p, std::span<double> dvel) const override;
  void pressure_rhs(std::span<const double> vel, std::span<double> dp) const override;
  const std::vector<double>& pressure_weights() const override { return w_p_; }
  const std::vector<double>& velocity_weights() const override { return w_v_; }

  const std::vector<StaggeredPair1D>& segments() const { return segments_; }
  const SatCoefficients& coefficients() const { return coeffs_; }
  std::size_t p_offset(std::size_t s) const { return p_off_[s]; }
  std::size_t v_offset(std::size_t s) const { return v_off_[s]; }

 private:
  std::vector<StaggeredPair1D> segments_;
  SatCoefficients coeffs_;
  std::size_t n_p_ = 0, n_v_ = 0;
  std::vector<std::size_t> p_off_, v_off_;
  std::vector<double> w_p_, w_v_;
};

/// Free-surface (or periodic) single-segment system.
System1D assemble_1d_boundary_system(const StaggeredPair1D& ops, const SatCoefficients& coeffs);
/// Two segments joined at a shared point.
System1D assemble_1d_interface_system(const StaggeredPair1D& left, const StaggeredPair1D& right,
                                      const SatCoefficients& coeffs);

/// Tensor-product operators of one 2D block. Either axis may be periodic.
class Block2DOperators {
 public:
  Block2DOperators(StaggeredPair1D x, StaggeredPair1D y);

  const StaggeredPair1D& x() const { return x_; }
  const StaggeredPair1D& y() const { return y_; }
  SubgridShape p_shape() const { return {x_.n_p(), y_.n_p()}; }
  SubgridShape u_shape() const { return {x_.n_v(), y_.n_p()}; }
  SubgridShape v_shape() const { return {x_.n_p(), y_.n_v()}; }

  /// Plain derivatives (no penalties), overwriting `out`.
  void apply_dx_p(std::span<const double> p, std::span<double> u_out) const;
  void apply_dx_u(std::span<const double> u, std::span<double> p_out) const;
  void apply_dy_p(std::span<const double> p, std::span<double> v_out) const;
  void apply_dy_v(std::span<const double> v, std::span<double> p_out) const;

  /// Diagonals of A^P = a_x ⊗ a_y (and the U, V analogues).
  const std::vector<double>& a_p() const { return a_p_; }
  const std::vector<double>& a_u() const { return a_u_; }
  const std::vector<double>& a_v() const { return a_v_; }

  /// Explicit Kronecker forms, for tests.
  SparseMatrix dx_p_matrix() const;
  SparseMatrix dx_u_matrix() const;
  SparseMatrix dy_p_matrix() const;
  SparseMatrix dy_v_matrix() const;

 private:
  StaggeredPair1D x_, y_;
  std::vector<double> a_p_, a_u_, a_v_;
};

/// Periodic x, SBP y.
Block2DOperators assemble_2d_block(const StaggeredBlock2D& block);

enum class EdgeKind { FreeSurface, Interface, None };

/// Everything a block contributes to the coupled system.
struct BlockSystem {
  Block2DOperators ops;
  CoefficientDiagonals coef;
  EdgeKind bottom = EdgeKind::FreeSurface;
  EdgeKind top = EdgeKind::FreeSurface;
};

/// Interface operators between block 0 (bottom, coarse, "minus") and block 1
/// (top, fine, "plus"): T_+^- maps top traces to the bottom grid.
struct InterfaceCoupling {
  SparseMatrix top_to_bottom;  // n_x(bottom) x n_x(top)
  SparseMatrix bottom_to_top;  // n_x(top) x n_x(bottom)
};

/// The complete right-hand side of one or two coupled blocks. Layout of the
/// flat vectors: pressure = [P_0, P_1], velocity = [U_0, V_0, U_1, V_1].
class SemiDiscreteSystem : public WaveOperator {
 public:
  SemiDiscreteSystem(std::vector<BlockSystem> blocks, std::optional<InterfaceCoupling> interface,
                     SatCoefficients coeffs);

  std::size_t pressure_size() const override { return n_p_; }
  std::size_t velocity_size() const override { return n_vel_; }
  void velocity_rhs(std::span<const double> p, std::span<double> dvel) const override;
  void pressure_rhs(std::span<const double> vel, std::span<double> dp) const override;
  const std::vector<double>& pressure_weights() const override { return w_p_; }
  const std::vector<double>& velocity_weights() const override { return w_v_; }

  std::size_t block_count() const { return blocks_.size(); }
  const BlockSystem& block(std::size_t b) const { return blocks_[b]; }
  const std::optional<InterfaceCoupling>& interface() const { return interface_; }
  const SatCoefficients& coefficients() const { return coeffs_; }
  std::size_t p_offset(std::size_t b) const { return p_off_[b]; }
  std::size_t u_offset(std::size_t b) const { return u_off_[b]; }
  std::size_t v_offset(std::size_t b) const { return v_off_[b]; }

 private:
  struct Cached {
    std::vector<double> inv_cp, inv_cu, inv_cv;
    SparseVector proj_bottom, proj_top, proj_left, proj_right;
  };
  void interface_traces_p(std::span<const double> p, std::vector<double>& pm, std::vector<double>& pp) const;
  void interface_traces_v(std::span<const double> vel, std::vector<double>& vm, std::vector<double>& vp) const;

  std::vector<BlockSystem> blocks_;
  std::optional<InterfaceCoupling> interface_;
  SatCoefficients coeffs_;
  std::vector<Cached> cache_;
  std::size_t n_p_ = 0, n_vel_ = 0;
  std::vector<std::size_t> p_off_, u_off_, v_off_;
  std::vector<double> w_p_, w_v_;
};

/// Single block with free surfaces on top and bottom.
SemiDiscreteSystem assemble_free_surface_system(const StaggeredBlock2D& block, const CoefficientDiagonals& coef,
                                                const SatCoefficients& coeffs = {});

/// Two blocks with the interface penalties. The transfer pair must match the
/// layout ratio and the x point counts.
SemiDiscreteSystem assemble_interface_system(const BlockLayout& layout, const TransferPair& transfer,
                                             const CoefficientDiagonals& coef_bottom,
                                             const CoefficientDiagonals& coef_top,
                                             const SatCoefficients& coeffs = {});

InterfaceCoupling coupling_from(const TransferPair& transfer);

/// Unit coefficient diagonals sized for `ops`.
CoefficientDiagonals unit_coefficients(const Block2DOperators& ops);

/// Periodic in both directions, unit medium, no penalties.
SemiDiscreteSystem assemble_periodic_2d_system(std::size_t nx, std::size_t ny, double dx);

}  // namespace sbpwave
