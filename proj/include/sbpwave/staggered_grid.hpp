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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sbpwave {

enum class Alignment {
  /// Primary (p) points on both end points; the dual subgrid holds the
  /// n_p - 1 midpoints.
  BothEndsPrimary,
  /// Periodic axis: starts with a p point and ends with a dual point, both
  /// subgrids have n_p points and the period is n_p * dx.
  Periodic,
};

/// One uniform 1D staggered pair. Points are stored as origin + index * dx so
/// that index arithmetic, not float comparison, drives alignment checks.
class StaggeredGrid1D {
 public:
  static constexpr std::size_t kMinBothEndsPoints = 9;
  static constexpr std::size_t kMinPeriodicPoints = 4;

  StaggeredGrid1D() = default;
  StaggeredGrid1D(double x_left, double dx, std::size_t n_p, Alignment alignment)
      : x_left_(x_left), dx_(dx), n_p_(n_p), alignment_(alignment) {}

  double x_left() const { return x_left_; }
  double x_right() const;
  double length() const { return x_right() - x_left_; }
  double dx() const { return dx_; }
  std::size_t n_p() const { return n_p_; }
  std::size_t n_dual() const { return alignment_ == Alignment::Periodic ? n_p_ : n_p_ - 1; }
  Alignment alignment() const { return alignment_; }
  bool periodic() const { return alignment_ == Alignment::Periodic; }

  double primary(std::size_t i) const { return x_left_ + static_cast<double>(i) * dx_; }
  double dual(std::size_t i) const { return x_left_ + (static_cast<double>(i) + 0.5) * dx_; }
  std::vector<double> primary_points() const;
  std::vector<double> dual_points() const;

  /// Index of the primary point within tol * dx of x, if any.
  std::optional<std::size_t> primary_index(double x, double tol = 1e-6) const;

 private:
  double x_left_ = 0.0;
  double dx_ = 1.0;
  std::size_t n_p_ = 0;
  Alignment alignment_ = Alignment::BothEndsPrimary;
};

/// Throws DomainError when the interval is degenerate or n_p is below the
/// alignment's minimum.
StaggeredGrid1D build_grid_1d(double x_left, double x_right, std::size_t n_p, Alignment alignment);

/// Shape of a 2D subgrid with column-major linearization: x index selects the
/// column, y runs fastest inside a column.
struct SubgridShape {
  std::size_t nx = 0;
  std::size_t ny = 0;

  std::size_t size() const { return nx * ny; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * ny + j; }
  std::pair<std::size_t, std::size_t> unindex(std::size_t k) const { return {k / ny, k % ny}; }
  bool operator==(const SubgridShape&) const = default;
};

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

/// A uniform 2D block: p, u (staggered in x) and v (staggered in y) subgrids as
/// tensor products of the two axis grids.
class StaggeredBlock2D {
 public:
  StaggeredBlock2D() = default;
  StaggeredBlock2D(StaggeredGrid1D grid_x, StaggeredGrid1D grid_y);

  const StaggeredGrid1D& grid_x() const { return grid_x_; }
  const StaggeredGrid1D& grid_y() const { return grid_y_; }

  SubgridShape p_shape() const { return {grid_x_.n_p(), grid_y_.n_p()}; }
  SubgridShape u_shape() const { return {grid_x_.n_dual(), grid_y_.n_p()}; }
  SubgridShape v_shape() const { return {grid_x_.n_p(), grid_y_.n_dual()}; }

  Point2D p_point(std::size_t i, std::size_t j) const { return {grid_x_.primary(i), grid_y_.primary(j)}; }
  Point2D u_point(std::size_t i, std::size_t j) const { return {grid_x_.dual(i), grid_y_.primary(j)}; }
  Point2D v_point(std::size_t i, std::size_t j) const { return {grid_x_.primary(i), grid_y_.dual(j)}; }

  double width() const { return grid_x_.length(); }
  double height() const { return grid_y_.length(); }
  double y_bottom() const { return grid_y_.x_left(); }
  double y_top() const { return grid_y_.x_right(); }

  /// Column-major p index of the p point at (x, y), if the location is a p point.
  std::optional<std::size_t> p_index_at(Point2D location, double tol = 1e-6) const;

 private:
  StaggeredGrid1D grid_x_;
  StaggeredGrid1D grid_y_;
};

/// Periodic-in-x, free-surface-in-y block of the kind every experiment uses.
StaggeredBlock2D make_block(double x_left, double width, std::size_t nx, double y_bottom,
                            double y_top, std::size_t ny);

/// Coarse-to-fine spacing ratio m:n in lowest terms, m >= n.
struct SpacingRatio {
  std::int64_t coarse = 1;
  std::int64_t fine = 1;
  bool operator==(const SpacingRatio&) const = default;
};

/// Two blocks joined along a horizontal interface; the bottom block is the
/// coarse side (dx_bottom : dx_top = ratio.coarse : ratio.fine).
struct BlockLayout {
  StaggeredBlock2D top;
  StaggeredBlock2D bottom;
  double interface_y = 0.0;
  SpacingRatio ratio;
};

/// Largest denominator accepted when recovering the spacing ratio.
inline constexpr std::int64_t kMaxRatioTerm = 16;

BlockLayout build_layout(const StaggeredBlock2D& top, const StaggeredBlock2D& bottom,
                         double interface_y);

}  // namespace sbpwave
