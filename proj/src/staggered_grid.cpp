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

#include "sbpwave/staggered_grid.hpp"

#include "sbpwave/errors.hpp"
#include "sbpwave/rational.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sbpwave {

double StaggeredGrid1D::x_right() const {
  const auto cells = periodic() ? n_p_ : n_p_ - 1;
  return x_left_ + static_cast<double>(cells) * dx_;
}

std::vector<double> StaggeredGrid1D::primary_points() const {
  std::vector<double> x(n_p_);
  for (std::size_t i = 0; i < n_p_; ++i) x[i] = primary(i);
  return x;
}

std::vector<double> StaggeredGrid1D::dual_points() const {
  std::vector<double> x(n_dual());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = dual(i);
  return x;
}

std::optional<std::size_t> StaggeredGrid1D::primary_index(double x, double tol) const {
  const double s = (x - x_left_) / dx_;
  const double r = std::round(s);
  if (std::abs(s - r) > tol || r < 0 || r >= static_cast<double>(n_p_)) return std::nullopt;
  return static_cast<std::size_t>(r);
}

StaggeredGrid1D build_grid_1d(double x_left, double x_right, std::size_t n_p, Alignment alignment) {
  if (!(x_right > x_left) || !std::isfinite(x_left) || !std::isfinite(x_right))
    throw DomainError("build_grid_1d: degenerate interval");
  if (alignment == Alignment::BothEndsPrimary) {
    if (n_p < StaggeredGrid1D::kMinBothEndsPoints)
      throw DomainError("build_grid_1d: need at least 9 primary points so the boundary closures do not overlap, got " +
                        std::to_string(n_p));
    return {x_left, (x_right - x_left) / static_cast<double>(n_p - 1), n_p, alignment};
  }
  if (n_p < StaggeredGrid1D::kMinPeriodicPoints)
    throw DomainError("build_grid_1d: periodic axis needs at least 4 points");
  return {x_left, (x_right - x_left) / static_cast<double>(n_p), n_p, alignment};
}

StaggeredBlock2D::StaggeredBlock2D(StaggeredGrid1D grid_x, StaggeredGrid1D grid_y)
    : grid_x_(grid_x), grid_y_(grid_y) {}

std::optional<std::size_t> StaggeredBlock2D::p_index_at(Point2D location, double tol) const {
  const auto i = grid_x_.primary_index(location.x, tol);
  const auto j = grid_y_.primary_index(location.y, tol);
  if (!i || !j) return std::nullopt;
  return p_shape().index(*i, *j);
}

StaggeredBlock2D make_block(double x_left, double width, std::size_t nx, double y_bottom,
                            double y_top, std::size_t ny) {
  return {build_grid_1d(x_left, x_left + width, nx, Alignment::Periodic),
          build_grid_1d(y_bottom, y_top, ny, Alignment::BothEndsPrimary)};
}

namespace {

bool close(double a, double b, double scale) { return std::abs(a - b) <= 1e-9 * scale; }

}  // namespace

BlockLayout build_layout(const StaggeredBlock2D& top, const StaggeredBlock2D& bottom,
                         double interface_y) {
  for (const auto* b : {&top, &bottom}) {
    if (!b->grid_x().periodic() || b->grid_y().periodic())
      throw DomainError("build_layout: blocks must be periodic in x and bounded in y");
  }
  const double scale = std::max(top.width(), top.height() + bottom.height());
  if (!close(top.width(), bottom.width(), scale))
    throw DomainError("build_layout: block widths differ (" + std::to_string(top.width()) + " vs " +
                      std::to_string(bottom.width()) + ")");
  if (!close(top.y_bottom(), interface_y, scale) || !close(bottom.y_top(), interface_y, scale))
    throw MisalignmentError("build_layout: both blocks must own a p row on the interface");
  if (!close(top.grid_x().x_left(), bottom.grid_x().x_left(), scale))
    throw MisalignmentError("build_layout: interface grids share no matching points");

  std::int64_t m = 0, n = 0;
  const double r = bottom.grid_x().dx() / top.grid_x().dx();
  if (!recover_ratio(r, kMaxRatioTerm, 1e-9, m, n))
    throw DomainError("build_layout: spacing ratio " + std::to_string(r) + " is not a supported rational");
  if (m < n) throw DomainError("build_layout: the bottom block must be the coarse side");
  return {top, bottom, interface_y, {m, n}};
}

}  // namespace sbpwave
