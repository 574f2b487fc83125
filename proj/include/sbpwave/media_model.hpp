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

#include "sbpwave/staggered_grid.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace sbpwave {

struct Material {
  double rho = 1.0;  // kg/m^3
  double c = 1.0;    // m/s
  bool operator==(const Material&) const = default;
};

/// Raw value layout of a gridded model: rows x cols samples stored row-major,
/// column index along x. With rows_downward the first row is the top edge
/// (y = origin_y) and later rows go down; otherwise rows go up from origin_y.
struct GriddedMetadata {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double spacing = 1.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  bool rows_downward = true;
  std::string value_type = "float32";  // or "float64"
  bool operator==(const GriddedMetadata&) const = default;
};

struct GriddedModel {
  GriddedMetadata meta;
  std::vector<double> rho;
  std::vector<double> c;

  double width() const { return static_cast<double>(meta.cols - 1) * meta.spacing; }
  double height() const { return static_cast<double>(meta.rows - 1) * meta.spacing; }
};

enum class MediumKind { Constant, TwoLayer, VerticalLinear, Gridded };

/// Which side of a material discontinuity a block samples from at its edge.
enum class BlockSide { Auto, Top, Bottom };

struct MediumSpec {
  MediumKind kind = MediumKind::Constant;
  /// Constant: `top` is the medium. TwoLayer: `top` above interface_y,
  /// `bottom` below. VerticalLinear: `top` at y_top, `bottom` at y_bottom,
  /// linear in between and constant outside.
  Material top;
  Material bottom;
  double interface_y = 0.0;
  double y_top = 1.0;
  double y_bottom = 0.0;
  GriddedModel grid;

  static MediumSpec constant(Material m);
  static MediumSpec two_layer(Material top, Material bottom, double interface_y);
  static MediumSpec vertical_linear(Material top, double y_top, Material bottom, double y_bottom);
  static MediumSpec gridded(GriddedModel g);

  /// Throws ValueError on non-positive or non-finite parameters.
  void validate() const;

  /// Throws OutOfCoverage outside gridded data (beyond the one-cell clamp).
  Material at(double x, double y, BlockSide side = BlockSide::Auto) const;
};

/// Diagonals of the coefficient matrices: c_p = 1/(rho c^2) on p points,
/// c_u = c_v = rho on u and v points.
struct CoefficientDiagonals {
  std::vector<double> c_p;
  std::vector<double> c_u;
  std::vector<double> c_v;
};

CoefficientDiagonals sample_coefficients(const MediumSpec& medium, const StaggeredBlock2D& block,
                                         BlockSide side = BlockSide::Auto);

/// Unit coefficients for a block (rho = c = 1).
CoefficientDiagonals unit_coefficients(const StaggeredBlock2D& block);

/// Reads raw little-endian rho and c files. IoError when a file cannot be
/// opened, FormatError on a size mismatch, ValueError on bad entries.
GriddedModel load_gridded_model(const GriddedMetadata& meta, const std::filesystem::path& rho_file,
                                const std::filesystem::path& c_file);

/// Writes one raw little-endian field (float32 or float64 per metadata).
void write_gridded_field(const GriddedMetadata& meta, const std::vector<double>& values,
                         const std::filesystem::path& file);

}  // namespace sbpwave
