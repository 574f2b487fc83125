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

#include "sbpwave/media_model.hpp"

#include "sbpwave/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace sbpwave {

namespace {

void check_material(const Material& m, const char* what) {
  if (!(m.rho > 0) || !(m.c > 0) || !std::isfinite(m.rho) || !std::isfinite(m.c))
    throw ValueError(std::string("medium: ") + what + " needs finite positive rho and c");
}

// Fractional grid coordinate, clamped when within one cell of the hull.
double clamp_coord(double s, std::size_t n, double x, const char* axis) {
  const double hi = static_cast<double>(n - 1);
  if (s < -1.0 || s > hi + 1.0)
    throw OutOfCoverage(std::string("gridded model does not cover ") + axis + " = " + std::to_string(x));
  return std::clamp(s, 0.0, hi);
}

double bilinear(const std::vector<double>& f, std::size_t cols, double s, double t, std::size_t rows) {
  const auto c0 = std::min(static_cast<std::size_t>(s), cols > 1 ? cols - 2 : 0);
  const auto r0 = std::min(static_cast<std::size_t>(t), rows > 1 ? rows - 2 : 0);
  const std::size_t c1 = std::min(c0 + 1, cols - 1), r1 = std::min(r0 + 1, rows - 1);
  const double a = s - static_cast<double>(c0), b = t - static_cast<double>(r0);
  return (1 - a) * (1 - b) * f[r0 * cols + c0] + a * (1 - b) * f[r0 * cols + c1] +
         (1 - a) * b * f[r1 * cols + c0] + a * b * f[r1 * cols + c1];
}

std::size_t value_size(const std::string& type) {
  if (type == "float32") return 4;
  if (type == "float64") return 8;
  throw FormatError("gridded model: value_type must be float32 or float64, got '" + type + "'");
}

}  // namespace

MediumSpec MediumSpec::constant(Material m) {
  MediumSpec s;
  s.kind = MediumKind::Constant;
  s.top = s.bottom = m;
  return s;
}

MediumSpec MediumSpec::two_layer(Material top, Material bottom, double interface_y) {
  MediumSpec s;
  s.kind = MediumKind::TwoLayer;
  s.top = top;
  s.bottom = bottom;
  s.interface_y = interface_y;
  return s;
}

MediumSpec MediumSpec::vertical_linear(Material top, double y_top, Material bottom, double y_bottom) {
  MediumSpec s;
  s.kind = MediumKind::VerticalLinear;
  s.top = top;
  s.bottom = bottom;
  s.y_top = y_top;
  s.y_bottom = y_bottom;
  return s;
}

MediumSpec MediumSpec::gridded(GriddedModel g) {
  MediumSpec s;
  s.kind = MediumKind::Gridded;
  s.grid = std::move(g);
  return s;
}

void MediumSpec::validate() const {
  switch (kind) {
    case MediumKind::Constant:
      check_material(top, "constant medium");
      break;
    case MediumKind::TwoLayer:
      check_material(top, "top layer");
      check_material(bottom, "bottom layer");
      break;
    case MediumKind::VerticalLinear:
      check_material(top, "top value");
      check_material(bottom, "bottom value");
      if (!(y_top > y_bottom)) throw ValueError("medium: vertical_linear needs y_top > y_bottom");
      break;
    case MediumKind::Gridded: {
      const auto& m = grid.meta;
      if (m.rows < 2 || m.cols < 2 || !(m.spacing > 0))
        throw ValueError("medium: gridded model needs at least 2x2 samples and positive spacing");
      if (grid.rho.size() != m.rows * m.cols || grid.c.size() != m.rows * m.cols)
        throw FormatError("medium: gridded arrays do not match rows x cols");
      for (std::size_t k = 0; k < grid.rho.size(); ++k)
        if (!(grid.rho[k] > 0) || !(grid.c[k] > 0) || !std::isfinite(grid.rho[k]) || !std::isfinite(grid.c[k]))
          throw ValueError("medium: gridded entry " + std::to_string(k) + " is not finite and positive");
      break;
    }
  }
}

Material MediumSpec::at(double x, double y, BlockSide side) const {
  switch (kind) {
    case MediumKind::Constant:
      return top;
    case MediumKind::TwoLayer: {
      const double tol = 1e-9 * std::max(1.0, std::abs(interface_y));
      if (std::abs(y - interface_y) <= tol && side != BlockSide::Auto) return side == BlockSide::Top ? top : bottom;
      return y >= interface_y ? top : bottom;
    }
    case MediumKind::VerticalLinear: {
      const double w = std::clamp((y - y_bottom) / (y_top - y_bottom), 0.0, 1.0);
      return {bottom.rho + w * (top.rho - bottom.rho), bottom.c + w * (top.c - bottom.c)};
    }
    case MediumKind::Gridded: {
      const auto& m = grid.meta;
      const double s = clamp_coord((x - m.origin_x) / m.spacing, m.cols, x, "x");
      const double ty = m.rows_downward ? (m.origin_y - y) / m.spacing : (y - m.origin_y) / m.spacing;
      const double t = clamp_coord(ty, m.rows, y, "y");
      return {bilinear(grid.rho, m.cols, s, t, m.rows), bilinear(grid.c, m.cols, s, t, m.rows)};
    }
  }
  return top;
}

CoefficientDiagonals sample_coefficients(const MediumSpec& medium, const StaggeredBlock2D& block, BlockSide side) {
  CoefficientDiagonals d;
  const auto ps = block.p_shape(), us = block.u_shape(), vs = block.v_shape();
  d.c_p.resize(ps.size());
  d.c_u.resize(us.size());
  d.c_v.resize(vs.size());
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const auto [i, j] = ps.unindex(k);
    const auto pt = block.p_point(i, j);
    const auto m = medium.at(pt.x, pt.y, side);
    d.c_p[k] = 1.0 / (m.rho * m.c * m.c);
  }
  for (std::size_t k = 0; k < us.size(); ++k) {
    const auto [i, j] = us.unindex(k);
    const auto pt = block.u_point(i, j);
    d.c_u[k] = medium.at(pt.x, pt.y, side).rho;
  }
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const auto [i, j] = vs.unindex(k);
    const auto pt = block.v_point(i, j);
    d.c_v[k] = medium.at(pt.x, pt.y, side).rho;
  }
  return d;
}

CoefficientDiagonals unit_coefficients(const StaggeredBlock2D& block) {
  return {std::vector<double>(block.p_shape().size(), 1.0), std::vector<double>(block.u_shape().size(), 1.0),
          std::vector<double>(block.v_shape().size(), 1.0)};
}

namespace {

std::vector<double> read_field(const GriddedMetadata& meta, const std::filesystem::path& file) {
  const std::size_t vs = value_size(meta.value_type);
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open model file " + file.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::size_t expected = meta.rows * meta.cols * vs;
  if (bytes.size() != expected)
    throw FormatError("model file " + file.string() + " has " + std::to_string(bytes.size()) + " bytes, expected " +
                      std::to_string(expected));
  std::vector<double> out(meta.rows * meta.cols);
  for (std::size_t k = 0; k < out.size(); ++k) {
    unsigned char* p = bytes.data() + k * vs;
    if constexpr (std::endian::native == std::endian::big) std::reverse(p, p + vs);
    if (vs == 4) {
      float f;
      std::memcpy(&f, p, 4);
      out[k] = f;
    } else {
      std::memcpy(&out[k], p, 8);
    }
  }
  return out;
}

}  // namespace

GriddedModel load_gridded_model(const GriddedMetadata& meta, const std::filesystem::path& rho_file,
                                const std::filesystem::path& c_file) {
  value_size(meta.value_type);
  GriddedModel g{meta, read_field(meta, rho_file), read_field(meta, c_file)};
  MediumSpec::gridded(g).validate();
  return g;
}

void write_gridded_field(const GriddedMetadata& meta, const std::vector<double>& values,
                         const std::filesystem::path& file) {
  const std::size_t vs = value_size(meta.value_type);
  std::vector<unsigned char> bytes(values.size() * vs);
  for (std::size_t k = 0; k < values.size(); ++k) {
    unsigned char* p = bytes.data() + k * vs;
    if (vs == 4) {
      const auto f = static_cast<float>(values[k]);
      std::memcpy(p, &f, 4);
    } else {
      std::memcpy(p, &values[k], 8);
    }
    if constexpr (std::endian::native == std::endian::big) std::reverse(p, p + vs);
  }
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + file.string());
}

}  // namespace sbpwave
