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
#include "sbpwave/sat_assembly.hpp"
#include "sbpwave/staggered_grid.hpp"
#include "sbpwave/transfer_operators.hpp"

#include <optional>
#include <vector>

namespace sbpwave {

/// One block: nx columns (periodic), ny rows of p points from y_bottom to y_top.
struct BlockSpec {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double y_bottom = 0.0;
  double y_top = 1.0;
  bool operator==(const BlockSpec&) const = default;
};

/// Geometry and medium of a run. With two blocks the first is the bottom
/// (coarse) block and the second the top block; they meet at the top of the
/// first.
struct ModelSpec {
  double x_left = 0.0;
  double width = 1.0;
  std::vector<BlockSpec> blocks;
  MediumSpec medium;
  SatCoefficients coeffs;
};

struct Model {
  std::vector<StaggeredBlock2D> geometry;
  std::optional<BlockLayout> layout;
  std::optional<TransferPair> transfer;
  SemiDiscreteSystem system;
};

/// Validates and assembles. The transfer pair comes from shipped_pair unless
/// `elemental` is given.
Model build_model(const ModelSpec& spec, const std::optional<ElementalStencilPair>& elemental = std::nullopt);

/// Flat pressure index of the p point at `location`; on the interface the
/// top block's point is used. Throws DomainError when no p point matches.
std::size_t locate_p(const Model& model, Point2D location, double tol = 1e-6);

/// Samples fields given as functions of (x, y) onto the flat state layout.
template <class FP, class FU, class FV>
void sample_fields(const Model& model, FP&& p, FU&& u, FV&& v, std::vector<double>& p_out, std::vector<double>& vel_out) {
  const auto& sys = model.system;
  p_out.assign(sys.pressure_size(), 0.0);
  vel_out.assign(sys.velocity_size(), 0.0);
  for (std::size_t b = 0; b < model.geometry.size(); ++b) {
    const auto& g = model.geometry[b];
    const auto ps = g.p_shape(), us = g.u_shape(), vs = g.v_shape();
    for (std::size_t i = 0; i < ps.nx; ++i)
      for (std::size_t j = 0; j < ps.ny; ++j) {
        const auto pt = g.p_point(i, j);
        p_out[sys.p_offset(b) + ps.index(i, j)] = p(pt.x, pt.y);
      }
    for (std::size_t i = 0; i < us.nx; ++i)
      for (std::size_t j = 0; j < us.ny; ++j) {
        const auto pt = g.u_point(i, j);
        vel_out[sys.u_offset(b) + us.index(i, j)] = u(pt.x, pt.y);
      }
    for (std::size_t i = 0; i < vs.nx; ++i)
      for (std::size_t j = 0; j < vs.ny; ++j) {
        const auto pt = g.v_point(i, j);
        vel_out[sys.v_offset(b) + vs.index(i, j)] = v(pt.x, pt.y);
      }
  }
}

}  // namespace sbpwave
