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

#include "sbpwave/model.hpp"

#include "sbpwave/errors.hpp"

#include <string>

namespace sbpwave {

namespace {

SemiDiscreteSystem build_system(const ModelSpec& spec, const std::vector<StaggeredBlock2D>& geometry,
                                const std::optional<BlockLayout>& layout, const std::optional<TransferPair>& transfer) {
  if (geometry.size() == 1) {
    return assemble_free_surface_system(geometry[0], sample_coefficients(spec.medium, geometry[0]), spec.coeffs);
  }
  return assemble_interface_system(*layout, *transfer,
                                   sample_coefficients(spec.medium, layout->bottom, BlockSide::Bottom),
                                   sample_coefficients(spec.medium, layout->top, BlockSide::Top), spec.coeffs);
}

}  // namespace

Model build_model(const ModelSpec& spec, const std::optional<ElementalStencilPair>& elemental) {
  if (spec.blocks.empty() || spec.blocks.size() > 2) throw DomainError("model: one or two blocks are supported");
  if (!(spec.width > 0)) throw DomainError("model: width must be positive");
  spec.medium.validate();
  std::vector<StaggeredBlock2D> geometry;
  for (const auto& b : spec.blocks) geometry.push_back(make_block(spec.x_left, spec.width, b.nx, b.y_bottom, b.y_top, b.ny));
  std::optional<BlockLayout> layout;
  std::optional<TransferPair> transfer;
  if (geometry.size() == 2) {
    layout = build_layout(geometry[1], geometry[0], spec.blocks[0].y_top);
    const auto elem = elemental ? *elemental : shipped_pair(layout->ratio);
    if (!(elem.ratio == layout->ratio)) throw DomainError("model: transfer formulas do not match the block ratio");
    transfer = tile_periodic(elem, geometry[0].grid_x().n_p(), geometry[1].grid_x().n_p());
  }
  auto system = build_system(spec, geometry, layout, transfer);
  return {std::move(geometry), std::move(layout), std::move(transfer), std::move(system)};
}

std::size_t locate_p(const Model& model, Point2D location, double tol) {
  for (std::size_t b = model.geometry.size(); b-- > 0;) {
    const auto k = model.geometry[b].p_index_at(location, tol);
    if (k) return model.system.p_offset(b) + *k;
  }
  throw DomainError("location (" + std::to_string(location.x) + ", " + std::to_string(location.y) +
                    ") is not a p grid point");
}

}  // namespace sbpwave
