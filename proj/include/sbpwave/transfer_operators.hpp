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

#include "sbpwave/rational.hpp"
#include "sbpwave/sparse_matrix.hpp"
#include "sbpwave/staggered_grid.hpp"

#include <cstdint>
#include <vector>

namespace sbpwave {

/// One coefficient of an elemental stencil: `index` is a global point index on
/// the source side (may be negative or past the element; tiling wraps it).
struct StencilEntry {
  std::int64_t index;
  Rational value;
};

/// Interpolation formulas for one elemental interval of an m:n interface.
/// In units of h = dx_coarse / m = dx_fine / n the element spans m*n, holding
/// fine points j*n (j < m) and coarse points k*m (k < n).
struct ElementalStencilPair {
  SpacingRatio ratio;
  /// Row j: coarse samples -> fine point j.
  std::vector<std::vector<StencilEntry>> coarse_to_fine;
  /// Row k: fine samples -> coarse point k. Always n/m times the transpose
  /// of the tiled coarse_to_fine operator.
  std::vector<std::vector<StencilEntry>> fine_to_coarse;
  /// Window diameter in coarse spacings used by the derivation (0 if tabulated).
  int support = 0;
};

/// Builds fine_to_coarse from coarse_to_fine so that
/// dx_fine * T_cf^T == dx_coarse * T_fc holds exactly.
void complete_fine_to_coarse(ElementalStencilPair& pair);

/// Tabulated pairs: 1:1, 2:1 and 3:2. Other ratios throw UnsupportedRatio.
ElementalStencilPair tabulated_pair(SpacingRatio ratio);

/// Minimum-norm pair with degree-2 exactness on every row of both operators.
/// Throws DomainError for malformed ratios, InfeasibleError when the window
/// is too narrow.
ElementalStencilPair derive_elemental_pair(SpacingRatio ratio, int support);

/// Tries supports 4..8 and returns the first feasible derivation.
ElementalStencilPair derive_elemental_pair(SpacingRatio ratio);

/// Tabulated pair where available, derived otherwise.
ElementalStencilPair shipped_pair(SpacingRatio ratio);

/// Ratios exercised by the shipped scenarios and certificates.
std::vector<SpacingRatio> shipped_ratios();

/// Periodic interface operators for n_coarse / n_fine points.
struct TransferPair {
  SpacingRatio ratio;
  std::size_t n_coarse = 0;
  std::size_t n_fine = 0;
  RationalMatrix exact_coarse_to_fine;  // n_fine x n_coarse
  RationalMatrix exact_fine_to_coarse;  // n_coarse x n_fine
  SparseMatrix coarse_to_fine;
  SparseMatrix fine_to_coarse;
};

/// Throws DomainError unless n_coarse is a multiple of ratio.fine and
/// n_fine = n_coarse * ratio.coarse / ratio.fine.
TransferPair tile_periodic(const ElementalStencilPair& elem, std::size_t n_coarse, std::size_t n_fine);

struct TransferCertificate {
  /// max |row sum - 1| over both operators.
  Rational row_sum_error;
  /// Exactness degree per row (probed up to 6).
  std::vector<int> coarse_to_fine_degree;
  std::vector<int> fine_to_coarse_degree;
  int min_degree = 0;
  /// max |dx_fine * T_cf^T - dx_coarse * T_fc|, in units of h.
  Rational constraint_residual;
};

TransferCertificate certify(const TransferPair& pair);

/// Certificate of the elemental formulas, tiled over enough elements that no
/// stencil wraps onto itself.
TransferCertificate certify(const ElementalStencilPair& elem);

}  // namespace sbpwave
