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

#include "sbpwave/transfer_operators.hpp"

#include "sbpwave/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace sbpwave {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return ((a % b) + b) % b; }

std::string ratio_name(SpacingRatio r) { return std::to_string(r.coarse) + ":" + std::to_string(r.fine); }

void check_ratio(SpacingRatio r) {
  if (r.coarse < 1 || r.fine < 1 || r.coarse < r.fine || std::gcd(r.coarse, r.fine) != 1)
    throw DomainError("transfer: ratio " + ratio_name(r) + " must be coprime with coarse >= fine >= 1");
}

Rational rpow(const Rational& x, int d) {
  Rational r = 1;
  for (int k = 0; k < d; ++k) r *= x;
  return r;
}

std::vector<StencilEntry> row_of(std::initializer_list<std::pair<std::int64_t, Rational>> l) {
  std::vector<StencilEntry> row;
  for (const auto& [k, v] : l)
    if (v != 0) row.push_back({k, v});
  return row;
}

}  // namespace

void complete_fine_to_coarse(ElementalStencilPair& pair) {
  const std::int64_t m = pair.ratio.coarse, n = pair.ratio.fine;
  std::vector<std::map<std::int64_t, Rational>> acc(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < m; ++j)
    for (const auto& e : pair.coarse_to_fine[static_cast<std::size_t>(j)]) {
      const std::int64_t k0 = floor_mod(e.index, n);
      const std::int64_t shift = (k0 - e.index) / n;
      acc[static_cast<std::size_t>(k0)][j + shift * m] += Rational(n, m) * e.value;
    }
  pair.fine_to_coarse.assign(static_cast<std::size_t>(n), {});
  for (std::size_t k = 0; k < acc.size(); ++k)
    for (const auto& [f, v] : acc[k])
      if (v != 0) pair.fine_to_coarse[k].push_back({f, v});
}

ElementalStencilPair tabulated_pair(SpacingRatio ratio) {
  ElementalStencilPair p;
  p.ratio = ratio;
  if (ratio == SpacingRatio{1, 1}) {
    p.coarse_to_fine = {row_of({{0, rat(1)}})};
  } else if (ratio == SpacingRatio{2, 1}) {
    p.coarse_to_fine = {
        row_of({{0, rat(1)}}),
        row_of({{-1, rat(-1, 16)}, {0, rat(9, 16)}, {1, rat(9, 16)}, {2, rat(-1, 16)}}),
    };
  } else if (ratio == SpacingRatio{3, 2}) {
    p.coarse_to_fine = {
        row_of({{-2, rat(-1, 96)}, {-1, rat(1, 24)}, {0, rat(15, 16)}, {1, rat(1, 24)}, {2, rat(-1, 96)}}),
        row_of({{-1, rat(-13, 288)}, {0, rat(103, 288)}, {1, rat(217, 288)}, {2, rat(-19, 288)}}),
        row_of({{0, rat(-19, 288)}, {1, rat(217, 288)}, {2, rat(103, 288)}, {3, rat(-13, 288)}}),
    };
  } else {
    throw UnsupportedRatio("no tabulated transfer formulas for ratio " + ratio_name(ratio));
  }
  complete_fine_to_coarse(p);
  return p;
}

ElementalStencilPair derive_elemental_pair(SpacingRatio ratio, int support) {
  check_ratio(ratio);
  if (support < 1) throw DomainError("derive_elemental_pair: support must be positive");
  const std::int64_t m = ratio.coarse, n = ratio.fine;

  // Unknowns: (fine row j, coarse index k) inside the window.
  struct Var {
    std::int64_t j, k;
  };
  std::vector<Var> vars;
  for (std::int64_t j = 0; j < m; ++j) {
    const std::int64_t xf = j * n;
    for (std::int64_t k = -support - 1; k <= n + support + 1; ++k)
      if (2 * std::abs(k * m - xf) < support * m) vars.push_back({j, k});
  }

  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (std::int64_t j = 0; j < m; ++j)
    for (int d = 0; d <= 2; ++d) {
      std::vector<Rational> r(vars.size());
      for (std::size_t v = 0; v < vars.size(); ++v)
        if (vars[v].j == j) r[v] = rpow(Rational(vars[v].k * m - j * n), d);
      rows.push_back(std::move(r));
      rhs.push_back(d == 0 ? Rational(1) : Rational(0));
    }
  for (std::int64_t k0 = 0; k0 < n; ++k0)
    for (int d = 0; d <= 2; ++d) {
      std::vector<Rational> r(vars.size());
      for (std::size_t v = 0; v < vars.size(); ++v) {
        if (floor_mod(vars[v].k, n) != k0) continue;
        const std::int64_t shift = (k0 - vars[v].k) / n;
        const std::int64_t f = vars[v].j + shift * m;
        r[v] = Rational(n, m) * rpow(Rational(f * n - k0 * m), d);
      }
      rows.push_back(std::move(r));
      rhs.push_back(d == 0 ? Rational(1) : Rational(0));
    }

  RationalMatrix a(rows.size(), vars.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t v = 0; v < vars.size(); ++v) a(i, v) = rows[i][v];
  std::vector<Rational> x;
  if (!solve_min_norm(a, rhs, x))
    throw InfeasibleError("derive_elemental_pair: no degree-2 pair for ratio " + ratio_name(ratio) +
                          " with support " + std::to_string(support));

  ElementalStencilPair p;
  p.ratio = ratio;
  p.support = support;
  p.coarse_to_fine.assign(static_cast<std::size_t>(m), {});
  for (std::size_t v = 0; v < vars.size(); ++v)
    if (x[v] != 0) p.coarse_to_fine[static_cast<std::size_t>(vars[v].j)].push_back({vars[v].k, x[v]});
  complete_fine_to_coarse(p);
  return p;
}

ElementalStencilPair derive_elemental_pair(SpacingRatio ratio) {
  for (int s = 4; s <= 8; ++s) {
    try {
      return derive_elemental_pair(ratio, s);
    } catch (const InfeasibleError&) {
    }
  }
  throw InfeasibleError("derive_elemental_pair: no feasible support up to 8 for ratio " + ratio_name(ratio));
}

ElementalStencilPair shipped_pair(SpacingRatio ratio) {
  check_ratio(ratio);
  try {
    return tabulated_pair(ratio);
  } catch (const UnsupportedRatio&) {
    return derive_elemental_pair(ratio);
  }
}

std::vector<SpacingRatio> shipped_ratios() { return {{2, 1}, {3, 2}, {4, 3}, {5, 4}, {6, 5}}; }

TransferPair tile_periodic(const ElementalStencilPair& elem, std::size_t n_coarse, std::size_t n_fine) {
  const auto m = static_cast<std::size_t>(elem.ratio.coarse), n = static_cast<std::size_t>(elem.ratio.fine);
  if (n_coarse == 0 || n_coarse % n != 0 || n_fine != n_coarse / n * m)
    throw DomainError("tile_periodic: " + std::to_string(n_coarse) + " coarse / " + std::to_string(n_fine) +
                      " fine points do not tile ratio " + ratio_name(elem.ratio));
  const std::size_t elements = n_coarse / n;
  TransferPair t;
  t.ratio = elem.ratio;
  t.n_coarse = n_coarse;
  t.n_fine = n_fine;
  t.exact_coarse_to_fine = RationalMatrix(n_fine, n_coarse);
  t.exact_fine_to_coarse = RationalMatrix(n_coarse, n_fine);
  const auto nc = static_cast<std::int64_t>(n_coarse), nf = static_cast<std::int64_t>(n_fine);
  for (std::size_t e = 0; e < elements; ++e) {
    for (std::size_t j = 0; j < m; ++j)
      for (const auto& s : elem.coarse_to_fine[j]) {
        const auto col = floor_mod(s.index + static_cast<std::int64_t>(e * n), nc);
        t.exact_coarse_to_fine(e * m + j, static_cast<std::size_t>(col)) += s.value;
      }
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& s : elem.fine_to_coarse[k]) {
        const auto col = floor_mod(s.index + static_cast<std::int64_t>(e * m), nf);
        t.exact_fine_to_coarse(e * n + k, static_cast<std::size_t>(col)) += s.value;
      }
  }
  auto materialize = [](const RationalMatrix& r) {
    std::vector<Triplet> trip;
    for (std::size_t i = 0; i < r.rows; ++i)
      for (std::size_t j = 0; j < r.cols; ++j)
        if (r(i, j) != 0) trip.push_back({i, j, to_double(r(i, j))});
    return SparseMatrix::from_triplets(r.rows, r.cols, std::move(trip));
  };
  t.coarse_to_fine = materialize(t.exact_coarse_to_fine);
  t.fine_to_coarse = materialize(t.exact_fine_to_coarse);
  return t;
}

namespace {

// Exactness degree of row `row` of `op`, rows at positions row*row_step and
// columns at col*col_step (units of h) on a period of length `period`.
int exact_degree(const RationalMatrix& op, std::size_t row, std::int64_t row_step, std::int64_t col_step,
                 std::int64_t period) {
  const std::int64_t x0 = static_cast<std::int64_t>(row) * row_step;
  std::vector<std::pair<Rational, Rational>> terms;
  for (std::size_t c = 0; c < op.cols; ++c) {
    if (op(row, c) == 0) continue;
    std::int64_t o = floor_mod(static_cast<std::int64_t>(c) * col_step - x0, period);
    if (2 * o >= period) o -= period;
    terms.emplace_back(Rational(o), op(row, c));
  }
  for (int d = 0; d <= 6; ++d) {
    Rational s = 0;
    for (const auto& [o, v] : terms) s += v * rpow(o, d);
    if (s != (d == 0 ? Rational(1) : Rational(0))) return d - 1;
  }
  return 6;
}

}  // namespace

TransferCertificate certify(const TransferPair& pair) {
  TransferCertificate c;
  const std::int64_t m = pair.ratio.coarse, n = pair.ratio.fine;
  const std::int64_t period = static_cast<std::int64_t>(pair.n_coarse) * m;
  const auto& cf = pair.exact_coarse_to_fine;
  const auto& fc = pair.exact_fine_to_coarse;
  auto row_sum_error = [&](const RationalMatrix& op) {
    for (std::size_t i = 0; i < op.rows; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < op.cols; ++j) s += op(i, j);
      c.row_sum_error = std::max(c.row_sum_error, Rational(abs(s - 1)));
    }
  };
  row_sum_error(cf);
  row_sum_error(fc);
  c.min_degree = 6;
  for (std::size_t i = 0; i < cf.rows; ++i) {
    c.coarse_to_fine_degree.push_back(exact_degree(cf, i, n, m, period));
    c.min_degree = std::min(c.min_degree, c.coarse_to_fine_degree.back());
  }
  for (std::size_t i = 0; i < fc.rows; ++i) {
    c.fine_to_coarse_degree.push_back(exact_degree(fc, i, m, n, period));
    c.min_degree = std::min(c.min_degree, c.fine_to_coarse_degree.back());
  }
  for (std::size_t k = 0; k < fc.rows; ++k)
    for (std::size_t f = 0; f < fc.cols; ++f)
      c.constraint_residual = std::max(c.constraint_residual, Rational(abs(Rational(n) * cf(f, k) - Rational(m) * fc(k, f))));
  return c;
}

TransferCertificate certify(const ElementalStencilPair& elem) {
  const auto n = static_cast<std::size_t>(elem.ratio.fine), m = static_cast<std::size_t>(elem.ratio.coarse);
  const std::size_t elements = 16;
  return certify(tile_periodic(elem, elements * n, elements * m));
}

}  // namespace sbpwave
