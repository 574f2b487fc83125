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

#include "sbpwave/sat_assembly.hpp"

#include "sbpwave/errors.hpp"

#include <cmath>
#include <string>

namespace sbpwave {

double SatCoefficients::boundary_defect() const {
  return std::abs(sigma_left + 1) + std::abs(sigma_right - 1) + std::abs(sigma_bottom + 1) + std::abs(sigma_top - 1);
}

double SatCoefficients::interface_1d_defect() const {
  return std::abs(-1 - tau_minus - sigma_minus) + std::abs(tau_minus - sigma_plus) +
         std::abs(-tau_plus + sigma_minus) + std::abs(1 + tau_plus + sigma_plus);
}

double SatCoefficients::interface_2d_defect() const {
  return std::abs(1 + sigma_p_minus + sigma_v_minus) + std::abs(1 + sigma_p_plus + sigma_v_plus) +
         std::abs(sigma_v_plus - sigma_p_minus) + std::abs(sigma_p_plus - sigma_v_minus);
}

double WaveOperator::energy(std::span<const double> p, std::span<const double> vel) const {
  const auto& wp = pressure_weights();
  const auto& wv = velocity_weights();
  double e = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) e += wp[k] * p[k] * p[k];
  for (std::size_t k = 0; k < vel.size(); ++k) e += wv[k] * vel[k] * vel[k];
  return 0.5 * e;
}

double WaveOperator::energy_rate(std::span<const double> p, std::span<const double> vel) const {
  std::vector<double> dp(pressure_size()), dvel(velocity_size());
  velocity_rhs(p, dvel);
  pressure_rhs(vel, dp);
  const auto& wp = pressure_weights();
  const auto& wv = velocity_weights();
  double r = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) r += wp[k] * p[k] * dp[k];
  for (std::size_t k = 0; k < vel.size(); ++k) r += wv[k] * vel[k] * dvel[k];
  return r;
}

SparseVector sparse_of(const std::vector<double>& v) {
  SparseVector s;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0.0) s.emplace_back(k, v[k]);
  return s;
}

namespace {

double dot(const SparseVector& a, std::span<const double> x) {
  double s = 0.0;
  for (const auto& [k, v] : a) s += v * x[k];
  return s;
}

void negate(std::span<double> x) {
  for (double& v : x) v = -v;
}

}  // namespace

// ---------------------------------------------------------------------------
// 1D

System1D::System1D(std::vector<StaggeredPair1D> segments, SatCoefficients coeffs)
    : segments_(std::move(segments)), coeffs_(coeffs) {
  if (segments_.empty() || segments_.size() > 2) throw ShapeError("System1D: one or two segments");
  if (segments_.size() == 2 && (segments_[0].periodic() || segments_[1].periodic()))
    throw DomainError("System1D: interface segments must be bounded");
  for (const auto& s : segments_) {
    p_off_.push_back(n_p_);
    v_off_.push_back(n_v_);
    n_p_ += s.n_p();
    n_v_ += s.n_v();
    w_p_.insert(w_p_.end(), s.norm_p().begin(), s.norm_p().end());
    w_v_.insert(w_v_.end(), s.norm_v().begin(), s.norm_v().end());
  }
}

void System1D::velocity_rhs(std::span<const double> p, std::span<double> dvel) const {
  if (p.size() != n_p_ || dvel.size() != n_v_) throw ShapeError("System1D::velocity_rhs: shape mismatch");
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const auto& seg = segments_[s];
    auto out = dvel.subspan(v_off_[s], seg.n_v());
    seg.apply_dp(p.subspan(p_off_[s], seg.n_p()), out);
    negate(out);
  }
  const auto& first = segments_.front();
  if (first.periodic()) return;
  const auto& last = segments_.back();
  const double p_left = p[0], p_right = p[n_p_ - 1];
  for (std::size_t j = 0; j < first.n_v(); ++j)
    dvel[j] += coeffs_.sigma_left * first.proj_left()[j] / first.norm_v()[j] * p_left;
  const std::size_t vl = v_off_.back();
  for (std::size_t j = 0; j < last.n_v(); ++j)
    dvel[vl + j] += coeffs_.sigma_right * last.proj_right()[j] / last.norm_v()[j] * p_right;

  if (segments_.size() == 2) {
    const auto& m = segments_[0];
    const auto& pl = segments_[1];
    const double jump = p[p_off_[1]] - p[m.n_p() - 1];
    for (std::size_t j = 0; j < m.n_v(); ++j) dvel[j] += coeffs_.sigma_minus * m.proj_right()[j] / m.norm_v()[j] * jump;
    for (std::size_t j = 0; j < pl.n_v(); ++j)
      dvel[vl + j] += coeffs_.sigma_plus * pl.proj_left()[j] / pl.norm_v()[j] * jump;
  }
}

void System1D::pressure_rhs(std::span<const double> vel, std::span<double> dp) const {
  if (vel.size() != n_v_ || dp.size() != n_p_) throw ShapeError("System1D::pressure_rhs: shape mismatch");
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const auto& seg = segments_[s];
    auto out = dp.subspan(p_off_[s], seg.n_p());
    seg.apply_dv(vel.subspan(v_off_[s], seg.n_v()), out);
    negate(out);
  }
  if (segments_.size() == 2) {
    const auto& m = segments_[0];
    const auto& pl = segments_[1];
    double vm = 0.0, vp = 0.0;
    for (std::size_t j = 0; j < m.n_v(); ++j) vm += m.proj_right()[j] * vel[j];
    for (std::size_t j = 0; j < pl.n_v(); ++j) vp += pl.proj_left()[j] * vel[v_off_[1] + j];
    dp[m.n_p() - 1] += coeffs_.tau_minus / m.norm_p().back() * (vp - vm);
    dp[p_off_[1]] += coeffs_.tau_plus / pl.norm_p().front() * (vp - vm);
  }
}

System1D assemble_1d_boundary_system(const StaggeredPair1D& ops, const SatCoefficients& coeffs) {
  return System1D({ops}, coeffs);
}

System1D assemble_1d_interface_system(const StaggeredPair1D& left, const StaggeredPair1D& right,
                                      const SatCoefficients& coeffs) {
  return System1D({left, right}, coeffs);
}

// ---------------------------------------------------------------------------
// 2D block

Block2DOperators::Block2DOperators(StaggeredPair1D x, StaggeredPair1D y) : x_(std::move(x)), y_(std::move(y)) {
  const auto ps = p_shape(), us = u_shape(), vs = v_shape();
  a_p_.resize(ps.size());
  a_u_.resize(us.size());
  a_v_.resize(vs.size());
  for (std::size_t i = 0; i < ps.nx; ++i)
    for (std::size_t j = 0; j < ps.ny; ++j) a_p_[ps.index(i, j)] = x_.norm_p()[i] * y_.norm_p()[j];
  for (std::size_t i = 0; i < us.nx; ++i)
    for (std::size_t j = 0; j < us.ny; ++j) a_u_[us.index(i, j)] = x_.norm_v()[i] * y_.norm_p()[j];
  for (std::size_t i = 0; i < vs.nx; ++i)
    for (std::size_t j = 0; j < vs.ny; ++j) a_v_[vs.index(i, j)] = x_.norm_p()[i] * y_.norm_v()[j];
}

namespace {

// out column r = sum_k c_k * in column cols_k, columns of length ny.
void apply_x(const std::vector<StencilRow>& rows, std::size_t ny, std::span<const double> in, std::span<double> out) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double* o = out.data() + r * ny;
    std::fill(o, o + ny, 0.0);
    const auto& row = rows[r];
    for (std::size_t k = 0; k < row.cols.size(); ++k) {
      const double c = row.coeffs[k];
      const double* src = in.data() + row.cols[k] * ny;
      for (std::size_t j = 0; j < ny; ++j) o[j] += c * src[j];
    }
  }
}

// Applies a y operator within each of nx columns.
void apply_y(const std::vector<StencilRow>& rows, std::size_t nx, std::size_t ny_in, std::span<const double> in,
             std::span<double> out) {
  const std::size_t ny_out = rows.size();
  for (std::size_t i = 0; i < nx; ++i) {
    const double* src = in.data() + i * ny_in;
    double* o = out.data() + i * ny_out;
    for (std::size_t r = 0; r < ny_out; ++r) {
      const auto& row = rows[r];
      double s = 0.0;
      for (std::size_t k = 0; k < row.cols.size(); ++k) s += row.coeffs[k] * src[row.cols[k]];
      o[r] = s;
    }
  }
}

}  // namespace

void Block2DOperators::apply_dx_p(std::span<const double> p, std::span<double> u_out) const {
  if (p.size() != p_shape().size() || u_out.size() != u_shape().size()) throw ShapeError("apply_dx_p: shape mismatch");
  apply_x(x_.dp_rows(), y_.n_p(), p, u_out);
}

void Block2DOperators::apply_dx_u(std::span<const double> u, std::span<double> p_out) const {
  if (u.size() != u_shape().size() || p_out.size() != p_shape().size()) throw ShapeError("apply_dx_u: shape mismatch");
  apply_x(x_.dv_rows(), y_.n_p(), u, p_out);
}

void Block2DOperators::apply_dy_p(std::span<const double> p, std::span<double> v_out) const {
  if (p.size() != p_shape().size() || v_out.size() != v_shape().size()) throw ShapeError("apply_dy_p: shape mismatch");
  apply_y(y_.dp_rows(), x_.n_p(), y_.n_p(), p, v_out);
}

void Block2DOperators::apply_dy_v(std::span<const double> v, std::span<double> p_out) const {
  if (v.size() != v_shape().size() || p_out.size() != p_shape().size()) throw ShapeError("apply_dy_v: shape mismatch");
  apply_y(y_.dv_rows(), x_.n_p(), y_.n_v(), v, p_out);
}

SparseMatrix Block2DOperators::dx_p_matrix() const { return kron(x_.dp_matrix(), SparseMatrix::identity(y_.n_p())); }
SparseMatrix Block2DOperators::dx_u_matrix() const { return kron(x_.dv_matrix(), SparseMatrix::identity(y_.n_p())); }
SparseMatrix Block2DOperators::dy_p_matrix() const { return kron(SparseMatrix::identity(x_.n_p()), y_.dp_matrix()); }
SparseMatrix Block2DOperators::dy_v_matrix() const { return kron(SparseMatrix::identity(x_.n_p()), y_.dv_matrix()); }

Block2DOperators assemble_2d_block(const StaggeredBlock2D& block) {
  if (!block.grid_x().periodic() || block.grid_y().periodic())
    throw DomainError("assemble_2d_block: expected periodic x and bounded y");
  return {build_periodic_1d(block.grid_x().n_p(), block.grid_x().dx()),
          build_sbp_1d(block.grid_y().n_p(), block.grid_y().dx())};
}

// ---------------------------------------------------------------------------
// Coupled system

SemiDiscreteSystem::SemiDiscreteSystem(std::vector<BlockSystem> blocks, std::optional<InterfaceCoupling> interface,
                                       SatCoefficients coeffs)
    : blocks_(std::move(blocks)), interface_(std::move(interface)), coeffs_(coeffs) {
  if (blocks_.empty() || blocks_.size() > 2) throw ShapeError("SemiDiscreteSystem: one or two blocks");
  if (interface_.has_value() != (blocks_.size() == 2))
    throw ShapeError("SemiDiscreteSystem: an interface is required exactly when there are two blocks");
  for (auto& b : blocks_) {
    const auto& ops = b.ops;
    if (b.coef.c_p.size() != ops.p_shape().size() || b.coef.c_u.size() != ops.u_shape().size() ||
        b.coef.c_v.size() != ops.v_shape().size())
      throw ShapeError("SemiDiscreteSystem: coefficient diagonals do not match the block");
    if (ops.y().periodic()) b.bottom = b.top = EdgeKind::None;
    Cached c;
    for (double v : b.coef.c_p) c.inv_cp.push_back(1.0 / v);
    for (double v : b.coef.c_u) c.inv_cu.push_back(1.0 / v);
    for (double v : b.coef.c_v) c.inv_cv.push_back(1.0 / v);
    if (!ops.y().periodic()) {
      c.proj_bottom = sparse_of(ops.y().proj_left());
      c.proj_top = sparse_of(ops.y().proj_right());
    }
    if (!ops.x().periodic()) {
      c.proj_left = sparse_of(ops.x().proj_left());
      c.proj_right = sparse_of(ops.x().proj_right());
    }
    cache_.push_back(std::move(c));

    p_off_.push_back(n_p_);
    n_p_ += ops.p_shape().size();
    u_off_.push_back(n_vel_);
    n_vel_ += ops.u_shape().size();
    v_off_.push_back(n_vel_);
    n_vel_ += ops.v_shape().size();
    for (std::size_t k = 0; k < ops.a_p().size(); ++k) w_p_.push_back(ops.a_p()[k] * b.coef.c_p[k]);
    for (std::size_t k = 0; k < ops.a_u().size(); ++k) w_v_.push_back(ops.a_u()[k] * b.coef.c_u[k]);
    for (std::size_t k = 0; k < ops.a_v().size(); ++k) w_v_.push_back(ops.a_v()[k] * b.coef.c_v[k]);
  }
  if (interface_) {
    const auto& t = *interface_;
    const std::size_t nb = blocks_[0].ops.x().n_p(), nt = blocks_[1].ops.x().n_p();
    if (t.top_to_bottom.rows() != nb || t.top_to_bottom.cols() != nt || t.bottom_to_top.rows() != nt ||
        t.bottom_to_top.cols() != nb)
      throw ShapeError("SemiDiscreteSystem: transfer operators do not match the interface traces (" +
                       std::to_string(nb) + " bottom / " + std::to_string(nt) + " top points)");
    if (blocks_[0].ops.y().periodic() || blocks_[1].ops.y().periodic())
      throw DomainError("SemiDiscreteSystem: interface blocks must be bounded in y");
    blocks_[0].top = EdgeKind::Interface;
    blocks_[1].bottom = EdgeKind::Interface;
  }
}

void SemiDiscreteSystem::interface_traces_p(std::span<const double> p, std::vector<double>& pm,
                                            std::vector<double>& pp) const {
  const auto sb = blocks_[0].ops.p_shape(), st = blocks_[1].ops.p_shape();
  pm.resize(sb.nx);
  pp.resize(st.nx);
  for (std::size_t i = 0; i < sb.nx; ++i) pm[i] = p[p_off_[0] + sb.index(i, sb.ny - 1)];
  for (std::size_t i = 0; i < st.nx; ++i) pp[i] = p[p_off_[1] + st.index(i, 0)];
}

void SemiDiscreteSystem::interface_traces_v(std::span<const double> vel, std::vector<double>& vm,
                                            std::vector<double>& vp) const {
  const auto sb = blocks_[0].ops.v_shape(), st = blocks_[1].ops.v_shape();
  vm.resize(sb.nx);
  vp.resize(st.nx);
  for (std::size_t i = 0; i < sb.nx; ++i) vm[i] = dot(cache_[0].proj_top, vel.subspan(v_off_[0] + i * sb.ny, sb.ny));
  for (std::size_t i = 0; i < st.nx; ++i)
    vp[i] = dot(cache_[1].proj_bottom, vel.subspan(v_off_[1] + i * st.ny, st.ny));
}

void SemiDiscreteSystem::velocity_rhs(std::span<const double> p, std::span<double> dvel) const {
  if (p.size() != n_p_ || dvel.size() != n_vel_) throw ShapeError("velocity_rhs: shape mismatch");
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& blk = blocks_[b];
    const auto& ops = blk.ops;
    const auto ps = ops.p_shape(), us = ops.u_shape(), vs = ops.v_shape();
    const auto pb = p.subspan(p_off_[b], ps.size());
    auto u = dvel.subspan(u_off_[b], us.size());
    auto v = dvel.subspan(v_off_[b], vs.size());
    ops.apply_dx_p(pb, u);
    ops.apply_dy_p(pb, v);
    negate(u);
    negate(v);
    const auto& c = cache_[b];
    if (!ops.x().periodic()) {
      const auto& ax = ops.x().norm_v();
      for (const auto& [i, w] : c.proj_left)
        for (std::size_t j = 0; j < us.ny; ++j) u[us.index(i, j)] += coeffs_.sigma_left * w / ax[i] * pb[ps.index(0, j)];
      for (const auto& [i, w] : c.proj_right)
        for (std::size_t j = 0; j < us.ny; ++j)
          u[us.index(i, j)] += coeffs_.sigma_right * w / ax[i] * pb[ps.index(ps.nx - 1, j)];
    }
    const auto& ay = ops.y().norm_v();
    if (blk.bottom == EdgeKind::FreeSurface)
      for (std::size_t i = 0; i < vs.nx; ++i)
        for (const auto& [j, w] : c.proj_bottom) v[vs.index(i, j)] += coeffs_.sigma_bottom * w / ay[j] * pb[ps.index(i, 0)];
    if (blk.top == EdgeKind::FreeSurface)
      for (std::size_t i = 0; i < vs.nx; ++i)
        for (const auto& [j, w] : c.proj_top)
          v[vs.index(i, j)] += coeffs_.sigma_top * w / ay[j] * pb[ps.index(i, ps.ny - 1)];
  }
  if (interface_) {
    std::vector<double> pm, pp;
    interface_traces_p(p, pm, pp);
    const auto tp = interface_->top_to_bottom * std::span<const double>(pp);
    const auto tm = interface_->bottom_to_top * std::span<const double>(pm);
    const auto vb = blocks_[0].ops.v_shape(), vt = blocks_[1].ops.v_shape();
    const auto& ayb = blocks_[0].ops.y().norm_v();
    const auto& ayt = blocks_[1].ops.y().norm_v();
    for (std::size_t i = 0; i < vb.nx; ++i)
      for (const auto& [j, w] : cache_[0].proj_top)
        dvel[v_off_[0] + vb.index(i, j)] += coeffs_.sigma_v_minus * w / ayb[j] * (tp[i] - pm[i]);
    for (std::size_t i = 0; i < vt.nx; ++i)
      for (const auto& [j, w] : cache_[1].proj_bottom)
        dvel[v_off_[1] + vt.index(i, j)] += coeffs_.sigma_v_plus * w / ayt[j] * (pp[i] - tm[i]);
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& c = cache_[b];
    for (std::size_t k = 0; k < c.inv_cu.size(); ++k) dvel[u_off_[b] + k] *= c.inv_cu[k];
    for (std::size_t k = 0; k < c.inv_cv.size(); ++k) dvel[v_off_[b] + k] *= c.inv_cv[k];
  }
}

void SemiDiscreteSystem::pressure_rhs(std::span<const double> vel, std::span<double> dp) const {
  if (vel.size() != n_vel_ || dp.size() != n_p_) throw ShapeError("pressure_rhs: shape mismatch");
  std::vector<double> tmp;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& ops = blocks_[b].ops;
    const auto ps = ops.p_shape();
    auto out = dp.subspan(p_off_[b], ps.size());
    tmp.resize(ps.size());
    ops.apply_dx_u(vel.subspan(u_off_[b], ops.u_shape().size()), out);
    ops.apply_dy_v(vel.subspan(v_off_[b], ops.v_shape().size()), tmp);
    for (std::size_t k = 0; k < ps.size(); ++k) out[k] = -(out[k] + tmp[k]);
  }
  if (interface_) {
    std::vector<double> vm, vp;
    interface_traces_v(vel, vm, vp);
    const auto tv = interface_->top_to_bottom * std::span<const double>(vp);
    const auto tm = interface_->bottom_to_top * std::span<const double>(vm);
    const auto pb = blocks_[0].ops.p_shape(), pt = blocks_[1].ops.p_shape();
    const double wb = coeffs_.sigma_p_minus / blocks_[0].ops.y().norm_p().back();
    const double wt = coeffs_.sigma_p_plus / blocks_[1].ops.y().norm_p().front();
    for (std::size_t i = 0; i < pb.nx; ++i) dp[p_off_[0] + pb.index(i, pb.ny - 1)] += wb * (tv[i] - vm[i]);
    for (std::size_t i = 0; i < pt.nx; ++i) dp[p_off_[1] + pt.index(i, 0)] += wt * (vp[i] - tm[i]);
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& c = cache_[b];
    for (std::size_t k = 0; k < c.inv_cp.size(); ++k) dp[p_off_[b] + k] *= c.inv_cp[k];
  }
}

SemiDiscreteSystem assemble_free_surface_system(const StaggeredBlock2D& block, const CoefficientDiagonals& coef,
                                                const SatCoefficients& coeffs) {
  std::vector<BlockSystem> blocks;
  blocks.push_back({assemble_2d_block(block), coef, EdgeKind::FreeSurface, EdgeKind::FreeSurface});
  return SemiDiscreteSystem(std::move(blocks), std::nullopt, coeffs);
}

InterfaceCoupling coupling_from(const TransferPair& transfer) {
  return {transfer.fine_to_coarse, transfer.coarse_to_fine};
}

SemiDiscreteSystem assemble_interface_system(const BlockLayout& layout, const TransferPair& transfer,
                                             const CoefficientDiagonals& coef_bottom,
                                             const CoefficientDiagonals& coef_top, const SatCoefficients& coeffs) {
  if (!(transfer.ratio == layout.ratio))
    throw ShapeError("assemble_interface_system: transfer ratio does not match the layout");
  if (transfer.n_coarse != layout.bottom.grid_x().n_p() || transfer.n_fine != layout.top.grid_x().n_p())
    throw ShapeError("assemble_interface_system: transfer sizes do not match the interface point counts");
  std::vector<BlockSystem> blocks;
  blocks.push_back({assemble_2d_block(layout.bottom), coef_bottom, EdgeKind::FreeSurface, EdgeKind::Interface});
  blocks.push_back({assemble_2d_block(layout.top), coef_top, EdgeKind::Interface, EdgeKind::FreeSurface});
  return SemiDiscreteSystem(std::move(blocks), coupling_from(transfer), coeffs);
}

CoefficientDiagonals unit_coefficients(const Block2DOperators& ops) {
  return {std::vector<double>(ops.p_shape().size(), 1.0), std::vector<double>(ops.u_shape().size(), 1.0),
          std::vector<double>(ops.v_shape().size(), 1.0)};
}

SemiDiscreteSystem assemble_periodic_2d_system(std::size_t nx, std::size_t ny, double dx) {
  Block2DOperators ops(build_periodic_1d(nx, dx), build_periodic_1d(ny, dx));
  auto coef = unit_coefficients(ops);
  std::vector<BlockSystem> blocks;
  blocks.push_back({std::move(ops), std::move(coef), EdgeKind::None, EdgeKind::None});
  return SemiDiscreteSystem(std::move(blocks), std::nullopt, {});
}

}  // namespace sbpwave
