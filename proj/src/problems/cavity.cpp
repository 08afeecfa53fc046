#include "nlc/problems/cavity.hpp"

#include <cmath>

#include "nlc/linalg/sparse_matrix.hpp"

namespace nlc {

void CavityParams::validate() const {
  if (nx < 3 || ny < 3) throw ConfigError("cavity grid needs at least 3x3 nodes");
  if (!std::isfinite(grashof) || !std::isfinite(prandtl) || !std::isfinite(lid_velocity)) {
    throw ConfigError("cavity parameters must be finite");
  }
}

CavityProblem::CavityProblem(CavityParams params) : params_(params), layout_{params.nx, params.ny, 4} {
  params_.validate();
  dhx_ = static_cast<double>(params_.nx - 1);
  dhy_ = static_cast<double>(params_.ny - 1);
  hx_ = 1.0 / dhx_;
  hy_ = 1.0 / dhy_;
  hxdhy_ = hx_ * dhy_;
  hydhx_ = hy_ * dhx_;
  blocks_.block_size = 4;
  blocks_.residual = [this](const Vector& x, std::size_t node, double* out) {
    node_residual(x, node % layout_.nx, node / layout_.nx, out);
  };
  blocks_.jacobian = [this](const Vector& x, std::size_t node, double* out) {
    const std::size_t i = node % layout_.nx, j = node / layout_.nx;
    for (int k = 0; k < 16; ++k) out[k] = 0.0;
    node_jacobian(x, i, j, [&](std::size_t rf, std::size_t ci, std::size_t cj, std::size_t cf, double v) {
      if (ci == i && cj == j) out[rf * 4 + cf] += v;
    });
  };
}

void CavityProblem::node_residual(const Vector& x, std::size_t i, std::size_t j, double* f) const {
  const std::size_t nx = layout_.nx, ny = layout_.ny;
  auto X = [&](std::size_t ii, std::size_t jj, std::size_t field) { return x[layout_.index(ii, jj, field)]; };
  const double grashof = params_.grashof, prandtl = params_.prandtl, lid = params_.lid_velocity;
  if (i == 0) {
    f[U] = X(i, j, U);
    f[V] = X(i, j, V);
    f[OMEGA] = X(i, j, OMEGA) - (X(i + 1, j, V) - X(i, j, V)) * dhx_;
    f[TEMP] = X(i, j, TEMP);
    return;
  }
  if (i == nx - 1) {
    f[U] = X(i, j, U);
    f[V] = X(i, j, V);
    f[OMEGA] = X(i, j, OMEGA) - (X(i, j, V) - X(i - 1, j, V)) * dhx_;
    f[TEMP] = X(i, j, TEMP) - 1.0;
    return;
  }
  if (j == 0) {
    f[U] = X(i, j, U);
    f[V] = X(i, j, V);
    f[OMEGA] = X(i, j, OMEGA) + (X(i, j + 1, U) - X(i, j, U)) * dhy_;
    f[TEMP] = X(i, j, TEMP) - X(i, j + 1, TEMP);
    return;
  }
  if (j == ny - 1) {
    f[U] = X(i, j, U) - lid;
    f[V] = X(i, j, V);
    f[OMEGA] = X(i, j, OMEGA) + (X(i, j, U) - X(i, j - 1, U)) * dhy_;
    f[TEMP] = X(i, j, TEMP) - X(i, j - 1, TEMP);
    return;
  }
  const double vx = X(i, j, U), avx = std::abs(vx), vxp = 0.5 * (vx + avx), vxm = 0.5 * (vx - avx);
  const double vy = X(i, j, V), avy = std::abs(vy), vyp = 0.5 * (vy + avy), vym = 0.5 * (vy - avy);
  auto lap = [&](std::size_t field) {
    const double u = X(i, j, field);
    return (2.0 * u - X(i - 1, j, field) - X(i + 1, j, field)) * hydhx_ +
           (2.0 * u - X(i, j - 1, field) - X(i, j + 1, field)) * hxdhy_;
  };
  auto convect = [&](std::size_t field) {
    const double u = X(i, j, field);
    return (vxp * (u - X(i - 1, j, field)) + vxm * (X(i + 1, j, field) - u)) * hy_ +
           (vyp * (u - X(i, j - 1, field)) + vym * (X(i, j + 1, field) - u)) * hx_;
  };
  f[U] = lap(U) - 0.5 * (X(i, j + 1, OMEGA) - X(i, j - 1, OMEGA)) * hx_;
  f[V] = lap(V) + 0.5 * (X(i + 1, j, OMEGA) - X(i - 1, j, OMEGA)) * hy_;
  f[OMEGA] = lap(OMEGA) + convect(OMEGA) - 0.5 * grashof * (X(i + 1, j, TEMP) - X(i - 1, j, TEMP)) * hy_;
  f[TEMP] = lap(TEMP) + prandtl * convect(TEMP);
}

template <class Emit>
void CavityProblem::node_jacobian(const Vector& x, std::size_t i, std::size_t j, Emit&& emit) const {
  const std::size_t nx = layout_.nx, ny = layout_.ny;
  auto X = [&](std::size_t ii, std::size_t jj, std::size_t field) { return x[layout_.index(ii, jj, field)]; };
  const double grashof = params_.grashof, prandtl = params_.prandtl;
  if (i == 0 || i == nx - 1) {
    emit(U, i, j, U, 1.0);
    emit(V, i, j, V, 1.0);
    emit(OMEGA, i, j, OMEGA, 1.0);
    if (i == 0) {
      emit(OMEGA, i + 1, j, V, -dhx_);
      emit(OMEGA, i, j, V, dhx_);
    } else {
      emit(OMEGA, i, j, V, -dhx_);
      emit(OMEGA, i - 1, j, V, dhx_);
    }
    emit(TEMP, i, j, TEMP, 1.0);
    return;
  }
  if (j == 0 || j == ny - 1) {
    emit(U, i, j, U, 1.0);
    emit(V, i, j, V, 1.0);
    emit(OMEGA, i, j, OMEGA, 1.0);
    emit(TEMP, i, j, TEMP, 1.0);
    if (j == 0) {
      emit(OMEGA, i, j + 1, U, dhy_);
      emit(OMEGA, i, j, U, -dhy_);
      emit(TEMP, i, j + 1, TEMP, -1.0);
    } else {
      emit(OMEGA, i, j, U, dhy_);
      emit(OMEGA, i, j - 1, U, -dhy_);
      emit(TEMP, i, j - 1, TEMP, -1.0);
    }
    return;
  }
  const double vx = X(i, j, U), vy = X(i, j, V);
  const double vxp = 0.5 * (vx + std::abs(vx)), vxm = 0.5 * (vx - std::abs(vx));
  const double vyp = 0.5 * (vy + std::abs(vy)), vym = 0.5 * (vy - std::abs(vy));
  const double sx = vx > 0.0 ? 1.0 : (vx < 0.0 ? -1.0 : 0.0);
  const double sy = vy > 0.0 ? 1.0 : (vy < 0.0 ? -1.0 : 0.0);
  const double dvxp = 0.5 * (1.0 + sx), dvxm = 0.5 * (1.0 - sx);
  const double dvyp = 0.5 * (1.0 + sy), dvym = 0.5 * (1.0 - sy);

  auto lap = [&](std::size_t row, std::size_t field) {
    emit(row, i, j, field, 2.0 * hydhx_ + 2.0 * hxdhy_);
    emit(row, i - 1, j, field, -hydhx_);
    emit(row, i + 1, j, field, -hydhx_);
    emit(row, i, j - 1, field, -hxdhy_);
    emit(row, i, j + 1, field, -hxdhy_);
  };
  auto convect = [&](std::size_t row, std::size_t field, double scale) {
    const double u = X(i, j, field);
    emit(row, i, j, field, scale * ((vxp - vxm) * hy_ + (vyp - vym) * hx_));
    emit(row, i - 1, j, field, -scale * vxp * hy_);
    emit(row, i + 1, j, field, scale * vxm * hy_);
    emit(row, i, j - 1, field, -scale * vyp * hx_);
    emit(row, i, j + 1, field, scale * vym * hx_);
    emit(row, i, j, U, scale * (dvxp * (u - X(i - 1, j, field)) + dvxm * (X(i + 1, j, field) - u)) * hy_);
    emit(row, i, j, V, scale * (dvyp * (u - X(i, j - 1, field)) + dvym * (X(i, j + 1, field) - u)) * hx_);
  };
  lap(U, U);
  emit(U, i, j + 1, OMEGA, -0.5 * hx_);
  emit(U, i, j - 1, OMEGA, 0.5 * hx_);
  lap(V, V);
  emit(V, i + 1, j, OMEGA, 0.5 * hy_);
  emit(V, i - 1, j, OMEGA, -0.5 * hy_);
  lap(OMEGA, OMEGA);
  convect(OMEGA, OMEGA, 1.0);
  emit(OMEGA, i + 1, j, TEMP, -0.5 * grashof * hy_);
  emit(OMEGA, i - 1, j, TEMP, 0.5 * grashof * hy_);
  lap(TEMP, TEMP);
  convect(TEMP, TEMP, prandtl);
}

void CavityProblem::apply(const Vector& x, Vector& f) const {
  if (f.layout() != layout_) f = Vector(layout_);
  for (std::size_t j = 0; j < layout_.ny; ++j) {
    for (std::size_t i = 0; i < layout_.nx; ++i) node_residual(x, i, j, &f[layout_.index(i, j, 0)]);
  }
}

SparseMatrix CavityProblem::jacobian(const Vector& x) const {
  TripletBuilder tb(layout_.size(), layout_.size() * 14);
  for (std::size_t j = 0; j < layout_.ny; ++j) {
    for (std::size_t i = 0; i < layout_.nx; ++i) {
      node_jacobian(x, i, j, [&](std::size_t rf, std::size_t ci, std::size_t cj, std::size_t cf, double v) {
        tb.add(layout_.index(i, j, rf), layout_.index(ci, cj, cf), v);
      });
    }
  }
  return tb.build(4);
}

bool CavityProblem::coarsenable() const {
  return params_.nx % 2 == 1 && params_.ny % 2 == 1 && (params_.nx + 1) / 2 >= 3 && (params_.ny + 1) / 2 >= 3;
}

std::shared_ptr<NonlinearProblem> CavityProblem::coarsen() const {
  if (!coarsenable()) return nullptr;
  CavityParams coarse = params_;
  coarse.nx = (params_.nx + 1) / 2;
  coarse.ny = (params_.ny + 1) / 2;
  return std::make_shared<CavityProblem>(coarse);
}

Vector CavityProblem::initial_guess() const {
  Vector x(layout_);
  for (std::size_t j = 0; j < layout_.ny; ++j) {
    for (std::size_t i = 0; i < layout_.nx; ++i) x[layout_.index(i, j, TEMP)] = static_cast<double>(i) * hx_;
  }
  return x;
}

}  // namespace nlc
