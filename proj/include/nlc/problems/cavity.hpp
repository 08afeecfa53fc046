#pragma once

#include <memory>

#include "nlc/core/problem.hpp"

namespace nlc {

struct CavityParams {
  double grashof = 2e4;
  double prandtl = 1.0;
  double lid_velocity = 100.0;
  std::size_t nx = 49;
  std::size_t ny = 49;

  void validate() const;
};

/// Velocity-vorticity driven cavity with buoyancy on the unit square. Four unknowns per node
/// (u, v, omega, T). Interior rows are area-scaled 5-point Laplacians with first-order upwind
/// convection and central source terms. Boundary rows: no-slip u = v = 0 with u = lid on the
/// top wall; vorticity from the one-sided tangential velocity difference; T = 0 (left), T = 1
/// (right) and zero normal flux on the bottom and top walls. The left and right wall rows take
/// precedence at the corners.
class CavityProblem : public NonlinearProblem {
 public:
  enum Field : std::size_t { U = 0, V = 1, OMEGA = 2, TEMP = 3 };

  explicit CavityProblem(CavityParams params);

  std::string name() const override { return "cavity"; }
  Layout layout() const override { return layout_; }
  void apply(const Vector& x, Vector& f) const override;
  bool has_jacobian() const override { return true; }
  SparseMatrix jacobian(const Vector& x) const override;
  const PointBlockOps* point_blocks() const override { return &blocks_; }
  std::shared_ptr<NonlinearProblem> coarsen() const override;
  bool coarsenable() const override;
  double default_ksp_rtol() const override { return 1e-8; }
  /// u = v = omega = 0 and T = x.
  Vector initial_guess() const override;

  const CavityParams& params() const { return params_; }

 private:
  void node_residual(const Vector& x, std::size_t i, std::size_t j, double* out) const;
  /// Calls emit(row_field, col_node_i, col_node_j, col_field, value) for every Jacobian entry of
  /// the four rows at node (i, j).
  template <class Emit>
  void node_jacobian(const Vector& x, std::size_t i, std::size_t j, Emit&& emit) const;

  CavityParams params_;
  Layout layout_;
  double hx_, hy_, hydhx_, hxdhy_, dhx_, dhy_;
  PointBlockOps blocks_;
};

}  // namespace nlc
