#pragma once

#include <memory>

#include "nlc/core/problem.hpp"

namespace nlc {

struct PLaplacianParams {
  double p = 5.0;
  double epsilon = 1e-5;
  double source = 0.1;
  double bratu_lambda = 0.0;
  std::size_t nx = 65;
  std::size_t ny = 65;

  void validate() const;
};

/// Regularized p-Laplacian -div((eps^2 + |grad u|^2 / 2)^((p-2)/2) grad u) = c + lambda e^u on
/// [-1,1]^2 with homogeneous Dirichlet data. The interior residual is the gradient of the
/// discrete energy
///   E(u) = sum_cells sum_corners (hx hy / 4) (2/p) (eps^2 + |g_c|^2 / 2)^(p/2)
///          - sum_interior hx hy (c u + lambda e^u),
/// where g_c is the one-sided gradient formed from the two cell edges meeting at corner c, so
/// the Jacobian is symmetric. For p = 2 the rows reduce to the area-scaled 5-point Laplacian.
/// Boundary rows are u.
class PLaplacianProblem : public NonlinearProblem {
 public:
  explicit PLaplacianProblem(PLaplacianParams params);

  std::string name() const override { return "plaplacian"; }
  Layout layout() const override { return layout_; }
  void apply(const Vector& x, Vector& f) const override;
  bool has_jacobian() const override { return true; }
  SparseMatrix jacobian(const Vector& x) const override;
  bool symmetric_jacobian() const override { return true; }
  const PointBlockOps* point_blocks() const override { return &blocks_; }
  std::shared_ptr<NonlinearProblem> coarsen() const override;
  bool coarsenable() const override;
  double default_ksp_rtol() const override { return 1e-5; }
  /// u0(x, y) = x y (1 - x^2) (1 - y^2).
  Vector initial_guess() const override;

  const PLaplacianParams& params() const { return params_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }

 private:
  template <class Emit>
  void cell_residual(const Vector& x, std::size_t ci, std::size_t cj, Emit&& emit) const;
  template <class Emit>
  void cell_jacobian(const Vector& x, std::size_t ci, std::size_t cj, Emit&& emit) const;
  double value(const Vector& x, std::size_t i, std::size_t j) const;

  PLaplacianParams params_;
  Layout layout_;
  double hx_, hy_;
  PointBlockOps blocks_;
};

}  // namespace nlc
