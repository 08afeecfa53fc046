#pragma once

#include <memory>

#include "nlc/core/problem.hpp"
#include "nlc/linalg/sparse_matrix.hpp"

namespace nlc {

/// Affine system F(x) = A x with right-hand side b. Point blocks follow the layout's dof count.
class LinearProblem : public NonlinearProblem {
 public:
  LinearProblem(SparseMatrix a, Vector b, std::string name = "linear");

  std::string name() const override { return name_; }
  Layout layout() const override { return b_.layout(); }
  void apply(const Vector& x, Vector& f) const override;
  const Vector* rhs() const override { return &b_; }
  bool has_jacobian() const override { return true; }
  SparseMatrix jacobian(const Vector& x) const override;
  bool symmetric_jacobian() const override { return symmetric_; }
  const PointBlockOps* point_blocks() const override { return &blocks_; }

  const SparseMatrix& matrix() const { return a_; }

 private:
  SparseMatrix a_;
  Vector b_;
  std::string name_;
  bool symmetric_;
  PointBlockOps blocks_;
};

/// 1D Poisson on [0,1] with n nodes: boundary rows u, interior rows (2u_i - u_{i-1} - u_{i+1}) / h
/// and right-hand side h * f. Coarsens by rediscretization.
class Poisson1DProblem : public NonlinearProblem {
 public:
  explicit Poisson1DProblem(std::size_t n, double source = 1.0);

  std::string name() const override { return "poisson1d"; }
  Layout layout() const override { return Layout::flat(n_); }
  void apply(const Vector& x, Vector& f) const override;
  const Vector* rhs() const override { return &b_; }
  bool has_jacobian() const override { return true; }
  SparseMatrix jacobian(const Vector& x) const override;
  bool symmetric_jacobian() const override { return true; }
  const PointBlockOps* point_blocks() const override { return &blocks_; }
  std::shared_ptr<NonlinearProblem> coarsen() const override;
  bool coarsenable() const override { return n_ % 2 == 1 && (n_ + 1) / 2 >= 3; }

 private:
  std::size_t n_;
  double source_;
  SparseMatrix a_;
  Vector b_;
  PointBlockOps blocks_;
};

/// Tridiagonal (-1, 2, -1) matrix of order n.
SparseMatrix poisson1d_matrix(std::size_t n);

}  // namespace nlc
