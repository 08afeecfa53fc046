#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include "nlc/core/stats.hpp"
#include "nlc/core/vector.hpp"

namespace nlc {

class SparseMatrix;

/// Raised when a residual evaluation produces NaN or Inf. Solver drivers catch it and report
/// diverged_nan.
class NonFiniteResidual : public std::runtime_error {
 public:
  explicit NonFiniteResidual(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for invalid solver or problem configuration.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Point-block access used by Gauss-Seidel-Newton. Every grid node owns one block of
/// `block_size` consecutive unknowns.
struct PointBlockOps {
  std::size_t block_size = 1;
  /// Writes F(x) restricted to the rows of `node` (no right-hand side) into `out[0..block_size)`.
  std::function<void(const Vector& x, std::size_t node, double* out)> residual;
  /// Writes d F_node / d x_node, row-major block_size x block_size, into `out`.
  std::function<void(const Vector& x, std::size_t node, double* out)> jacobian;
};

/// A nonlinear system r(x) = F(x) - b on a structured grid.
class NonlinearProblem {
 public:
  NonlinearProblem() = default;
  NonlinearProblem(const NonlinearProblem&) = delete;
  NonlinearProblem& operator=(const NonlinearProblem&) = delete;
  virtual ~NonlinearProblem() = default;

  virtual std::string name() const = 0;
  virtual Layout layout() const = 0;
  std::size_t dimension() const { return layout().size(); }

  /// Computes F(x), without the right-hand side.
  virtual void apply(const Vector& x, Vector& f) const = 0;
  /// Right-hand side b, or nullptr when b = 0.
  virtual const Vector* rhs() const { return nullptr; }

  virtual bool has_jacobian() const { return false; }
  /// Assembled dF/dx. Throws ConfigError when the problem has no analytic Jacobian.
  virtual SparseMatrix jacobian(const Vector& x) const;
  /// True when the Jacobian is symmetric at every state (gradient systems).
  virtual bool symmetric_jacobian() const { return false; }

  virtual const PointBlockOps* point_blocks() const { return nullptr; }
  /// Rediscretization on the next coarser grid (n_coarse = (n + 1) / 2 per direction), or nullptr.
  virtual std::shared_ptr<NonlinearProblem> coarsen() const { return nullptr; }
  /// Whether coarsen() would succeed.
  virtual bool coarsenable() const { return false; }

  /// Relative tolerance used by Newton's inner Krylov solve when the solver does not set one.
  virtual double default_ksp_rtol() const { return 1e-5; }
  virtual Vector initial_guess() const { return Vector(layout()); }
};

using ProblemPtr = std::shared_ptr<const NonlinearProblem>;

/// The same F with a replaced right-hand side. Used for FAS coarse problems.
class RhsProblem : public NonlinearProblem {
 public:
  RhsProblem(ProblemPtr base, Vector b);

  std::string name() const override { return base_->name(); }
  Layout layout() const override { return base_->layout(); }
  void apply(const Vector& x, Vector& f) const override { base_->apply(x, f); }
  const Vector* rhs() const override { return &b_; }
  bool has_jacobian() const override { return base_->has_jacobian(); }
  SparseMatrix jacobian(const Vector& x) const override;
  bool symmetric_jacobian() const override { return base_->symmetric_jacobian(); }
  const PointBlockOps* point_blocks() const override { return base_->point_blocks(); }
  /// Coarsens the operator F only; the coarse problem carries its own right-hand side.
  std::shared_ptr<NonlinearProblem> coarsen() const override { return base_->coarsen(); }
  bool coarsenable() const override { return base_->coarsenable(); }
  double default_ksp_rtol() const override { return base_->default_ksp_rtol(); }
  Vector initial_guess() const override { return base_->initial_guess(); }

  const ProblemPtr& base() const { return base_; }

 private:
  ProblemPtr base_;
  Vector b_;
};

/// Problem defined by callbacks; convenient for small systems and tests.
class FunctionProblem : public NonlinearProblem {
 public:
  using Fn = std::function<void(const Vector& x, Vector& f)>;
  using JacFn = std::function<SparseMatrix(const Vector& x)>;

  FunctionProblem(Layout layout, Fn f, JacFn jacobian = nullptr, std::string name = "function");

  std::string name() const override { return name_; }
  Layout layout() const override { return layout_; }
  void apply(const Vector& x, Vector& f) const override;
  const Vector* rhs() const override { return b_.empty() ? nullptr : &b_; }
  bool has_jacobian() const override { return static_cast<bool>(jac_); }
  SparseMatrix jacobian(const Vector& x) const override;
  bool symmetric_jacobian() const override { return symmetric_; }
  const PointBlockOps* point_blocks() const override { return blocks_ ? &*blocks_ : nullptr; }

  void set_rhs(Vector b);
  void set_symmetric(bool symmetric) { symmetric_ = symmetric; }
  void set_point_blocks(PointBlockOps ops) { blocks_ = std::make_shared<PointBlockOps>(std::move(ops)); }

 private:
  Layout layout_;
  Fn f_;
  JacFn jac_;
  std::string name_;
  Vector b_;
  bool symmetric_ = false;
  std::shared_ptr<PointBlockOps> blocks_;
};

/// Returns F(x) - b and counts one function evaluation. Throws NonFiniteResidual on NaN/Inf.
Vector evaluate_residual(const NonlinearProblem& problem, const Vector& x, SolveStats& stats);

/// Assembles the Jacobian and counts one Jacobian evaluation.
SparseMatrix evaluate_jacobian(const NonlinearProblem& problem, const Vector& x, SolveStats& stats);

}  // namespace nlc
