#include "nlc/core/problem.hpp"

#include <string>

#include "nlc/linalg/sparse_matrix.hpp"

namespace nlc {

SparseMatrix NonlinearProblem::jacobian(const Vector&) const {
  throw ConfigError("problem '" + name() + "' has no analytic Jacobian");
}

RhsProblem::RhsProblem(ProblemPtr base, Vector b) : base_(std::move(base)), b_(std::move(b)) {
  if (b_.size() != base_->dimension()) throw std::invalid_argument("RhsProblem: rhs length mismatch");
}

SparseMatrix RhsProblem::jacobian(const Vector& x) const { return base_->jacobian(x); }

FunctionProblem::FunctionProblem(Layout layout, Fn f, JacFn jacobian, std::string name)
    : layout_(layout), f_(std::move(f)), jac_(std::move(jacobian)), name_(std::move(name)) {}

void FunctionProblem::apply(const Vector& x, Vector& f) const {
  if (f.layout() != layout_) f = Vector(layout_);
  f_(x, f);
}

SparseMatrix FunctionProblem::jacobian(const Vector& x) const {
  if (!jac_) return NonlinearProblem::jacobian(x);
  return jac_(x);
}

void FunctionProblem::set_rhs(Vector b) {
  if (b.size() != layout_.size()) throw std::invalid_argument("FunctionProblem: rhs length mismatch");
  b_ = std::move(b);
}

Vector evaluate_residual(const NonlinearProblem& problem, const Vector& x, SolveStats& stats) {
  if (x.size() != problem.dimension()) {
    throw std::invalid_argument("evaluate_residual: state length " + std::to_string(x.size()) +
                                " vs problem dimension " + std::to_string(problem.dimension()));
  }
  Vector r(problem.layout());
  problem.apply(x, r);
  ++stats.func_evals;
  if (const Vector* b = problem.rhs()) {
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= (*b)[i];
  }
  if (!all_finite(r)) {
    throw NonFiniteResidual("non-finite residual in problem '" + problem.name() + "' after " +
                            std::to_string(stats.nonlinear_its) + " iterations");
  }
  return r;
}

SparseMatrix evaluate_jacobian(const NonlinearProblem& problem, const Vector& x, SolveStats& stats) {
  SparseMatrix j = problem.jacobian(x);
  ++stats.jac_evals;
  return j;
}

}  // namespace nlc
