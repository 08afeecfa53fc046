#pragma once

#include <memory>

#include "nlc/core/problem.hpp"
#include "nlc/linalg/gmres.hpp"
#include "nlc/linalg/sparse_matrix.hpp"
#include "nlc/solvers/solver_node.hpp"

namespace nlc {

/// A built linear preconditioner. `apply` is empty for kind none; `holder` keeps its data alive.
struct LinearPc {
  LinearOperator apply;
  std::shared_ptr<const void> holder;
};

/// Builds the preconditioner described by `spec` for the Jacobian `jacobian` of `problem` at the
/// state x. Multigrid rediscretizes the Jacobian on every level at the injected state (counted
/// in stats). Throws SingularMatrix from direct factorizations and ConfigError for unusable
/// configurations.
LinearPc make_linear_pc(const LinearPcSpec& spec, const ProblemPtr& problem, const SparseMatrix& jacobian,
                        const Vector& x, SolveStats& stats);

}  // namespace nlc
