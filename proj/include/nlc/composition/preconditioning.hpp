#pragma once

#include "nlc/solvers/solver.hpp"

namespace nlc {

/// Left-preconditioned residual x - N(r, x), where N runs `inner` with its iteration budget.
/// Counts one nonlinear preconditioner application.
Vector left_precond_residual(ProblemPtr problem, const SolverNode& inner, const Vector& x, SolveStats& stats);

/// Returns `outer` with `inner` installed as right preconditioner. Throws ConfigError for
/// solvers that do not support right preconditioning.
SolverNode right_precond_wrap(const SolverNode& outer, const SolverNode& inner);

/// Returns `outer` with `inner` installed as left preconditioner. Throws ConfigError for
/// solvers that do not support it.
SolverNode left_precond_wrap(const SolverNode& outer, const SolverNode& inner);

}  // namespace nlc
