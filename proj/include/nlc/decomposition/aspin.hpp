#pragma once

#include "nlc/decomposition/nasm.hpp"
#include "nlc/linalg/gmres.hpp"
#include "nlc/linalg/sparse_matrix.hpp"

namespace nlc {

/// Approximate Jacobian of the left-preconditioned residual x - NASM(x):
///   v -> sum_B inject_B( J^B(x^B*)^{-1} R^B J(x) v ),
/// using the subdomain factors cached by the most recent application of `nasm`. The injection
/// follows the Schwarz variant. Throws std::logic_error when no factors are cached.
LinearOperator aspin_operator(const NasmSolver& nasm, const SparseMatrix& jacobian);

/// Jacobian of x - NASM(x) for exact subdomain solves:
///   v -> sum_B inject_B( J^B(x^B*)^{-1} R^B J(x~^B) v ),
/// where x~^B is the iterate with subdomain B replaced by its local solution. Unlike the frozen
/// form above, the outer product uses the same state as the local factor.
LinearOperator aspin_operator(const NasmSolver& nasm);

}  // namespace nlc
