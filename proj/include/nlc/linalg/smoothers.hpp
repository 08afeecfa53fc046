#pragma once

#include "nlc/core/vector.hpp"
#include "nlc/linalg/sparse_matrix.hpp"

namespace nlc {

/// In-place SOR sweeps in natural ordering; `symmetric` runs a forward then a backward sweep.
/// Throws std::invalid_argument naming the row of a zero diagonal entry.
void sor_sweep(const SparseMatrix& a, const Vector& b, Vector& x, double omega = 1.0, int sweeps = 1,
               bool symmetric = false);

/// In-place damped Jacobi sweeps.
void jacobi_sweep(const SparseMatrix& a, const Vector& b, Vector& x, double omega = 1.0, int sweeps = 1);

/// Diagonal of A; throws on a zero entry.
Vector diagonal(const SparseMatrix& a);

}  // namespace nlc
