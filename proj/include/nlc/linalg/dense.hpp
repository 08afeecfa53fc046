#pragma once

#include <cstddef>

namespace nlc {

/// Solves the small row-major system A x = b in place (A is overwritten by its factors, b by x)
/// using Gaussian elimination with partial pivoting. Returns false when a pivot is below
/// `rel_tol` times the largest entry of A.
bool dense_solve_in_place(std::size_t n, double* a, double* b, double rel_tol = 1e-14);

}  // namespace nlc
