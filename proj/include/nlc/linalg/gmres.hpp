#pragma once

#include <functional>

#include "nlc/core/stats.hpp"
#include "nlc/core/vector.hpp"

namespace nlc {

class SparseMatrix;

/// out = Op(in). `out` is sized by the caller.
using LinearOperator = std::function<void(const Vector& in, Vector& out)>;

LinearOperator matrix_operator(const SparseMatrix& a);

enum class PcSide { left, right };

struct KrylovConfig {
  double rtol = 1e-5;
  double atol = 1e-50;
  int max_it = 10000;
  int restart = 30;
  PcSide side = PcSide::right;
};

struct KrylovResult {
  bool converged = false;
  int iterations = 0;
  double initial_norm = 0.0;
  double final_norm = 0.0;
};

/// Restarted GMRES with modified Gram-Schmidt (plus one reorthogonalization pass when the
/// orthogonalization loses more than a factor 1e3 of the vector norm). Solves A x = b starting
/// from x. Convergence is ||b - A x|| <= max(rtol * ||b - A x0||, atol), measured on the
/// preconditioned residual for left preconditioning. `pc` may be empty.
KrylovResult gmres(const LinearOperator& a, const LinearOperator& pc, const Vector& b, Vector& x,
                   const KrylovConfig& cfg, SolveStats& stats);

}  // namespace nlc
