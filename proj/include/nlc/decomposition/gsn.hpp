#pragma once

#include "nlc/core/problem.hpp"
#include "nlc/solvers/solver.hpp"

namespace nlc {

struct GsnConfig {
  int sweeps = 1;
  int max_block_it = 5;      // m_b
  double block_rtol = 1e-12; // eps_b relative to the block's initial residual norm
};

/// One multiplicative Gauss-Seidel-Newton sweep over the point blocks in natural order. Each
/// block runs Newton with a dense direct solve of its block Jacobian. Blocks with a singular
/// Jacobian are skipped. Counts one function and one Jacobian evaluation per sweep. Throws
/// ConfigError when the problem provides no point blocks.
void gsn_sweep(const NonlinearProblem& problem, Vector& x, const GsnConfig& cfg, SolveStats& stats);

/// Gauss-Seidel-Newton solver: one iteration is `sweeps` sweeps.
class GsnSolver : public NonlinearSolver {
 public:
  GsnSolver(const SolverNode& node, ProblemPtr problem, bool inner);

 protected:
  void step(IterateState& state, SolveStats& stats) override;
  bool needs_residual() const override { return false; }

 private:
  GsnConfig cfg_;
};

}  // namespace nlc
