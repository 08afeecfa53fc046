#pragma once

#include "nlc/solvers/solver.hpp"

namespace nlc {

/// Nonlinear Richardson: x <- x + lambda d with d = -r (or N(x) - x under left preconditioning)
/// and lambda from a line search (l2 by default). With a right preconditioner the step starts
/// from N(x). Two consecutive line-search failures end the solve with diverged_linesearch.
class NrichSolver : public NonlinearSolver {
 public:
  NrichSolver(const SolverNode& node, ProblemPtr problem, bool inner);

 protected:
  void reset() override { failures_ = 0; }
  void step(IterateState& state, SolveStats& stats) override;

 private:
  int failures_ = 0;
};

}  // namespace nlc
