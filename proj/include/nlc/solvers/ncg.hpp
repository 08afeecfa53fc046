#pragma once

#include <optional>

#include "nlc/solvers/solver.hpp"

namespace nlc {

/// Nonlinear conjugate gradients with the Polak-Ribiere-Polyak beta clipped at zero and the cp
/// line search (initial step carried over from the previous iteration). A line-search failure
/// restarts along -r once; a repeated failure ends the solve with diverged_linesearch. Requires
/// a symmetric Jacobian unless allow_unsym is set.
class NcgSolver : public NonlinearSolver {
 public:
  NcgSolver(const SolverNode& node, ProblemPtr problem, bool inner);

 protected:
  void reset() override;
  void step(IterateState& state, SolveStats& stats) override;

 private:
  std::optional<Vector> r_prev_, c_prev_;
  double lambda_prev_ = 0.0;
};

}  // namespace nlc
