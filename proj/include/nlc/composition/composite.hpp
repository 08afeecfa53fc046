#pragma once

#include <vector>

#include "nlc/solvers/solver.hpp"

namespace nlc {

enum class CompositeMode { additive, multiplicative };

/// Weights of an additive combination sum_k alpha_k x_k with sum_k alpha_k = 1 that minimize
/// || sum_k alpha_k r_k ||, the minimum-norm choice when the minimizer is not unique.
std::vector<double> additive_weights(const std::vector<Vector>& residuals, double sigma_rtol = 1e-10);

/// Composite solver. Multiplicative: children run in sequence, each from its predecessor's
/// output. Additive: every child runs from the same x and the outputs are combined with
/// least-squares weights (or fixed weights) over the residuals re-evaluated at the outputs.
/// Children run their own iteration budgets (default 1).
class CompositeSolver : public NonlinearSolver {
 public:
  CompositeSolver(const SolverNode& node, ProblemPtr problem, bool inner);
  CompositeMode mode() const { return mode_; }

 protected:
  void step(IterateState& state, SolveStats& stats) override;
  bool needs_residual() const override { return false; }

 private:
  void multiplicative_step(IterateState& state, SolveStats& stats);
  void additive_step(IterateState& state, SolveStats& stats);

  CompositeMode mode_;
};

}  // namespace nlc
