#pragma once

#include "nlc/multilevel/hierarchy.hpp"
#include "nlc/solvers/solver.hpp"

namespace nlc {

/// Default FAS smoother: one Gauss-Seidel-Newton sweep.
SolverNode default_fas_smoother();
/// Default FAS coarse solver: five Newton iterations with a direct linear solve.
SolverNode default_fas_coarse();

/// One FAS V(1,1) cycle on `level` of the hierarchy for the problem `level_problem` (the level's
/// operator with its current right-hand side), updating x in place:
///   x_s = S(x);  x_H = inject(x_s);  b_H = R(b - F(x_s)) + F_H(x_H);
///   x <- x_s + P(FAS_H(x_H) - x_H);  x <- S(x).
/// The coarsest level is solved by `coarse`; a single-level hierarchy smooths twice. A
/// non-finite residual anywhere aborts the cycle with NonFiniteResidual naming the level.
void fas_vcycle(const GridHierarchy& hierarchy, std::size_t level, const ProblemPtr& level_problem, Vector& x,
                const SolverNode& smoother, const SolverNode& coarse, SolveStats& stats);

/// Full approximation scheme: one iteration is one V-cycle.
class FasSolver : public NonlinearSolver {
 public:
  FasSolver(const SolverNode& node, ProblemPtr problem, bool inner);
  const GridHierarchy& hierarchy() const { return hierarchy_; }

 protected:
  void step(IterateState& state, SolveStats& stats) override;
  bool needs_residual() const override { return false; }

 private:
  GridHierarchy hierarchy_;
  SolverNode smoother_;
  SolverNode coarse_;
};

}  // namespace nlc
