#include "nlc/composition/preconditioning.hpp"

#include <memory>

namespace nlc {

Vector left_precond_residual(ProblemPtr problem, const SolverNode& inner, const Vector& x, SolveStats& stats) {
  IterationResidual residual(std::move(problem), inner);
  return residual.evaluate(x, stats);
}

SolverNode right_precond_wrap(const SolverNode& outer, const SolverNode& inner) {
  SolverNode node = outer;
  node.lp.reset();
  node.rp = std::make_shared<SolverNode>(inner);
  node.validate();
  return node;
}

SolverNode left_precond_wrap(const SolverNode& outer, const SolverNode& inner) {
  SolverNode node = outer;
  node.rp.reset();
  node.lp = std::make_shared<SolverNode>(inner);
  node.validate();
  return node;
}

}  // namespace nlc
