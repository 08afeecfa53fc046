#include "nlc/multilevel/fas.hpp"

#include <string>

#include "nlc/multilevel/transfer.hpp"

namespace nlc {

SolverNode default_fas_smoother() { return make_node(SolverKind::gsn); }

SolverNode default_fas_coarse() {
  SolverNode coarse = make_node(SolverKind::newton);
  coarse.lpc = LinearPcSpec{};
  coarse.max_it = 5;
  return coarse;
}

namespace {
void run_level_solver(const SolverNode& node, const ProblemPtr& problem, Vector& x, SolveStats& stats,
                      std::size_t level, const char* role) {
  SolveOutcome out;
  try {
    out = run_inner(node, problem, x, stats);
  } catch (const NonFiniteResidual& e) {
    throw NonFiniteResidual(std::string("fas level ") + std::to_string(level) + " " + role + ": " + e.what());
  }
  if (out.reason == ConvergedReason::diverged_nan) {
    throw NonFiniteResidual(std::string("fas level ") + std::to_string(level) + " " + role +
                            ": non-finite residual");
  }
}
}  // namespace

void fas_vcycle(const GridHierarchy& hierarchy, std::size_t level, const ProblemPtr& level_problem, Vector& x,
                const SolverNode& smoother, const SolverNode& coarse, SolveStats& stats) {
  const std::size_t n_levels = hierarchy.size();
  if (level + 1 == n_levels) {
    if (n_levels == 1) {
      run_level_solver(smoother, level_problem, x, stats, level, "smoother");
      run_level_solver(smoother, level_problem, x, stats, level, "smoother");
    } else {
      run_level_solver(coarse, level_problem, x, stats, level, "coarse solver");
    }
    return;
  }
  run_level_solver(smoother, level_problem, x, stats, level, "smoother");

  const Layout coarse_layout = hierarchy.layout(level + 1);
  Vector r = evaluate_residual(*level_problem, x, stats);
  scale(-1.0, r);
  Vector b_coarse = restrict_residual(r, coarse_layout);
  const Vector x_coarse0 = inject(x, coarse_layout);
  Vector f_coarse(coarse_layout);
  const ProblemPtr& coarse_base = hierarchy.problem(level + 1);
  coarse_base->apply(x_coarse0, f_coarse);
  ++stats.func_evals;
  axpy(1.0, f_coarse, b_coarse);

  ProblemPtr coarse_problem = std::make_shared<RhsProblem>(coarse_base, std::move(b_coarse));
  Vector x_coarse = x_coarse0;
  fas_vcycle(hierarchy, level + 1, coarse_problem, x_coarse, smoother, coarse, stats);
  axpy(1.0, prolong(difference(x_coarse, x_coarse0), x.layout()), x);

  run_level_solver(smoother, level_problem, x, stats, level, "smoother");
}

FasSolver::FasSolver(const SolverNode& node, ProblemPtr problem, bool inner)
    : NonlinearSolver(node, std::move(problem), inner),
      hierarchy_(GridHierarchy::build(problem_, node.levels)),
      smoother_(node.smoother ? *node.smoother : default_fas_smoother()),
      coarse_(node.coarse ? *node.coarse : default_fas_coarse()) {}

void FasSolver::step(IterateState& state, SolveStats& stats) {
  Vector x = state.x;
  fas_vcycle(hierarchy_, 0, problem_, x, smoother_, coarse_, stats);
  accept(state, std::move(x));
}

}  // namespace nlc
