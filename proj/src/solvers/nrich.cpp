#include "nlc/solvers/nrich.hpp"

namespace nlc {

NrichSolver::NrichSolver(const SolverNode& node, ProblemPtr problem, bool inner)
    : NonlinearSolver(node, std::move(problem), inner) {
  line_search_config(LineSearchKind::l2);
}

void NrichSolver::step(IterateState& state, SolveStats& stats) {
  if (node_.rp) {
    Vector x_half = state.x;
    SolveOutcome out = run_inner(*node_.rp, problem_, x_half, stats, state.r_valid ? &state.r : nullptr);
    ++stats.npc_applies;
    if (out.reason == ConvergedReason::diverged_nan) throw NonFiniteResidual("nrich: right preconditioner");
    Vector r_half = out.final_residual ? *out.final_residual : evaluate_residual(*problem_, x_half, stats);
    accept(state, std::move(x_half), std::move(r_half), stats);
  }
  const LineSearchConfig cfg = line_search_config(LineSearchKind::l2);
  const bool plain_search = !(residual_.preconditioned() && node_.ls_unpreconditioned.value_or(false));
  Vector d = state.r;
  scale(-1.0, d);
  const Vector r_search = plain_search ? state.r : evaluate_residual(*problem_, state.x, stats);
  LineSearchOutcome ls = line_search(search_residual(), state.x, r_search, d, -dot(r_search, r_search), cfg, stats);
  failures_ = ls.succeeded ? 0 : failures_ + 1;
  if (failures_ >= 2) {
    state.reason = ConvergedReason::diverged_linesearch;
    return;
  }
  if (ls.has_residual && plain_search) {
    accept(state, std::move(ls.x), std::move(ls.r), stats);
  } else {
    accept(state, std::move(ls.x));
  }
}

}  // namespace nlc
