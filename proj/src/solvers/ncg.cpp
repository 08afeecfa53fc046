#include "nlc/solvers/ncg.hpp"

#include <algorithm>

namespace nlc {

NcgSolver::NcgSolver(const SolverNode& node, ProblemPtr problem, bool inner)
    : NonlinearSolver(node, std::move(problem), inner) {
  if (!problem_->symmetric_jacobian() && !node.allow_unsym.value_or(false)) {
    throw ConfigError("ncg: problem '" + problem_->name() +
                      "' does not have a symmetric Jacobian (set allow_unsym=true to override)");
  }
}

void NcgSolver::reset() {
  r_prev_.reset();
  c_prev_.reset();
  lambda_prev_ = 0.0;
}

void NcgSolver::step(IterateState& state, SolveStats& stats) {
  LineSearchConfig cfg = line_search_config(LineSearchKind::cp);
  cfg.carry_lambda = true;
  if (lambda_prev_ > 0.0 && !node_.damping) cfg.lambda0 = lambda_prev_;
  const bool plain_search = !(residual_.preconditioned() && node_.ls_unpreconditioned.value_or(false));

  Vector c = state.r;
  scale(-1.0, c);
  if (r_prev_ && c_prev_) {
    const double denom = dot(*r_prev_, *r_prev_);
    const double beta = denom > 0.0 ? std::max(0.0, dot(state.r, difference(state.r, *r_prev_)) / denom) : 0.0;
    axpy(beta, *c_prev_, c);
  }
  const Vector r_search = plain_search ? state.r : evaluate_residual(*problem_, state.x, stats);
  LineSearchOutcome ls = line_search(search_residual(), state.x, r_search, c, dot(r_search, c), cfg, stats);
  if (!ls.succeeded) {
    c = state.r;
    scale(-1.0, c);
    ls = line_search(search_residual(), state.x, r_search, c, dot(r_search, c), cfg, stats);
    if (!ls.succeeded) {
      state.reason = ConvergedReason::diverged_linesearch;
      return;
    }
  }
  lambda_prev_ = ls.lambda;
  r_prev_ = state.r;
  c_prev_ = c;
  if (ls.has_residual && plain_search) {
    accept(state, std::move(ls.x), std::move(ls.r), stats);
  } else {
    accept(state, std::move(ls.x));
  }
}

}  // namespace nlc
