#include "nlc/solvers/qn.hpp"

#include <cmath>
#include <vector>

namespace nlc {

bool QNState::push(Vector s_k, Vector y_k) {
  const double ys = dot(y_k, s_k);
  if (!(std::abs(ys) >= 1e-30 * norm2(y_k) * norm2(s_k)) || ys == 0.0) return false;
  s.push_back(std::move(s_k));
  y.push_back(std::move(y_k));
  if (s.size() > depth) {
    s.pop_front();
    y.pop_front();
  }
  return true;
}

double QNState::shanno_gamma() const {
  if (s.empty()) return 1.0;
  return dot(s.back(), y.back()) / dot(y.back(), y.back());
}

Vector lbfgs_two_loop(const QNState& state, const Vector& g, bool shanno) {
  const std::size_t m = state.size();
  std::vector<double> alpha(m), rho(m);
  Vector q = g;
  for (std::size_t k = m; k-- > 0;) {
    rho[k] = 1.0 / dot(state.y[k], state.s[k]);
    alpha[k] = rho[k] * dot(state.s[k], q);
    axpy(-alpha[k], state.y[k], q);
  }
  scale(shanno ? state.shanno_gamma() : 1.0, q);
  for (std::size_t k = 0; k < m; ++k) {
    const double beta = rho[k] * dot(state.y[k], q);
    axpy(alpha[k] - beta, state.s[k], q);
  }
  return q;
}

QNSolver::QNSolver(const SolverNode& node, ProblemPtr problem, bool inner)
    : NonlinearSolver(node, std::move(problem), inner) {
  if (!problem_->symmetric_jacobian() && !node.allow_unsym.value_or(false)) {
    throw ConfigError("qn: problem '" + problem_->name() +
                      "' does not have a symmetric Jacobian (set allow_unsym=true to override)");
  }
  qn_.depth = static_cast<std::size_t>(node.m.value_or(10));
}

void QNSolver::reset() {
  qn_.clear();
  failures_ = 0;
}

void QNSolver::step(IterateState& state, SolveStats& stats) {
  const LineSearchConfig cfg = line_search_config(LineSearchKind::cp);
  const bool plain_search = !(residual_.preconditioned() && node_.ls_unpreconditioned.value_or(false));
  Vector d = lbfgs_two_loop(qn_, state.r);
  scale(-1.0, d);
  const Vector r_search = plain_search ? state.r : evaluate_residual(*problem_, state.x, stats);
  LineSearchOutcome ls = line_search(search_residual(), state.x, r_search, d, dot(r_search, d), cfg, stats);
  if (!ls.succeeded) {
    qn_.clear();
    if (++failures_ >= 2) {
      state.reason = ConvergedReason::diverged_linesearch;
      return;
    }
  } else {
    failures_ = 0;
  }
  const Vector x_old = state.x;
  const Vector r_old = state.r;
  if (ls.has_residual && plain_search) {
    accept(state, std::move(ls.x), std::move(ls.r), stats);
  } else {
    accept(state, std::move(ls.x));
    refresh(state, stats);
  }
  if (ls.succeeded) qn_.push(difference(state.x, x_old), difference(state.r, r_old));
}

}  // namespace nlc
