#include "nlc/solvers/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>

namespace nlc {

namespace {
bool bitwise_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}
}  // namespace

IterationResidual::IterationResidual(ProblemPtr problem) : problem_(std::move(problem)) {}

IterationResidual::IterationResidual(ProblemPtr problem, const SolverNode& inner)
    : problem_(problem), inner_(make_solver(inner, problem, true)) {}

Vector IterationResidual::evaluate(const Vector& x, SolveStats& stats, const Vector* r0) {
  if (!inner_) {
    Vector r = r0 ? *r0 : evaluate_residual(*problem_, x, stats);
    last_x_ = x;
    last_norm_ = norm2(r);
    last_r_ = r;
    has_last_ = true;
    return r;
  }
  Vector xin = x;
  SolveStats child;
  SolveOutcome outcome = inner_->solve(xin, child, r0);
  stats.absorb(child);
  ++stats.npc_applies;
  if (outcome.reason == ConvergedReason::diverged_nan && !std::isfinite(outcome.initial_norm)) {
    throw NonFiniteResidual("non-finite residual inside the left preconditioner");
  }
  last_x_ = x;
  last_norm_ = outcome.initial_norm;
  last_r_.reset();
  has_last_ = true;
  return difference(x, xin);
}

double IterationResidual::original_norm(const Vector& x, SolveStats& stats) {
  if (has_last_ && bitwise_equal(last_x_, x)) return last_norm_;
  return norm2(evaluate_residual(*problem_, x, stats));
}

const Vector* IterationResidual::original_residual(const Vector& x) const {
  if (has_last_ && last_r_ && bitwise_equal(last_x_, x)) return &*last_r_;
  return nullptr;
}

ResidualFn IterationResidual::as_function() {
  return [this](const Vector& x, SolveStats& stats) { return evaluate(x, stats); };
}

NonlinearSolver::NonlinearSolver(const SolverNode& node, ProblemPtr problem, bool inner)
    : node_(node),
      problem_(problem),
      inner_(inner),
      residual_(node.lp ? IterationResidual(problem, *node.lp) : IterationResidual(problem)),
      record_history_(!inner) {
  node_.validate();
  conv_.rtol = node.rtol.value_or(conv_.rtol);
  conv_.atol = node.atol.value_or(conv_.atol);
  conv_.stol = node.stol.value_or(conv_.stol);
  conv_.divtol = node.divtol.value_or(conv_.divtol);
  conv_.max_it = node.max_it.value_or(inner ? 1 : conv_.max_it);
  conv_.validate();
  test_tolerances_ = !inner || node.rtol.has_value() || node.atol.has_value();
}

void NonlinearSolver::refresh(IterateState& state, SolveStats& stats) {
  state.r = residual_.evaluate(state.x, stats);
  state.fnorm = residual_.original_norm(state.x, stats);
  state.r_valid = true;
}

namespace {
double relative_step(const Vector& x_old, const Vector& x_new) {
  double d = 0.0, n = 0.0;
  for (std::size_t i = 0; i < x_new.size(); ++i) {
    d += (x_new[i] - x_old[i]) * (x_new[i] - x_old[i]);
    n += x_new[i] * x_new[i];
  }
  return n > 0.0 ? std::sqrt(d / n) : std::sqrt(d);
}
}  // namespace

void NonlinearSolver::accept(IterateState& state, Vector x_new, Vector r_new, SolveStats& stats) {
  state.step_norm = relative_step(state.x, x_new);
  state.x = std::move(x_new);
  state.r = std::move(r_new);
  state.r_valid = true;
  state.fnorm = residual_.preconditioned() ? residual_.original_norm(state.x, stats) : norm2(state.r);
}

void NonlinearSolver::accept(IterateState& state, Vector x_new) {
  state.step_norm = relative_step(state.x, x_new);
  state.x = std::move(x_new);
  state.r_valid = false;
}

LineSearchConfig NonlinearSolver::line_search_config(LineSearchKind default_kind) const {
  LineSearchConfig cfg;
  cfg.kind = node_.ls.value_or(default_kind);
  if (node_.damping) cfg.lambda0 = *node_.damping;
  if (node_.ls_its) cfg.its = *node_.ls_its;
  if (node_.ls_order) cfg.order = *node_.ls_order;
  cfg.validate();
  return cfg;
}

ResidualFn NonlinearSolver::search_residual() {
  if (residual_.preconditioned() && node_.ls_unpreconditioned.value_or(false)) {
    ProblemPtr p = problem_;
    return [p](const Vector& x, SolveStats& stats) { return evaluate_residual(*p, x, stats); };
  }
  return residual_.as_function();
}

SolveOutcome NonlinearSolver::solve(Vector& x, SolveStats& stats, const Vector* r0) {
  const auto start = std::chrono::steady_clock::now();
  reset();
  SolveOutcome out;
  IterateState st;
  st.x = x;
  try {
    st.r = residual_.evaluate(st.x, stats, r0);
    st.fnorm = residual_.original_norm(st.x, stats);
    st.r_valid = true;
  } catch (const NonFiniteResidual&) {
    out.reason = ConvergedReason::diverged_nan;
    out.initial_norm = out.final_norm = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const double rnorm0 = st.fnorm;
  const double pnorm0 = norm2(st.r);
  out.initial_norm = rnorm0;
  long it = 0;
  ConvergedReason reason = ConvergedReason::iterating;
  while (true) {
    const bool need = test_tolerances_ || record_history_ || monitor_ || (it < conv_.max_it && needs_residual());
    if (!st.r_valid && need) {
      try {
        refresh(st, stats);
      } catch (const NonFiniteResidual&) {
        reason = ConvergedReason::diverged_nan;
        break;
      }
    }
    if (st.r_valid) {
      if (record_history_) stats.history.emplace_back(static_cast<int>(it), st.fnorm);
      if (monitor_) monitor_(it, st.fnorm);
    }
    if (st.r_valid && st.fnorm == 0.0) {
      reason = ConvergedReason::converged_atol;
    } else if (test_tolerances_ && st.r_valid) {
      reason = check_convergence(it, conv_, st.fnorm, rnorm0, st.step_norm);
      // A left-preconditioned solver reduces x - M(x); the original residual may grow transiently,
      // so the ratio test follows the preconditioned norm.
      if (reason == ConvergedReason::diverged_ratio && residual_.preconditioned() &&
          !(norm2(st.r) > conv_.divtol * pnorm0)) {
        reason = it >= conv_.max_it ? ConvergedReason::diverged_max_it : ConvergedReason::iterating;
      }
      if (inner_ && reason == ConvergedReason::diverged_max_it) reason = ConvergedReason::converged_its;
    } else {
      reason = it >= conv_.max_it ? ConvergedReason::converged_its : ConvergedReason::iterating;
    }
    if (reason != ConvergedReason::iterating) break;

    Vector previous = st.x;
    try {
      step(st, stats);
    } catch (const NonFiniteResidual&) {
      st.x = std::move(previous);
      st.r_valid = false;
      reason = ConvergedReason::diverged_nan;
      ++it;
      ++stats.nonlinear_its;
      break;
    }
    ++it;
    ++stats.nonlinear_its;
    if (st.reason != ConvergedReason::iterating) {
      reason = st.reason;
      if (!st.r_valid) {
        try {
          refresh(st, stats);
        } catch (const NonFiniteResidual&) {
        }
      }
      if (st.r_valid && record_history_) stats.history.emplace_back(static_cast<int>(it), st.fnorm);
      if (st.r_valid && monitor_) monitor_(it, st.fnorm);
      break;
    }
  }
  x = st.x;
  out.reason = reason;
  out.iterations = it;
  out.final_norm = st.r_valid ? st.fnorm : std::numeric_limits<double>::quiet_NaN();
  if (st.r_valid) {
    if (const Vector* r = residual_.original_residual(st.x)) out.final_residual = *r;
  }
  if (!inner_) {
    stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return out;
}

SolveOutcome run_inner(const SolverNode& node, ProblemPtr problem, Vector& x, SolveStats& stats, const Vector* r0) {
  auto solver = make_solver(node, std::move(problem), true);
  SolveStats child;
  SolveOutcome out = solver->solve(x, child, r0);
  stats.absorb(child);
  return out;
}

}  // namespace nlc
