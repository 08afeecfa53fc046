#include "nlc/decomposition/nasm.hpp"

namespace nlc {

SolverNode default_subdomain_solver() {
  SolverNode sub = make_node(SolverKind::newton);
  sub.lpc = LinearPcSpec{};
  sub.max_it = 1;
  return sub;
}

SolverNode aspin_subdomain_solver() {
  SolverNode sub = make_node(SolverKind::newton);
  sub.lpc = LinearPcSpec{};
  sub.max_it = 50;
  sub.rtol = 1e-10;
  return sub;
}

NasmSolver::NasmSolver(const SolverNode& node, ProblemPtr problem, bool inner, SchwarzVariant variant)
    : NonlinearSolver(node, std::move(problem), inner), variant_(variant) {
  const Layout layout = problem_->layout();
  const auto px = static_cast<std::size_t>(node.px.value_or(2));
  const auto py = static_cast<std::size_t>(layout.ny == 1 ? 1 : node.py.value_or(2));
  const auto overlap = static_cast<std::size_t>(node.overlap.value_or(6));
  dd_ = std::make_unique<SubdomainDecomposition>(layout, px, py, overlap);
  sub_ = node.sub ? *node.sub : default_subdomain_solver();
}

void NasmSolver::inject(std::size_t b, const Vector& local, Vector& global) const {
  if (variant_ == SchwarzVariant::ras) {
    dd_->add_owned(b, local, global);
  } else {
    dd_->add_averaged(b, local, global);
  }
}

Vector NasmSolver::apply_once(const Vector& x, SolveStats& stats) {
  Vector x_new = x;
  if (cache_factors_) {
    factors_.assign(dd_->size(), std::nullopt);
    jacobians_.assign(dd_->size(), std::nullopt);
  }
  for (std::size_t b = 0; b < dd_->size(); ++b) {
    auto local = std::make_shared<SubdomainProblem>(problem_, *dd_, b, x);
    const Vector x0 = dd_->restrict_to(b, x);
    Vector xb = x0;
    SolveOutcome out;
    try {
      out = run_inner(sub_, local, xb, stats);
    } catch (const NonFiniteResidual&) {
      out.reason = ConvergedReason::diverged_nan;
    }
    // A failed line search keeps the last accepted local iterate; only blow-ups are discarded.
    const bool blew_up = out.reason == ConvergedReason::diverged_nan || out.reason == ConvergedReason::diverged_ratio;
    if (blew_up || !all_finite(xb)) continue;
    inject(b, difference(xb, x0), x_new);
    if (cache_factors_) {
      Vector x_local = x;
      dd_->scatter(b, xb, x_local);
      SparseMatrix jac = evaluate_jacobian(*problem_, x_local, stats);
      try {
        factors_[b].emplace(jac.submatrix((*dd_)[b].dofs));
        jacobians_[b].emplace(std::move(jac));
      } catch (const SingularMatrix&) {
      }
    }
  }
  if (cache_factors_) cached_x_ = x;
  return x_new;
}

void NasmSolver::step(IterateState& state, SolveStats& stats) {
  accept(state, apply_once(state.x, stats));
}

}  // namespace nlc
