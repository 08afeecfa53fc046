#include "nlc/solvers/newton.hpp"

#include <cmath>
#include <cstring>

#include "nlc/decomposition/aspin.hpp"
#include "nlc/decomposition/nasm.hpp"
#include "nlc/linalg/band_lu.hpp"
#include "nlc/linalg/gmres.hpp"
#include "nlc/solvers/linear_pc.hpp"

namespace nlc {

namespace {
bool same_point(const Vector& a, const Vector& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

KrylovConfig krylov(double rtol, int max_it) {
  KrylovConfig cfg;
  cfg.rtol = rtol;
  cfg.max_it = max_it;
  return cfg;
}

bool solve_failed(const KrylovResult& res, const Vector& d) {
  return !all_finite(d) || !std::isfinite(res.final_norm) || !(res.final_norm < res.initial_norm);
}
}  // namespace

NewtonSolver::NewtonSolver(const SolverNode& node, ProblemPtr problem, bool inner)
    : NonlinearSolver(node, std::move(problem), inner) {
  if (!problem_->has_jacobian()) {
    throw ConfigError("newton: problem '" + problem_->name() + "' has no assembled Jacobian");
  }
  lpc_ = node.lpc.value_or(LinearPcSpec{});
  ksp_rtol_ = node.ksp_rtol.value_or(problem_->default_ksp_rtol());
  ksp_max_it_ = node.ksp_max_it.value_or(10000);
  if (node.lp) {
    nasm_ = dynamic_cast<NasmSolver*>(residual_.inner_solver());
    if (!nasm_) throw ConfigError("newton: left preconditioning requires nasm or ras");
    nasm_->set_cache_factors(true);
    if (!node.lp->sub) nasm_->set_subdomain_solver(aspin_subdomain_solver());
    ksp_rtol_ = node.ksp_rtol.value_or(1e-3);
  }
}

void NewtonSolver::step(IterateState& state, SolveStats& stats) {
  if (nasm_) {
    aspin_step(state, stats);
    return;
  }
  if (node_.rp) {
    Vector x_half = state.x;
    SolveOutcome out = run_inner(*node_.rp, problem_, x_half, stats, state.r_valid ? &state.r : nullptr);
    ++stats.npc_applies;
    if (out.reason == ConvergedReason::diverged_nan) throw NonFiniteResidual("newton: right preconditioner");
    Vector r_half = out.final_residual ? *out.final_residual : evaluate_residual(*problem_, x_half, stats);
    accept(state, std::move(x_half), std::move(r_half), stats);
  }

  const SparseMatrix jac = evaluate_jacobian(*problem_, state.x, stats);
  Vector rhs = state.r;
  scale(-1.0, rhs);
  Vector d(state.x.layout());
  bool failed = false;
  try {
    LinearPc pc = make_linear_pc(lpc_, problem_, jac, state.x, stats);
    KrylovResult res = gmres(matrix_operator(jac), pc.apply, rhs, d, krylov(ksp_rtol_, ksp_max_it_), stats);
    failed = solve_failed(res, d);
  } catch (const SingularMatrix&) {
    failed = true;
  }
  if (failed) {
    ++fallbacks_;
    d = rhs;
  }
  const double slope = dot(state.r, jac.multiply(d));
  finish_step(state, d, slope, stats);
}

void NewtonSolver::aspin_step(IterateState& state, SolveStats& stats) {
  if (!nasm_->cached_point() || !same_point(*nasm_->cached_point(), state.x)) refresh(state, stats);
  const LinearOperator op = aspin_operator(*nasm_);
  Vector rhs = state.r;
  scale(-1.0, rhs);
  Vector d(state.x.layout());
  KrylovResult res = gmres(op, LinearOperator{}, rhs, d, krylov(ksp_rtol_, ksp_max_it_), stats);
  if (solve_failed(res, d)) {
    ++fallbacks_;
    d = rhs;
  }
  Vector jd(state.x.layout());
  op(d, jd);
  finish_step(state, d, dot(state.r, jd), stats);
}

void NewtonSolver::finish_step(IterateState& state, const Vector& d, double slope, SolveStats& stats) {
  const LineSearchConfig cfg = line_search_config(LineSearchKind::bt);
  const bool plain_search = !(residual_.preconditioned() && node_.ls_unpreconditioned.value_or(false));
  const Vector r_search = plain_search ? state.r : evaluate_residual(*problem_, state.x, stats);
  LineSearchOutcome ls = line_search(search_residual(), state.x, r_search, d, slope, cfg, stats);
  if (!ls.succeeded && cfg.kind == LineSearchKind::bt) {
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
