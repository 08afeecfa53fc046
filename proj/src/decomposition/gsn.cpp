#include "nlc/decomposition/gsn.hpp"

#include <cmath>
#include <vector>

#include "nlc/linalg/dense.hpp"

namespace nlc {

namespace {
double block_norm(const double* r, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += r[k] * r[k];
  return std::sqrt(s);
}
}  // namespace

void gsn_sweep(const NonlinearProblem& problem, Vector& x, const GsnConfig& cfg, SolveStats& stats) {
  const PointBlockOps* ops = problem.point_blocks();
  if (!ops) throw ConfigError("gsn: problem '" + problem.name() + "' provides no point blocks");
  const std::size_t bs = ops->block_size;
  const std::size_t nodes = x.size() / bs;
  const Vector* b = problem.rhs();
  std::vector<double> r(bs), jac(bs * bs);

  auto block_residual = [&](std::size_t node) {
    ops->residual(x, node, r.data());
    if (b) {
      for (std::size_t k = 0; k < bs; ++k) r[k] -= (*b)[node * bs + k];
    }
    for (double v : r) {
      if (!std::isfinite(v)) throw NonFiniteResidual("gsn: non-finite block residual at node " + std::to_string(node));
    }
  };

  for (std::size_t node = 0; node < nodes; ++node) {
    block_residual(node);
    const double norm0 = block_norm(r.data(), bs);
    if (norm0 == 0.0) continue;
    for (int it = 0; it < cfg.max_block_it; ++it) {
      ops->jacobian(x, node, jac.data());
      if (!dense_solve_in_place(bs, jac.data(), r.data())) break;
      for (std::size_t k = 0; k < bs; ++k) x[node * bs + k] -= r[k];
      if (it + 1 == cfg.max_block_it) break;
      block_residual(node);
      if (block_norm(r.data(), bs) <= cfg.block_rtol * norm0) break;
    }
  }
  ++stats.func_evals;
  ++stats.jac_evals;
}

GsnSolver::GsnSolver(const SolverNode& node, ProblemPtr problem, bool inner)
    : NonlinearSolver(node, std::move(problem), inner) {
  cfg_.sweeps = node.sweeps.value_or(1);
  cfg_.max_block_it = node.max_block_it.value_or(5);
  if (cfg_.sweeps < 1) throw ConfigError("gsn: sweeps must be >= 1");
  if (cfg_.max_block_it < 1) throw ConfigError("gsn: max_block_it must be >= 1");
  if (!problem_->point_blocks()) throw ConfigError("gsn: problem '" + problem_->name() + "' provides no point blocks");
}

void GsnSolver::step(IterateState& state, SolveStats& stats) {
  Vector x = state.x;
  for (int s = 0; s < cfg_.sweeps; ++s) gsn_sweep(*problem_, x, cfg_, stats);
  accept(state, std::move(x));
}

}  // namespace nlc
