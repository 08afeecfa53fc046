#include "nlc/composition/composite.hpp"

#include <algorithm>
#include <cmath>

#include "nlc/linalg/least_squares.hpp"

namespace nlc {

std::vector<double> additive_weights(const std::vector<Vector>& residuals, double sigma_rtol) {
  const std::size_t k = residuals.size();
  if (k == 0) return {};
  std::vector<double> alpha(k, 1.0 / static_cast<double>(k));
  if (k == 1) return alpha;
  // alpha = 1/K + Z beta with Z an orthonormal basis of the complement of the ones vector.
  std::vector<std::vector<double>> z;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    std::vector<double> v(k, -1.0 / static_cast<double>(k));
    v[j] += 1.0;
    for (const auto& q : z) {
      double p = 0.0;
      for (std::size_t i = 0; i < k; ++i) p += q[i] * v[i];
      for (std::size_t i = 0; i < k; ++i) v[i] -= p * q[i];
    }
    double n = 0.0;
    for (double e : v) n += e * e;
    n = std::sqrt(n);
    for (double& e : v) e /= n;
    z.push_back(std::move(v));
  }
  Vector mean(residuals[0].layout());
  for (const Vector& r : residuals) axpy(1.0 / static_cast<double>(k), r, mean);
  std::vector<Vector> columns;
  for (const auto& q : z) {
    Vector c(residuals[0].layout());
    for (std::size_t i = 0; i < k; ++i) axpy(q[i], residuals[i], c);
    columns.push_back(std::move(c));
  }
  // Columns at round-off level of the residuals mean the children agree; keep uniform weights.
  double r_scale = 0.0, c_scale = 0.0;
  for (const Vector& r : residuals) r_scale = std::max(r_scale, norm2(r));
  for (const Vector& c : columns) c_scale = std::max(c_scale, norm2(c));
  if (!(c_scale > sigma_rtol * r_scale)) return alpha;
  scale(-1.0, mean);
  const LeastSquaresResult ls = least_squares_minnorm(columns, mean, sigma_rtol);
  for (std::size_t j = 0; j < z.size(); ++j) {
    for (std::size_t i = 0; i < k; ++i) alpha[i] += ls.weights[j] * z[j][i];
  }
  return alpha;
}

CompositeSolver::CompositeSolver(const SolverNode& node, ProblemPtr problem, bool inner)
    : NonlinearSolver(node, std::move(problem), inner) {
  const std::string type = node.type.value_or("multiplicative");
  mode_ = type == "additive" ? CompositeMode::additive : CompositeMode::multiplicative;
  // Build every child once so configuration errors surface before the solve.
  for (const SolverNode& child : node.children) make_solver(child, problem_, true);
}

void CompositeSolver::step(IterateState& state, SolveStats& stats) {
  if (mode_ == CompositeMode::multiplicative) {
    multiplicative_step(state, stats);
  } else {
    additive_step(state, stats);
  }
}

void CompositeSolver::multiplicative_step(IterateState& state, SolveStats& stats) {
  Vector x = state.x;
  std::optional<Vector> r;
  if (state.r_valid) r = state.r;
  for (const SolverNode& child : node_.children) {
    SolveOutcome out = run_inner(child, problem_, x, stats, r ? &*r : nullptr);
    if (is_diverged(out.reason)) {
      accept(state, std::move(x));
      state.reason = out.reason;
      return;
    }
    r = out.final_residual;
  }
  if (r) {
    accept(state, std::move(x), std::move(*r), stats);
  } else {
    accept(state, std::move(x));
  }
}

void CompositeSolver::additive_step(IterateState& state, SolveStats& stats) {
  std::vector<Vector> xs, rs;
  std::vector<double> fixed;
  for (std::size_t c = 0; c < node_.children.size(); ++c) {
    Vector x = state.x;
    SolveOutcome out;
    try {
      out = run_inner(node_.children[c], problem_, x, stats, state.r_valid ? &state.r : nullptr);
      if (is_diverged(out.reason)) continue;
      rs.push_back(evaluate_residual(*problem_, x, stats));
    } catch (const NonFiniteResidual&) {
      continue;
    }
    xs.push_back(std::move(x));
    if (!node_.weights.empty()) fixed.push_back(node_.weights[c]);
  }
  if (xs.empty()) {
    state.reason = ConvergedReason::diverged_inner;
    return;
  }
  Vector x_new(state.x.layout());
  if (!node_.weights.empty()) {
    // Fixed weights act on the steps: x + sum_k w_k (x_k - x).
    x_new = state.x;
    for (std::size_t k = 0; k < xs.size(); ++k) axpy(fixed[k], difference(xs[k], state.x), x_new);
  } else {
    const std::vector<double> alpha = additive_weights(rs);
    for (std::size_t k = 0; k < xs.size(); ++k) axpy(alpha[k], xs[k], x_new);
  }
  accept(state, std::move(x_new));
}

}  // namespace nlc
