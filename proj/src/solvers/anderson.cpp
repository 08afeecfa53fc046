#include "nlc/solvers/anderson.hpp"

#include <algorithm>
#include <limits>

#include "nlc/linalg/least_squares.hpp"

namespace nlc {

AndersonMixer::AndersonMixer(std::size_t depth, double sigma_rtol) : depth_(depth), sigma_rtol_(sigma_rtol) {
  if (depth == 0) throw ConfigError("anderson: history depth must be >= 1");
}

AndersonMixer::Mix AndersonMixer::mix(const Vector& x_trial, const Vector& r_trial) const {
  Mix out;
  out.x = x_trial;
  if (xs_.empty()) return out;
  std::vector<Vector> columns;
  columns.reserve(rs_.size());
  for (const Vector& r : rs_) columns.push_back(difference(r, r_trial));
  Vector target = r_trial;
  scale(-1.0, target);
  LeastSquaresResult ls = least_squares_minnorm(columns, target, sigma_rtol_);
  out.weights = ls.weights;
  out.rank = ls.rank;
  out.rank_lost = ls.rank < columns.size();
  for (std::size_t k = 0; k < xs_.size(); ++k) {
    const double a = out.weights[k];
    if (a == 0.0) continue;
    for (std::size_t i = 0; i < out.x.size(); ++i) out.x[i] += a * (xs_[k][i] - x_trial[i]);
  }
  return out;
}

void AndersonMixer::push(Vector x_trial, Vector r_trial) {
  norms_.push_back(norm2(r_trial));
  xs_.push_back(std::move(x_trial));
  rs_.push_back(std::move(r_trial));
  if (xs_.size() > depth_) {
    xs_.pop_front();
    rs_.pop_front();
    norms_.pop_front();
  }
}

void AndersonMixer::clear() {
  xs_.clear();
  rs_.clear();
  norms_.clear();
}

double AndersonMixer::best_norm() const {
  double best = std::numeric_limits<double>::infinity();
  for (double n : norms_) best = std::min(best, n);
  return best;
}

AndersonSolver::AndersonSolver(const SolverNode& node, ProblemPtr problem, bool inner, bool ngmres)
    : NonlinearSolver(node, std::move(problem), inner),
      ngmres_(ngmres),
      mixer_(static_cast<std::size_t>(node.m.value_or(30))) {}

void AndersonSolver::reset() {
  mixer_.clear();
  zero_rank_ = 0;
}

void AndersonSolver::step(IterateState& state, SolveStats& stats) {
  Vector x_trial = state.x;
  Vector r_trial;
  if (node_.rp) {
    SolveOutcome out = run_inner(*node_.rp, problem_, x_trial, stats, state.r_valid ? &state.r : nullptr);
    ++stats.npc_applies;
    if (out.reason == ConvergedReason::diverged_nan) throw NonFiniteResidual("anderson: right preconditioner");
    r_trial = residual_.evaluate(x_trial, stats, out.final_residual ? &*out.final_residual : nullptr);
  } else {
    const double lambda_mix = -node_.damping.value_or(1.0);
    axpy(lambda_mix, state.r, x_trial);
    r_trial = residual_.evaluate(x_trial, stats);
  }

  if (ngmres_ && mixer_.size() > 0 && norm2(r_trial) > 2.0 * mixer_.best_norm()) mixer_.clear();

  if (mixer_.size() == 0) {
    mixer_.push(x_trial, r_trial);
    accept(state, std::move(x_trial), std::move(r_trial), stats);
    return;
  }

  AndersonMixer::Mix mix = mixer_.mix(x_trial, r_trial);
  if (mix.rank == 0) {
    if (++zero_rank_ >= 2) {
      state.reason = ConvergedReason::diverged_stagnation;
      return;
    }
  } else {
    zero_rank_ = 0;
  }
  if (mix.rank_lost) mixer_.clear();
  mixer_.push(std::move(x_trial), std::move(r_trial));
  Vector r_new = residual_.evaluate(mix.x, stats);
  accept(state, std::move(mix.x), std::move(r_new), stats);
}

}  // namespace nlc
