#pragma once

#include <deque>
#include <vector>

#include "nlc/solvers/solver.hpp"

namespace nlc {

/// History of trial pairs (x^M_k, r^M_k) and the least-squares combination of Anderson mixing.
class AndersonMixer {
 public:
  explicit AndersonMixer(std::size_t depth, double sigma_rtol = 1e-10);

  struct Mix {
    Vector x;                     // x^M + sum_k alpha_k (x_k - x^M)
    std::vector<double> weights;  // alpha_k, oldest stored pair first
    std::size_t rank = 0;
    bool rank_lost = false;       // rank below the number of stored pairs
  };

  /// Minimizes || r^M + sum_k alpha_k (r_k - r^M) || over alpha and forms the combined iterate.
  /// With an empty history the result is x^M.
  Mix mix(const Vector& x_trial, const Vector& r_trial) const;
  /// Stores a pair, dropping the oldest when the depth is exceeded.
  void push(Vector x_trial, Vector r_trial);
  void clear();

  std::size_t size() const { return xs_.size(); }
  std::size_t depth() const { return depth_; }
  /// Smallest stored residual norm (infinity when empty).
  double best_norm() const;

 private:
  std::size_t depth_;
  double sigma_rtol_;
  std::deque<Vector> xs_, rs_;
  std::deque<double> norms_;
};

/// Anderson mixing. The trial point is x + lambda_mix r (lambda_mix = -damping, default -1) or
/// N(x) with a right preconditioner. Rank loss in the least-squares problem restarts the
/// history; two consecutive rank-zero combinations end the solve with diverged_stagnation.
/// The ngmres variant also restarts when the trial residual exceeds twice the best stored norm.
class AndersonSolver : public NonlinearSolver {
 public:
  AndersonSolver(const SolverNode& node, ProblemPtr problem, bool inner, bool ngmres);

 protected:
  void reset() override;
  void step(IterateState& state, SolveStats& stats) override;

 private:
  bool ngmres_;
  AndersonMixer mixer_;
  int zero_rank_ = 0;
};

}  // namespace nlc
