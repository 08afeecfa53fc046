#pragma once

#include <deque>

#include "nlc/solvers/solver.hpp"

namespace nlc {

/// Limited-memory pairs s_k = x_{k+1} - x_k, y_k = r_{k+1} - r_k, oldest first.
struct QNState {
  std::size_t depth = 10;
  std::deque<Vector> s, y;

  /// Stores a pair unless |y^T s| < 1e-30 ||y|| ||s||. Returns whether it was stored.
  bool push(Vector s_k, Vector y_k);
  void clear() {
    s.clear();
    y.clear();
  }
  std::size_t size() const { return s.size(); }
  /// Shanno scaling s^T y / y^T y of the newest pair, 1 when empty.
  double shanno_gamma() const;
};

/// L-BFGS two-loop recursion: returns K g for the inverse-Jacobian approximation K built from the
/// stored pairs over K_0 = gamma I (gamma = Shanno scaling when `shanno`, otherwise 1).
Vector lbfgs_two_loop(const QNState& state, const Vector& g, bool shanno = true);

/// Limited-memory BFGS quasi-Newton: x <- x - lambda K r with lambda from a line search (cp by
/// default). Requires a symmetric Jacobian unless allow_unsym is set.
class QNSolver : public NonlinearSolver {
 public:
  QNSolver(const SolverNode& node, ProblemPtr problem, bool inner);

 protected:
  void reset() override;
  void step(IterateState& state, SolveStats& stats) override;

 private:
  QNState qn_;
  int failures_ = 0;
};

}  // namespace nlc
