#pragma once

#include "nlc/solvers/solver.hpp"

namespace nlc {

class NasmSolver;

/// Newton-Krylov. The step d = -J^{-1} r is computed by GMRES with the configured linear
/// preconditioner and accepted through a line search (bt by default). When the linear solve
/// fails (non-finite or no reduction) the direction falls back to -r. With a right
/// preconditioner N the step starts from N(x); with a left nonlinear Schwarz preconditioner the
/// method is ASPIN, whose linear operator is the cached subdomain approximation.
class NewtonSolver : public NonlinearSolver {
 public:
  NewtonSolver(const SolverNode& node, ProblemPtr problem, bool inner);

  /// Number of steps that fell back to the -r direction.
  long fallback_steps() const { return fallbacks_; }

 protected:
  void reset() override { fallbacks_ = 0; }
  void step(IterateState& state, SolveStats& stats) override;

 private:
  void aspin_step(IterateState& state, SolveStats& stats);
  void finish_step(IterateState& state, const Vector& d, double slope, SolveStats& stats);

  NasmSolver* nasm_ = nullptr;
  LinearPcSpec lpc_;
  double ksp_rtol_;
  int ksp_max_it_;
  long fallbacks_ = 0;
};

}  // namespace nlc
